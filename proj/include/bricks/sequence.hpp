#pragma once

// Finite truncations of real sequences and the norms of l1, l2, c0/c/l_inf.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "bricks/errors.hpp"

namespace bricks {

/// Default absolute tolerance for membership and equality checks.
inline constexpr double kDefaultTolerance = 1e-9;

enum class NormKind { L1, L2, Sup };

/// Which ambient norm a vector is measured in. Sup serves l_inf, c0 and c.
class NormTag {
 public:
  /// Only p = 1 and p = 2 are accepted; any other exponent is rejected
  /// rather than approximated.
  static NormTag lp(double p) {
    if (p == 1.0) return NormTag(NormKind::L1);
    if (p == 2.0) return NormTag(NormKind::L2);
    throw InvalidArgument("unsupported l_p exponent " + std::to_string(p) +
                          " (only p = 1, 2 and sup are supported)");
  }
  static NormTag sup() { return NormTag(NormKind::Sup); }

  NormKind kind() const { return kind_; }

  std::string name() const {
    switch (kind_) {
      case NormKind::L1: return "l1";
      case NormKind::L2: return "l2";
      case NormKind::Sup: return "sup";
    }
    return "?";
  }

  friend bool operator==(NormTag, NormTag) = default;

 private:
  explicit NormTag(NormKind k) : kind_(k) {}
  NormKind kind_;
};

/// Norm of a raw span. Summation runs in index order so that two callers
/// evaluating the same entries get bitwise-identical results.
inline double norm(std::span<const double> v, NormTag tag) {
  switch (tag.kind()) {
    case NormKind::L1: {
      double s = 0.0;
      for (double x : v) s += std::abs(x);
      return s;
    }
    case NormKind::L2: {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s);
    }
    case NormKind::Sup: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    }
  }
  return 0.0;
}

/// Finite truncation (a_1, ..., a_N) of a real sequence. Entries are finite.
class CoefficientVector {
 public:
  CoefficientVector() = default;
  explicit CoefficientVector(std::vector<double> entries) : entries_(std::move(entries)) {
    for (double x : entries_) {
      if (!std::isfinite(x)) throw InvalidArgument("coefficient vector entries must be finite");
    }
  }
  CoefficientVector(std::initializer_list<double> entries)
      : CoefficientVector(std::vector<double>(entries)) {}

  static CoefficientVector zeros(std::size_t n) { return CoefficientVector(std::vector<double>(n, 0.0)); }
  static CoefficientVector unit(std::size_t n, std::size_t index) {
    detail::require(index < n, "unit vector index out of range");
    std::vector<double> e(n, 0.0);
    e[index] = 1.0;
    return CoefficientVector(std::move(e));
  }

  std::size_t truncation_level() const { return entries_.size(); }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const { return entries_; }
  const std::vector<double>& values() const { return entries_; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend CoefficientVector operator+(const CoefficientVector& a, const CoefficientVector& b) {
    detail::require(a.size() == b.size(), "length mismatch in vector sum");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return CoefficientVector(std::move(out));
  }
  friend CoefficientVector operator-(const CoefficientVector& a, const CoefficientVector& b) {
    detail::require(a.size() == b.size(), "length mismatch in vector difference");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
    return CoefficientVector(std::move(out));
  }
  friend CoefficientVector operator*(double s, const CoefficientVector& a) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a[i];
    return CoefficientVector(std::move(out));
  }

  /// Copy padded with zeros (or cut) to length n.
  CoefficientVector resized(std::size_t n) const {
    std::vector<double> out(entries_);
    out.resize(n, 0.0);
    return CoefficientVector(std::move(out));
  }

  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;

 private:
  std::vector<double> entries_;
};

inline double norm(const CoefficientVector& v, NormTag tag) { return norm(v.entries(), tag); }

/// Norm of the entries with (1-based) index > from.
inline double tail_norm(const CoefficientVector& v, NormTag tag, std::size_t from) {
  if (from > v.size()) {
    throw InvalidArgument("tail index " + std::to_string(from) + " exceeds truncation level " +
                          std::to_string(v.size()));
  }
  return norm(v.entries().subspan(from), tag);
}

/// Largest absolute entry difference.
inline double max_abs_difference(const CoefficientVector& a, const CoefficientVector& b) {
  detail::require(a.size() == b.size(), "length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace bricks

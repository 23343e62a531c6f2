#pragma once

// max over theta in {+1,-1}^m of || sum_j theta_j c_j || for the columns c_j
// of a matrix.
//
// The Gray-code kernel walks the patterns with one flip per step and keeps
// a running ambient vector. Rounding drift in that vector never reaches the
// result: any pattern whose running value comes within `slack` of the best
// freshly evaluated value is re-evaluated from scratch in a fixed summation
// order, and only fresh values are compared. The naive kernel evaluates
// every pattern the same fresh way, so the two agree bit for bit.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bricks/basis.hpp"
#include "bricks/errors.hpp"
#include "bricks/sequence.hpp"

namespace bricks {

struct SignMaximum {
  double value = 0.0;
  SignPattern pattern;
};

namespace detail {

/// Column matrix stored by rows as (column, value) lists in column order.
class SignedSum {
 public:
  SignedSum(const Eigen::MatrixXd& cols, NormTag tag) : tag_(tag), m_(static_cast<std::size_t>(cols.cols())) {
    rows_.resize(static_cast<std::size_t>(cols.rows()));
    by_col_.resize(m_);
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
      double col_mass = 0.0;
      for (Eigen::Index i = 0; i < cols.rows(); ++i) {
        const double v = cols(i, j);
        if (v == 0.0) continue;
        rows_[static_cast<std::size_t>(i)].push_back({static_cast<std::size_t>(j), v});
        by_col_[static_cast<std::size_t>(j)].push_back({static_cast<std::size_t>(i), v});
        col_mass += std::abs(v);
      }
      mass_ += col_mass;
    }
  }

  std::size_t columns() const { return m_; }
  std::size_t rows() const { return rows_.size(); }
  double mass() const { return mass_; }
  NormTag tag() const { return tag_; }

  /// Row i of the signed sum; bit j of `bits` set means theta_j = -1.
  double fresh_row(std::size_t i, std::uint64_t bits) const {
    double s = 0.0;
    for (const auto& [j, v] : rows_[i]) s += ((bits >> j) & 1U) ? -v : v;
    return s;
  }

  double fresh_norm(std::uint64_t bits, std::vector<double>& scratch) const {
    scratch.resize(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) scratch[i] = fresh_row(i, bits);
    return norm(std::span<const double>(scratch), tag_);
  }

  void fresh_vector(std::uint64_t bits, std::vector<double>& out) const {
    out.resize(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) out[i] = fresh_row(i, bits);
  }

  /// x += delta * c_j
  void add_column(std::size_t j, double delta, std::vector<double>& x) const {
    for (const auto& [i, v] : by_col_[j]) x[i] += delta * v;
  }

 private:
  struct Entry {
    std::size_t index;
    double value;
  };
  NormTag tag_;
  std::size_t m_;
  double mass_ = 0.0;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::vector<Entry>> by_col_;
};

inline SignPattern pattern_from_bits(std::size_t m, std::uint64_t bits) { return SignPattern::from_bits(m, bits); }

inline void check_kernel_size(std::size_t m, std::size_t cap) {
  if (m > cap) {
    throw CapExceeded("sign enumeration over " + std::to_string(m) + " coordinates exceeds cap " +
                      std::to_string(cap));
  }
  if (m > 62) throw CapExceeded("sign enumeration over more than 62 coordinates is not supported");
}

}  // namespace detail

/// All 2^m patterns in binary order, each evaluated from scratch.
inline SignMaximum sign_maximum_naive(const Eigen::MatrixXd& cols, NormTag tag,
                                      std::size_t cap = kDefaultEnumerationCap) {
  const auto m = static_cast<std::size_t>(cols.cols());
  detail::check_kernel_size(m, cap);
  if (m == 0) return {0.0, SignPattern{}};
  const detail::SignedSum sum(cols, tag);
  std::vector<double> scratch;
  double best = -1.0;
  std::uint64_t best_bits = 0;
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    const double v = sum.fresh_norm(bits, scratch);
    if (v > best) {
      best = v;
      best_bits = bits;
    }
  }
  return {best, detail::pattern_from_bits(m, best_bits)};
}

/// Gray-code enumeration with theta_m fixed to +1 (theta and -theta tie).
inline SignMaximum sign_maximum_gray(const Eigen::MatrixXd& cols, NormTag tag,
                                     std::size_t cap = kDefaultEnumerationCap) {
  const auto m = static_cast<std::size_t>(cols.cols());
  detail::check_kernel_size(m, cap);
  if (m == 0) return {0.0, SignPattern{}};
  const detail::SignedSum sum(cols, tag);
  const double slack = 1e-11 * (1.0 + sum.mass());
  const bool by_rows = tag.kind() == NormKind::Sup;

  std::vector<double> x;
  std::vector<double> scratch;
  std::uint64_t bits = 0;
  sum.fresh_vector(bits, x);
  double best = sum.fresh_norm(bits, scratch);
  std::uint64_t best_bits = 0;

  const std::uint64_t count = std::uint64_t{1} << (m - 1);
  for (std::uint64_t k = 1; k < count; ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    bits ^= std::uint64_t{1} << j;
    if (k % 1024 == 0) {
      sum.fresh_vector(bits, x);
    } else {
      sum.add_column(j, ((bits >> j) & 1U) ? -2.0 : 2.0, x);
    }
    const double threshold = best - slack;
    if (by_rows) {
      // Only rows whose running value is near the best can freshly beat it.
      bool beats = false;
      for (std::size_t i = 0; i < x.size() && !beats; ++i) {
        if (std::abs(x[i]) >= threshold && std::abs(sum.fresh_row(i, bits)) > best) beats = true;
      }
      if (beats) {
        best = sum.fresh_norm(bits, scratch);
        best_bits = bits;
      }
    } else {
      const double running = norm(std::span<const double>(x), tag);
      if (running >= threshold) {
        const double fresh = sum.fresh_norm(bits, scratch);
        if (fresh > best) {
          best = fresh;
          best_bits = bits;
        }
      }
    }
  }
  return {best, detail::pattern_from_bits(m, best_bits)};
}

/// || sum_j theta_j c_j || evaluated in the kernels' fixed order.
inline double signed_column_norm(const Eigen::MatrixXd& cols, NormTag tag, const SignPattern& theta) {
  detail::require(theta.size() == static_cast<std::size_t>(cols.cols()), "sign pattern length mismatch");
  detail::check_kernel_size(theta.size(), 62);
  std::uint64_t bits = 0;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (theta[j] < 0) bits |= std::uint64_t{1} << j;
  }
  const detail::SignedSum sum(cols, tag);
  std::vector<double> scratch;
  return sum.fresh_norm(bits, scratch);
}

}  // namespace bricks

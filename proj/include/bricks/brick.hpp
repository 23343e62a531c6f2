#pragma once

// Bricks K = { x : |e_n^*(x)| <= eps_n for all n }.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bricks/basis.hpp"
#include "bricks/errors.hpp"
#include "bricks/half_heights.hpp"
#include "bricks/schedule.hpp"
#include "bricks/sequence.hpp"

namespace bricks {

class Brick {
 public:
  /// A non-normalized basis is replaced by e_n / ||e_n|| and the half-heights
  /// by eps_n ||e_n||, which describes the same set.
  Brick(BasisModel basis, HalfHeights heights)
      : basis_(basis.normalized()), heights_(std::move(heights)) {
    if (!basis.flags().normalized) {
      heights_ = heights_.scaled([basis](std::size_t n) { return basis.column_norm(n); }, "||e_n||");
    }
  }

  const BasisModel& basis() const { return basis_; }
  const HalfHeights& heights() const { return heights_; }
  NormTag norm_tag() const { return basis_.norm_tag(); }

  CoefficientVector half_heights(std::size_t n) const { return heights_.first(n); }

 private:
  BasisModel basis_;
  HalfHeights heights_;
};

inline bool contains(const Brick& k, const CoefficientVector& x, double tol = kDefaultTolerance) {
  const CoefficientVector a = analyze(k.basis(), x);
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (std::abs(a[n]) > k.heights()(n + 1) + tol) return false;
  }
  return true;
}

/// sum_{n <= N} theta_n eps_n e_n in ambient coordinates.
inline CoefficientVector extreme_point(const Brick& k, const SignPattern& theta) {
  std::vector<double> c(theta.size());
  for (std::size_t n = 0; n < theta.size(); ++n) c[n] = theta[n] * k.heights()(n + 1);
  return synthesize(k.basis(), CoefficientVector(std::move(c)));
}

inline bool is_extreme(const Brick& k, const CoefficientVector& x, double tol = kDefaultTolerance) {
  const CoefficientVector a = analyze(k.basis(), x);
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (std::abs(std::abs(a[n]) - k.heights()(n + 1)) > tol) return false;
  }
  return true;
}

enum class SolidityKind { SolidByUnconditional, SolidBySummable, NoCertificate };

inline std::string to_string(SolidityKind k) {
  switch (k) {
    case SolidityKind::SolidByUnconditional: return "solid_by_unconditional";
    case SolidityKind::SolidBySummable: return "solid_by_summable";
    case SolidityKind::NoCertificate: return "no_certificate";
  }
  return "?";
}

struct SolidityCertificate {
  SolidityKind kind = SolidityKind::NoCertificate;
  /// sum_{n <= N} eps_n for SolidBySummable.
  std::optional<double> partial_sum;
  std::string evidence;
};

inline SolidityCertificate solidity_certificate(const Brick& k, std::size_t n) {
  if (k.basis().flags().unconditional) {
    return {SolidityKind::SolidByUnconditional, std::nullopt, "basis is unconditional"};
  }
  double partial = 0.0;
  for (std::size_t i = 1; i <= n; ++i) partial += k.heights()(i);

  if (const auto summable = k.heights().summable(1.0)) {
    if (*summable) return {SolidityKind::SolidBySummable, partial, "sum of half-heights converges (closed form)"};
    return {SolidityKind::NoCertificate, std::nullopt, "sum of half-heights diverges"};
  }
  // Custom rule: window sums over (M, 2M] must shrink like a convergent tail.
  std::vector<std::size_t> starts;
  std::vector<double> sums;
  for (std::size_t m = std::max<std::size_t>(n, 1), j = 0; j < 6; ++j, m *= 2) {
    double w = 0.0;
    for (std::size_t i = m + 1; i <= 2 * m; ++i) w += k.heights()(i);
    starts.push_back(m);
    sums.push_back(w);
  }
  if (classify_trend(starts, sums, 1e-6, 1e-3) == Trend::Vanishing) {
    return {SolidityKind::SolidBySummable, partial, "window sums of half-heights vanish (numeric)"};
  }
  return {SolidityKind::NoCertificate, std::nullopt, "no sufficient condition applies"};
}

}  // namespace bricks

#pragma once

// Clearances of finite sets, basis radii, and entropy bounds over a
// supplied family of bases.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bricks/basis.hpp"
#include "bricks/brick.hpp"
#include "bricks/errors.hpp"
#include "bricks/radius_reports.hpp"
#include "bricks/schedule.hpp"

namespace bricks {

/// gamma_n = max over the set of |e_n^*(x)|.
struct ClearanceProfile {
  CoefficientVector values;
  std::string basis;
  std::string set_id;
};

namespace detail {

inline std::size_t common_truncation(const std::vector<CoefficientVector>& set, const BasisModel& b) {
  detail::require(!set.empty(), "set must be nonempty");
  const std::size_t len = set.front().size();
  for (const auto& x : set) detail::require(x.size() == len, "all vectors must have the same length");
  const auto n = b.truncation_for_ambient(len);
  detail::require(n.has_value(), "vector length does not match a truncation of basis '" + b.name() + "'");
  return *n;
}

}  // namespace detail

inline ClearanceProfile clearances(const std::vector<CoefficientVector>& set, const BasisModel& b, std::size_t n,
                                   std::string set_id = "") {
  detail::require(!set.empty(), "set must be nonempty");
  detail::require(detail::common_truncation(set, b) == n, "vectors do not live at truncation " + std::to_string(n));
  std::vector<double> gamma(n, 0.0);
  for (const auto& x : set) {
    const CoefficientVector a = analyze(b, x);
    for (std::size_t i = 0; i < n; ++i) gamma[i] = std::max(gamma[i], std::abs(a[i]));
  }
  return {CoefficientVector(std::move(gamma)), b.name(), std::move(set_id)};
}

/// Unconditional radius of the clearance brick K_{B, Gamma_B(A)}. The
/// schedule's levels below the set's truncation are kept and the truncation
/// itself is appended.
inline RadiusReport basis_radius(const std::vector<CoefficientVector>& set, const BasisModel& b,
                                 const TruncationSchedule& s, std::size_t cap = kDefaultEnumerationCap) {
  const std::size_t n = detail::common_truncation(set, b);
  const ClearanceProfile g = clearances(set, b, n);
  const Brick k(b, HalfHeights::finite(g.values));
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!contains(k, set[i])) {
      throw InvariantViolation("set element " + std::to_string(i) + " lies outside its clearance brick");
    }
  }
  TruncationSchedule local = s;
  local.levels.clear();
  for (std::size_t l : s.levels) {
    if (l < n) local.levels.push_back(l);
  }
  local.levels.push_back(std::max<std::size_t>(n, 1));
  return unconditional_radius(k, local, {.analytic_upgrade = true, .cap = cap});
}

struct EntropyReport {
  std::vector<std::pair<std::string, RadiusReport>> per_basis;
  /// min over finite basis radii; an upper bound for the entropy E(A).
  std::optional<double> entropy_upper;
  /// Same over the 1-unconditional bases; an upper bound for E_0(A).
  std::optional<double> e0_upper;
  /// max over finite basis radii; a lower bound for the Sudakov characteristic.
  std::optional<double> sudakov_lower;
  double max_member_norm = 0.0;
  /// Hilbert sets only: max over bases of sum gamma_n^2.
  std::optional<double> sudakov_sum_of_squares;
  std::optional<double> exact;
  std::string exact_justification;
};

/// Largest member sup-norm of a set in c0 coordinates, which is its entropy.
inline double c0_entropy(const std::vector<CoefficientVector>& set) {
  detail::require(!set.empty(), "set must be nonempty");
  double m = 0.0;
  for (const auto& x : set) m = std::max(m, norm(x, NormTag::sup()));
  return m;
}

inline EntropyReport entropy_bounds(const std::vector<CoefficientVector>& set, const std::vector<BasisModel>& bases,
                                    const TruncationSchedule& s, std::size_t cap = kDefaultEnumerationCap) {
  detail::require(!bases.empty(), "entropy bounds need at least one basis");
  detail::require(!set.empty(), "set must be nonempty");
  const NormTag tag = bases.front().norm_tag();
  for (const auto& b : bases) detail::require(b.norm_tag() == tag, "all bases must share one ambient norm");

  EntropyReport r;
  for (const auto& x : set) r.max_member_norm = std::max(r.max_member_norm, norm(x, tag));
  for (const auto& b : bases) {
    RadiusReport rr = basis_radius(set, b, s, cap);
    if (rr.verdict == VerdictKind::FiniteEstimate) {
      const double v = *rr.value;
      r.entropy_upper = r.entropy_upper ? std::min(*r.entropy_upper, v) : v;
      r.sudakov_lower = r.sudakov_lower ? std::max(*r.sudakov_lower, v) : v;
      if (b.flags().one_unconditional) r.e0_upper = r.e0_upper ? std::min(*r.e0_upper, v) : v;
    }
    if (tag.kind() == NormKind::L2) {
      const ClearanceProfile g = clearances(set, b, detail::common_truncation(set, b));
      double sq = 0.0;
      for (double x : g.values) sq += x * x;
      r.sudakov_sum_of_squares = r.sudakov_sum_of_squares ? std::max(*r.sudakov_sum_of_squares, sq) : sq;
    }
    r.per_basis.emplace_back(b.name(), std::move(rr));
  }
  const bool has_c0 = std::any_of(bases.begin(), bases.end(),
                                  [](const BasisModel& b) { return b.kind() == BasisKind::StandardC0; });
  if (has_c0) {
    r.exact = c0_entropy(set);
    r.exact_justification = "in c0 the entropy of a precompact set equals its largest member norm";
  }
  return r;
}

}  // namespace bricks

#pragma once

// Sign-vertex maxima of bricks at finite truncation.
//
// The norm is convex, so its maximum over the coefficient box
// prod [-eps_n, eps_n] is attained at a sign vertex; every radius below is a
// maximum over sign patterns.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bricks/basis.hpp"
#include "bricks/brick.hpp"
#include "bricks/errors.hpp"
#include "bricks/sign_kernel.hpp"

namespace bricks {

/// Columns eps_n e_n for lo < n <= hi, in the ambient space of truncation hi.
inline Eigen::MatrixXd weighted_columns(const Brick& k, std::size_t lo, std::size_t hi) {
  detail::require(lo <= hi, "window must satisfy lo <= hi");
  const Eigen::MatrixXd s = k.basis().synth_matrix(hi);
  Eigen::MatrixXd cols = s.middleCols(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(hi - lo));
  for (std::size_t j = 0; j < hi - lo; ++j) cols.col(static_cast<Eigen::Index>(j)) *= k.heights()(lo + j + 1);
  return cols;
}

/// max over theta of || sum_{lo < n <= hi} theta_n eps_n e_n ||, with a maximizing pattern.
inline SignMaximum window_sign_maximum(const Brick& k, std::size_t lo, std::size_t hi,
                                       std::size_t cap = kDefaultEnumerationCap) {
  detail::require(lo <= hi, "window must satisfy lo <= hi");
  const std::size_t m = hi - lo;
  detail::check_kernel_size(m, cap);
  const BasisModel& b = k.basis();
  if (b.coefficient_isometry()) {
    std::vector<double> eps(m);
    for (std::size_t j = 0; j < m; ++j) eps[j] = k.heights()(lo + j + 1);
    return {norm(std::span<const double>(eps), b.norm_tag()), SignPattern::all_plus(m)};
  }
  const Eigen::MatrixXd cols = weighted_columns(k, lo, hi);
  if (b.flags().one_unconditional) {
    // Every pattern has the same norm.
    return {signed_column_norm(cols, b.norm_tag(), SignPattern::all_plus(m)), SignPattern::all_plus(m)};
  }
  return sign_maximum_gray(cols, b.norm_tag(), cap);
}

inline double truncated_sign_radius(const Brick& k, std::size_t n, std::size_t cap = kDefaultEnumerationCap) {
  return window_sign_maximum(k, 0, n, cap).value;
}

/// Reference value by evaluating all 2^N patterns.
inline double naive_sign_radius(const Brick& k, std::size_t n, std::size_t cap = kDefaultEnumerationCap) {
  return sign_maximum_naive(weighted_columns(k, 0, n), k.norm_tag(), cap).value;
}

/// sup of member norms at truncation N. The vertex maximum is cross-checked
/// against `samples` uniform points of the coefficient box.
inline double absolute_radius(const Brick& k, std::size_t n, std::size_t samples = 1000, std::uint64_t seed = 0,
                              std::size_t cap = kDefaultEnumerationCap) {
  const double vertex_max = truncated_sign_radius(k, n, cap);
  if (samples == 0 || n == 0) return vertex_max;
  const Eigen::MatrixXd s = k.basis().synth_matrix(n);
  const CoefficientVector eps = k.half_heights(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd a(static_cast<Eigen::Index>(n));
  for (std::size_t t = 0; t < samples; ++t) {
    for (std::size_t j = 0; j < n; ++j) a(static_cast<Eigen::Index>(j)) = unit(rng) * eps[j];
    const Eigen::VectorXd x = s * a;
    const double v = norm(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), k.norm_tag());
    if (v > vertex_max + 1e-9) {
      throw InvariantViolation("sampled box point has norm " + std::to_string(v) + " above the vertex maximum " +
                               std::to_string(vertex_max));
    }
  }
  return vertex_max;
}

/// The sign radius of the whole brick from its value at `level`, when the
/// tail beyond `level` has a closed form for this basis.
inline std::optional<double> tail_corrected_radius(const Brick& k, std::size_t level, double value) {
  const HalfHeights& h = k.heights();
  if (h.zero_beyond(level)) return value;
  const BasisModel& b = k.basis();
  std::optional<double> out;
  if (b.coefficient_isometry()) {
    switch (b.norm_tag().kind()) {
      case NormKind::L2:
        if (auto t = h.tail_power_sum(level, 2.0)) out = std::sqrt(value * value + *t);
        break;
      case NormKind::L1:
        if (auto t = h.tail_power_sum(level, 1.0)) out = value + *t;
        break;
      case NormKind::Sup:
        if (auto t = h.tail_sup(level)) out = std::max(value, *t);
        break;
    }
  } else if (b.kind() == BasisKind::SummingC) {
    // The all-plus pattern is extremal: the radius is sum eps_n.
    if (auto t = h.tail_power_sum(level, 1.0)) out = value + *t;
  }
  if (out && !std::isfinite(*out)) return std::nullopt;
  return out;
}

}  // namespace bricks

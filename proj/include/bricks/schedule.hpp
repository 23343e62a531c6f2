#pragma once

// Truncation schedules and the trend test applied to window quantities.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bricks/errors.hpp"

namespace bricks {

struct TruncationSchedule {
  std::vector<std::size_t> levels{4, 8, 12, 16, 20, 24};
  double cauchy_tol = 1e-6;
  double divergence_floor = 1e-3;

  void validate() const {
    detail::require(!levels.empty(), "schedule needs at least one level");
    detail::require(levels.front() >= 1, "schedule levels must be positive");
    for (std::size_t i = 1; i < levels.size(); ++i) {
      detail::require(levels[i] > levels[i - 1], "schedule levels must be strictly increasing");
    }
    detail::require(std::isfinite(cauchy_tol) && cauchy_tol > 0.0, "cauchy_tol must be positive");
    detail::require(std::isfinite(divergence_floor) && divergence_floor > 0.0, "divergence_floor must be positive");
  }

  /// Levels feeding a 2^N enumeration must stay within the cap.
  void validate_cap(std::size_t cap) const {
    validate();
    if (max_level() > cap) {
      throw CapExceeded("schedule level " + std::to_string(max_level()) + " exceeds enumeration cap " +
                        std::to_string(cap));
    }
  }

  std::size_t max_level() const { return levels.back(); }
};

enum class Trend { Vanishing, Persistent, Unclear };

inline std::string to_string(Trend t) {
  switch (t) {
    case Trend::Vanishing: return "vanishing";
    case Trend::Persistent: return "persistent";
    case Trend::Unclear: return "unclear";
  }
  return "?";
}

/// Least-squares beta in value ~ position^-beta. Infinite when some value is
/// zero (the quantity has already vanished), NaN with fewer than two points.
inline double decay_exponent(std::span<const std::size_t> positions, std::span<const double> values) {
  detail::require(positions.size() == values.size(), "positions and values differ in length");
  if (values.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  for (double v : values) {
    if (v <= 0.0) return std::numeric_limits<double>::infinity();
  }
  double mx = 0.0;
  double my = 0.0;
  const auto n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    mx += std::log(static_cast<double>(positions[i]));
    my += std::log(values[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double dx = std::log(static_cast<double>(positions[i])) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(values[i]) - my);
  }
  if (sxx == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return -sxy / sxx;
}

inline constexpr double kVanishingExponent = 0.2;
inline constexpr double kPersistentExponent = 0.1;

/// Vanishing: the last value is below cauchy_tol, or the values decay at
/// least like position^-0.2. Persistent: every value is at least the floor
/// and the fitted decay is no faster than position^-0.1.
inline Trend classify_trend(std::span<const std::size_t> positions, std::span<const double> values,
                            double cauchy_tol, double divergence_floor) {
  if (values.empty()) return Trend::Unclear;
  if (values.back() < cauchy_tol) return Trend::Vanishing;
  const double beta = decay_exponent(positions, values);
  if (std::isnan(beta)) return Trend::Unclear;
  if (beta >= kVanishingExponent) return Trend::Vanishing;
  const bool above_floor = std::all_of(values.begin(), values.end(), [&](double v) { return v >= divergence_floor; });
  if (above_floor && beta <= kPersistentExponent) return Trend::Persistent;
  return Trend::Unclear;
}

/// Doubling windows (N, 2N] for schedule levels N with 2N <= max level; the
/// consecutive windows (N_i, N_{i+1}] when fewer than two doubling windows fit.
inline std::vector<std::pair<std::size_t, std::size_t>> schedule_windows(const TruncationSchedule& s) {
  std::vector<std::pair<std::size_t, std::size_t>> w;
  for (std::size_t n : s.levels) {
    if (2 * n <= s.max_level()) w.emplace_back(n, 2 * n);
  }
  if (w.size() < 2) {
    w.clear();
    for (std::size_t i = 0; i + 1 < s.levels.size(); ++i) w.emplace_back(s.levels[i], s.levels[i + 1]);
  }
  return w;
}

}  // namespace bricks

#pragma once

// Radius reports over a truncation schedule with finite / divergent /
// inconclusive verdicts.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bricks/brick.hpp"
#include "bricks/compactness.hpp"
#include "bricks/radii.hpp"
#include "bricks/schedule.hpp"
#include "bricks/sign_kernel.hpp"

namespace bricks {

enum class RadiusKind { Extreme, Unconditional, Absolute };
enum class VerdictKind { FiniteEstimate, DivergenceEvidence, Inconclusive };

inline std::string to_string(RadiusKind k) {
  switch (k) {
    case RadiusKind::Extreme: return "extreme";
    case RadiusKind::Unconditional: return "unconditional";
    case RadiusKind::Absolute: return "absolute";
  }
  return "?";
}

inline std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::FiniteEstimate: return "finite_estimate";
    case VerdictKind::DivergenceEvidence: return "divergence_evidence";
    case VerdictKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Convergence evidence for one fixed sign pattern.
struct PatternEvidence {
  std::string label;
  SignPattern pattern;
  /// || sum_{n in window} theta_n eps_n e_n || per schedule window.
  std::vector<double> window_values;
  /// || sum_{n <= N} theta_n eps_n e_n || per schedule level.
  std::vector<double> partial_norms;
  Trend trend = Trend::Unclear;
};

struct RadiusReport {
  RadiusKind kind = RadiusKind::Unconditional;
  std::vector<std::size_t> levels;
  std::vector<double> values;
  VerdictKind verdict = VerdictKind::Inconclusive;
  std::optional<double> value;
  std::string reason;
  std::optional<CompactnessKind> compactness;
  /// Extreme radius only: whether a convergent extreme point was found
  /// (nullopt when the sampled patterns are inconclusive).
  std::optional<bool> existence;
  std::vector<PatternEvidence> patterns;
};

namespace detail {

inline std::vector<double> sign_radii(const Brick& k, const TruncationSchedule& s, std::size_t cap) {
  std::vector<double> v;
  for (std::size_t n : s.levels) v.push_back(truncated_sign_radius(k, n, cap));
  return v;
}

inline std::optional<double> last_increment(const std::vector<double>& v) {
  if (v.size() < 2) return std::nullopt;
  return v[v.size() - 1] - v[v.size() - 2];
}

inline bool increments_persist(const std::vector<double>& v, double floor) {
  if (v.size() < 2) return false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] - v[i - 1] < floor) return false;
  }
  return true;
}

/// Finite value of the radius from its truncated values: exact when the
/// brick has no tail past the last level, tail-corrected when the tail has a
/// closed form and the brick is compact, or the last value when the values
/// are Cauchy.
inline std::optional<std::pair<double, std::string>> finite_value(const Brick& k, const TruncationSchedule& s,
                                                                  const std::vector<double>& v, bool compact) {
  const std::size_t last = s.max_level();
  if (k.heights().zero_beyond(last)) return std::pair{v.back(), std::string("no half-heights beyond the last level")};
  if (compact) {
    if (auto c = tail_corrected_radius(k, last, v.back())) return std::pair{*c, std::string("closed-form tail correction")};
  }
  const auto inc = last_increment(v);
  if (inc && *inc < s.cauchy_tol) return std::pair{v.back(), std::string("values are Cauchy across levels")};
  return std::nullopt;
}

}  // namespace detail

/// sup over sign patterns of || sum theta_n eps_n e_n ||; the norm of a
/// divergent series counts as infinite.
inline RadiusReport unconditional_radius(const Brick& k, const TruncationSchedule& s,
                                         const CompactnessOptions& opts = {}) {
  s.validate_cap(opts.cap);
  RadiusReport r;
  r.kind = RadiusKind::Unconditional;
  r.levels = s.levels;
  r.values = detail::sign_radii(k, s, opts.cap);
  const CompactnessVerdict cv = brick_compactness(k, s, opts);
  r.compactness = cv.verdict;

  const bool compact = cv.verdict == CompactnessKind::CompactEvidence;
  if (compact) {
    if (auto f = detail::finite_value(k, s, r.values, true)) {
      r.verdict = VerdictKind::FiniteEstimate;
      r.value = f->first;
      r.reason = f->second;
      return r;
    }
  }
  if (cv.verdict == CompactnessKind::NoncompactEvidence) {
    r.verdict = VerdictKind::DivergenceEvidence;
    r.reason = "some signed series diverges: " + cv.reason;
  } else if (detail::increments_persist(r.values, s.divergence_floor)) {
    r.verdict = VerdictKind::DivergenceEvidence;
    r.reason = "values grow by at least the divergence floor at every level";
  } else {
    r.verdict = VerdictKind::Inconclusive;
    r.reason = compact ? "compact, but no finite value could be pinned down" : "no convergence evidence either way";
  }
  return r;
}

/// Sampled sign patterns for the extreme radius: all-plus, alternating, then
/// uniform random patterns from `seed`.
inline std::vector<std::pair<std::string, SignPattern>> sample_patterns(std::size_t length, std::size_t count,
                                                                        std::uint64_t seed) {
  std::vector<std::pair<std::string, SignPattern>> out;
  out.emplace_back("all_plus", SignPattern::all_plus(length));
  out.emplace_back("alternating", SignPattern::alternating(length));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 2; i < count; ++i) {
    std::vector<int> s(length);
    for (auto& x : s) x = (rng() & 1U) ? -1 : 1;
    out.emplace_back("random_" + std::to_string(i - 1), SignPattern(std::move(s)));
  }
  return out;
}

/// sup of norms of extreme points sum theta_n eps_n e_n that converge.
///
/// Any sign prefix spliced onto a convergent pattern is again convergent, so
/// once one sampled pattern converges the truncated vertex maxima bound the
/// radius from below level by level.
inline RadiusReport extreme_radius(const Brick& k, const TruncationSchedule& s, std::size_t patterns = 16,
                                   std::uint64_t seed = 0, const CompactnessOptions& opts = {}) {
  s.validate_cap(opts.cap);
  RadiusReport r;
  r.kind = RadiusKind::Extreme;
  r.levels = s.levels;
  const std::size_t top = s.max_level();
  const auto windows = schedule_windows(s);
  std::vector<std::size_t> starts;
  for (const auto& w : windows) starts.push_back(w.first);

  bool any_converges = false;
  bool all_persist = true;
  for (auto& [label, theta] : sample_patterns(top, patterns, seed)) {
    PatternEvidence e;
    e.label = label;
    for (const auto& [lo, hi] : windows) {
      const SignPattern slice(std::vector<int>(theta.signs().begin() + static_cast<std::ptrdiff_t>(lo),
                                               theta.signs().begin() + static_cast<std::ptrdiff_t>(hi)));
      e.window_values.push_back(signed_column_norm(weighted_columns(k, lo, hi), k.norm_tag(), slice));
    }
    for (std::size_t n : s.levels) {
      const SignPattern prefix(
          std::vector<int>(theta.signs().begin(), theta.signs().begin() + static_cast<std::ptrdiff_t>(n)));
      e.partial_norms.push_back(signed_column_norm(weighted_columns(k, 0, n), k.norm_tag(), prefix));
    }
    e.trend = classify_trend(starts, e.window_values, s.cauchy_tol, s.divergence_floor);
    any_converges = any_converges || e.trend == Trend::Vanishing;
    all_persist = all_persist && e.trend == Trend::Persistent;
    e.pattern = std::move(theta);
    r.patterns.push_back(std::move(e));
  }
  r.values = detail::sign_radii(k, s, opts.cap);

  if (!any_converges) {
    r.existence = all_persist ? std::optional<bool>(false) : std::nullopt;
    r.verdict = all_persist ? VerdictKind::DivergenceEvidence : VerdictKind::Inconclusive;
    r.reason = all_persist ? "no sampled sign pattern converges" : "sampled sign patterns are inconclusive";
    return r;
  }
  r.existence = true;

  // On a compact brick every extreme point converges and the value is the
  // unconditional one; otherwise only Cauchy values can pin it down.
  const CompactnessVerdict cv = brick_compactness(k, s, opts);
  r.compactness = cv.verdict;
  const auto f = detail::finite_value(k, s, r.values, cv.verdict == CompactnessKind::CompactEvidence);
  if (f) {
    r.verdict = VerdictKind::FiniteEstimate;
    r.value = f->first;
    r.reason = f->second;
  } else if (detail::increments_persist(r.values, s.divergence_floor)) {
    r.verdict = VerdictKind::DivergenceEvidence;
    r.reason = "convergent extreme points exist but their norms grow without bound";
  } else {
    r.verdict = VerdictKind::Inconclusive;
    r.reason = "convergent extreme points exist; their norms are not yet Cauchy";
  }
  return r;
}

struct RadiiComparison {
  double extreme = 0.0;
  double unconditional = 0.0;
  double absolute = 0.0;
  bool coincide = false;
};

/// The three truncated radii at level N: the vertex maximum by full
/// enumeration, the sign radius, and the sampled absolute radius.
inline RadiiComparison radii_coincide(const Brick& k, std::size_t n, std::size_t samples = 1000,
                                      std::uint64_t seed = 0, double tol = kDefaultTolerance) {
  RadiiComparison c;
  const Eigen::MatrixXd cols = weighted_columns(k, 0, n);
  c.extreme = n <= 16 ? sign_maximum_naive(cols, k.norm_tag()).value : sign_maximum_gray(cols, k.norm_tag()).value;
  c.unconditional = truncated_sign_radius(k, n);
  c.absolute = absolute_radius(k, n, samples, seed);
  c.coincide = std::abs(c.extreme - c.unconditional) <= tol && std::abs(c.absolute - c.unconditional) <= tol;
  return c;
}

}  // namespace bricks

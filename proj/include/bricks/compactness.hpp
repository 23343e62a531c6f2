#pragma once

// Compactness evidence for bricks and finite sets, epsilon-nets of compact
// bricks, and Gelfand sets of signed sums.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bricks/basis.hpp"
#include "bricks/brick.hpp"
#include "bricks/errors.hpp"
#include "bricks/radii.hpp"
#include "bricks/schedule.hpp"

namespace bricks {

enum class CompactnessKind { CompactEvidence, NoncompactEvidence, Inconclusive };

inline std::string to_string(CompactnessKind k) {
  switch (k) {
    case CompactnessKind::CompactEvidence: return "compact_evidence";
    case CompactnessKind::NoncompactEvidence: return "noncompact_evidence";
    case CompactnessKind::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// A window (lo, hi] with a sign pattern on it whose signed sum has norm
/// `value`; for finite sets, the element whose tail attains it.
struct NoncompactWitness {
  std::size_t lo = 0;
  std::size_t hi = 0;
  SignPattern pattern;
  double value = 0.0;
  std::optional<std::size_t> element;
};

struct CompactnessVerdict {
  CompactnessKind verdict = CompactnessKind::Inconclusive;
  /// Windows (starts[i], ends[i]] and their maxima; for a compact verdict
  /// this decreasing sequence is the evidence.
  std::vector<std::size_t> window_starts;
  std::vector<std::size_t> window_ends;
  std::vector<double> window_values;
  Trend numeric_trend = Trend::Unclear;
  /// Closed-form answer to "does sum eps_n e_n converge unconditionally".
  std::optional<bool> analytic;
  std::optional<NoncompactWitness> witness;
  std::string reason;
};

struct CompactnessOptions {
  bool analytic_upgrade = true;
  std::size_t cap = kDefaultEnumerationCap;
};

/// Whether sum theta_n eps_n e_n converges for every theta, decided from the
/// basis's series criterion and the tail rule.
inline std::optional<bool> analytic_compactness(const Brick& k) {
  const HalfHeights& h = k.heights();
  if (h.tail().identically_zero()) return true;
  switch (k.basis().series_criterion()) {
    case SeriesCriterion::VanishingTerms: return h.vanishing();
    case SeriesCriterion::SummableTerms: return h.summable(1.0);
    case SeriesCriterion::SquareSummableTerms: return h.summable(2.0);
    case SeriesCriterion::Unknown: return std::nullopt;
  }
  return std::nullopt;
}

/// Ambient vector sum_{lo < n <= hi} theta_n eps_n e_n of a brick witness.
inline CoefficientVector witness_vector(const Brick& k, const NoncompactWitness& w) {
  detail::require(w.pattern.size() == w.hi - w.lo, "witness pattern does not match its window");
  std::vector<double> c(w.hi, 0.0);
  for (std::size_t j = 0; j < w.pattern.size(); ++j) c[w.lo + j] = w.pattern[j] * k.heights()(w.lo + j + 1);
  return synthesize(k.basis(), CoefficientVector(std::move(c)));
}

/// Norm of the witness's signed tail, recomputed from scratch.
inline double recheck_witness(const Brick& k, const NoncompactWitness& w) {
  return tail_norm(witness_vector(k, w), k.norm_tag(), 0);
}

inline CompactnessVerdict brick_compactness(const Brick& k, const TruncationSchedule& s,
                                            const CompactnessOptions& opts = {}) {
  s.validate_cap(opts.cap);
  CompactnessVerdict out;
  for (const auto& [lo, hi] : schedule_windows(s)) {
    out.window_starts.push_back(lo);
    out.window_ends.push_back(hi);
    out.window_values.push_back(window_sign_maximum(k, lo, hi, opts.cap).value);
  }
  out.numeric_trend = classify_trend(out.window_starts, out.window_values, s.cauchy_tol, s.divergence_floor);
  out.analytic = analytic_compactness(k);

  if (opts.analytic_upgrade && out.analytic) {
    out.verdict = *out.analytic ? CompactnessKind::CompactEvidence : CompactnessKind::NoncompactEvidence;
    out.reason = *out.analytic ? "signed series converges unconditionally (closed form)"
                               : "signed series fails to converge for some signs (closed form)";
  } else {
    switch (out.numeric_trend) {
      case Trend::Vanishing:
        out.verdict = CompactnessKind::CompactEvidence;
        out.reason = "window maxima vanish";
        break;
      case Trend::Persistent:
        out.verdict = CompactnessKind::NoncompactEvidence;
        out.reason = "window maxima stay above the divergence floor";
        break;
      case Trend::Unclear:
        out.verdict = CompactnessKind::Inconclusive;
        out.reason = "window maxima neither vanish nor persist";
        break;
    }
  }

  if (out.verdict == CompactnessKind::NoncompactEvidence) {
    // Best signed block over every pair of schedule levels.
    NoncompactWitness best;
    best.value = -1.0;
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
      for (std::size_t j = i + 1; j < s.levels.size(); ++j) {
        const SignMaximum m = window_sign_maximum(k, s.levels[i], s.levels[j], opts.cap);
        if (m.value > best.value) best = {s.levels[i], s.levels[j], m.pattern, m.value, std::nullopt};
      }
    }
    if (best.value >= s.divergence_floor) {
      out.witness = best;
    } else {
      out.verdict = CompactnessKind::Inconclusive;
      out.reason += "; no window reaches the divergence floor";
    }
  }
  return out;
}

/// t_N = max over x in A of || sum_{n > N} e_n^*(x) e_n || at each level.
inline CompactnessVerdict precompact_test(const std::vector<CoefficientVector>& set, const BasisModel& b,
                                          const TruncationSchedule& s) {
  s.validate();
  CompactnessVerdict out;
  if (set.empty()) {
    out.verdict = CompactnessKind::CompactEvidence;
    out.reason = "empty set";
    return out;
  }
  const std::size_t len = set.front().size();
  for (const auto& x : set) detail::require(x.size() == len, "all vectors must have the same length");
  const auto n = b.truncation_for_ambient(len);
  detail::require(n.has_value(), "vector length does not match a truncation of the basis");
  const Eigen::MatrixXd syn = b.synth_matrix(*n);
  const Eigen::MatrixXd ana = b.analysis_matrix(*n);

  std::vector<Eigen::VectorXd> coeffs;
  for (const auto& x : set) coeffs.push_back(ana * detail::as_eigen(x));

  NoncompactWitness last_max;
  for (std::size_t level : s.levels) {
    const std::size_t from = std::min(level, *n);
    const auto tail_len = static_cast<Eigen::Index>(*n - from);
    double best = 0.0;
    std::size_t arg = 0;
    for (std::size_t e = 0; e < coeffs.size(); ++e) {
      const Eigen::VectorXd t =
          syn.rightCols(tail_len) * coeffs[e].tail(tail_len);
      const double v = norm(std::span<const double>(t.data(), static_cast<std::size_t>(t.size())), b.norm_tag());
      if (v > best) {
        best = v;
        arg = e;
      }
    }
    out.window_starts.push_back(level);
    out.window_ends.push_back(*n);
    out.window_values.push_back(best);
    last_max = {from, *n, SignPattern{}, best, arg};
  }
  out.numeric_trend = classify_trend(out.window_starts, out.window_values, s.cauchy_tol, s.divergence_floor);
  switch (out.numeric_trend) {
    case Trend::Vanishing:
      out.verdict = CompactnessKind::CompactEvidence;
      out.reason = "tails vanish";
      break;
    case Trend::Persistent:
      out.verdict = CompactnessKind::NoncompactEvidence;
      out.reason = "tails stay above the divergence floor";
      out.witness = last_max;
      break;
    case Trend::Unclear:
      out.verdict = CompactnessKind::Inconclusive;
      out.reason = "tails neither vanish nor persist";
      break;
  }
  return out;
}

struct EpsilonNet {
  std::vector<CoefficientVector> points;
  double eps = 0.0;
  std::size_t level = 0;
  /// Bound on || sum_{n > level} a_n e_n || over the tail box.
  double tail_bound = 0.0;
  double spacing = 0.0;
  std::vector<std::size_t> points_per_axis;
};

inline constexpr std::size_t kDefaultNetBudget = 1'000'000;

/// Upper bound on the signed tail beyond `level`. Closed form when the basis
/// and tail rule allow it; otherwise the window maximum up to the schedule's
/// last level.
inline std::optional<double> signed_tail_bound(const Brick& k, std::size_t level, const TruncationSchedule& s,
                                               std::size_t cap = kDefaultEnumerationCap) {
  const HalfHeights& h = k.heights();
  if (h.zero_beyond(level)) return 0.0;
  const BasisModel& b = k.basis();
  if (b.coefficient_isometry()) {
    switch (b.norm_tag().kind()) {
      case NormKind::L2:
        if (auto t = h.tail_power_sum_upper(level, 2.0)) return std::sqrt(*t);
        break;
      case NormKind::L1: return h.tail_power_sum_upper(level, 1.0);
      case NormKind::Sup: return h.tail_sup(level);
    }
  } else if (b.kind() == BasisKind::SummingC) {
    return h.tail_power_sum_upper(level, 1.0);
  }
  if (level < s.max_level()) return window_sign_maximum(k, level, s.max_level(), cap).value;
  return std::nullopt;
}

/// Axis grid over the box prod [-eps_n, eps_n], n <= N, synthesized; every
/// member of the brick lies within eps of some point.
inline EpsilonNet epsilon_net(const Brick& k, double eps, std::size_t level, const TruncationSchedule& s = {},
                              std::size_t budget = kDefaultNetBudget) {
  detail::require(std::isfinite(eps) && eps > 0.0, "eps must be positive");
  const CompactnessVerdict cv = brick_compactness(k, s);
  detail::require(cv.verdict == CompactnessKind::CompactEvidence, "epsilon-net needs a brick with compact evidence");
  const auto tail = signed_tail_bound(k, level, s);
  detail::require(tail.has_value(), "no bound for the tail beyond the requested level");
  detail::require(*tail <= eps / 2.0, "tail beyond level " + std::to_string(level) + " is " +
                                          std::to_string(*tail) + ", above eps/2");

  EpsilonNet net;
  net.eps = eps;
  net.level = level;
  net.tail_bound = *tail;
  const CoefficientVector eps_n = k.half_heights(level);
  const std::size_t dim = k.basis().ambient_dim(level);

  if (eps >= truncated_sign_radius(k, level) + *tail) {
    net.points.push_back(CoefficientVector::zeros(dim));
    net.points_per_axis.assign(level, 1);
    net.spacing = std::numeric_limits<double>::infinity();
    return net;
  }

  // A coefficient error of at most spacing/2 per axis costs at most eps/2 in
  // norm: |d|_inf for an isometric sup basis, sqrt(N') |d|_inf for an
  // isometric l2 basis, and sum |d_n| ||e_n|| = N' |d|_inf otherwise.
  std::size_t active = 0;
  for (double e : eps_n) active += e > 0.0 ? 1 : 0;
  const BasisModel& b = k.basis();
  double spacing = eps / 2.0;
  if (active > 0) {
    if (b.coefficient_isometry() && b.norm_tag().kind() == NormKind::Sup) {
      spacing = eps / 2.0;
    } else if (b.coefficient_isometry() && b.norm_tag().kind() == NormKind::L2) {
      spacing = std::min(eps / 2.0, eps / std::sqrt(static_cast<double>(active)));
    } else {
      spacing = std::min(eps / 2.0, eps / static_cast<double>(active));
    }
  }
  net.spacing = spacing;

  double total = 1.0;
  for (double e : eps_n) {
    const std::size_t m = e > 0.0 ? static_cast<std::size_t>(std::ceil(2.0 * e / spacing)) : 1;
    net.points_per_axis.push_back(m);
    total *= static_cast<double>(m);
  }
  if (total > static_cast<double>(budget)) {
    throw CapExceeded("epsilon-net would have " + std::to_string(total) + " points, budget is " +
                      std::to_string(budget));
  }

  const Eigen::MatrixXd syn = b.synth_matrix(level);
  std::vector<std::size_t> idx(level, 0);
  Eigen::VectorXd a(static_cast<Eigen::Index>(level));
  while (true) {
    for (std::size_t j = 0; j < level; ++j) {
      const double m = static_cast<double>(net.points_per_axis[j]);
      a(static_cast<Eigen::Index>(j)) = -eps_n[j] + (2.0 * static_cast<double>(idx[j]) + 1.0) * eps_n[j] / m;
    }
    net.points.push_back(detail::from_eigen(syn * a));
    std::size_t j = 0;
    while (j < level && ++idx[j] == net.points_per_axis[j]) idx[j++] = 0;
    if (j == level) break;
  }
  return net;
}

inline constexpr std::size_t kGelfandCap = 20;

struct GelfandSet {
  std::vector<CoefficientVector> points;
  double max_norm = 0.0;
  double diameter = 0.0;
};

/// All sums sum theta_i x_i; bit i of the point index set means theta_i = -1.
inline GelfandSet gelfand_set(const std::vector<CoefficientVector>& xs, NormTag tag) {
  const std::size_t m = xs.size();
  if (m > kGelfandCap) {
    throw CapExceeded("Gelfand set of " + std::to_string(m) + " vectors exceeds cap " + std::to_string(kGelfandCap));
  }
  const std::size_t len = m == 0 ? 0 : xs.front().size();
  for (const auto& x : xs) detail::require(x.size() == len, "all vectors must have the same length");
  GelfandSet g;
  const std::uint64_t count = std::uint64_t{1} << m;
  g.points.reserve(count);
  std::vector<double> p(len);
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    for (std::size_t i = 0; i < len; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += ((bits >> j) & 1U) ? -xs[j][i] : xs[j][i];
      p[i] = s;
    }
    g.max_norm = std::max(g.max_norm, norm(std::span<const double>(p), tag));
    g.points.emplace_back(p);
  }
  // The set is symmetric, so the diameter is attained by a point and its negative.
  g.diameter = 2.0 * g.max_norm;
  return g;
}

}  // namespace bricks

#pragma once

// Purely atomic probability measures on a separable Hilbert space, given in
// coordinates over a fixed orthonormal basis: moments, the operator
// j(u) = sum w_n (u, x_n) x_n and its Hilbert-Schmidt / compactness tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bricks/compactness.hpp"
#include "bricks/errors.hpp"
#include "bricks/schedule.hpp"
#include "bricks/sequence.hpp"

namespace bricks {

/// Closed-form family atom_n = n^a e_n with weight_n = c n^-b ln^-d(n+1);
/// the atoms past the stored ones follow this rule.
struct TailModel {
  double c = 1.0;
  double atom_exponent = 0.0;
  double weight_power = 0.0;
  double log_power = 0.0;

  /// sum c n^-s ln^-d(n+1) converges iff s > 1, or s = 1 and d > 1.
  static bool series_converges(double s, double d) {
    constexpr double eps = 1e-12;
    if (s > 1.0 + eps) return true;
    if (s < 1.0 - eps) return false;
    return d > 1.0;
  }
};

/// Sparse coordinates of one atom.
struct Atom {
  std::vector<std::size_t> index;
  std::vector<double> value;
};

class DiscreteMeasure {
 public:
  /// `tail_mass` is the probability carried by atoms beyond the stored ones
  /// (closed-form families); stored weights plus tail_mass must equal 1.
  DiscreteMeasure(std::string name, std::size_t dimension, std::vector<Atom> atoms, std::vector<double> weights,
                  double tail_mass = 0.0, std::optional<TailModel> model = std::nullopt)
      : name_(std::move(name)),
        dimension_(dimension),
        atoms_(std::move(atoms)),
        weights_(std::move(weights)),
        tail_mass_(tail_mass),
        model_(model) {
    detail::require(atoms_.size() == weights_.size(), "one weight per atom");
    detail::require(std::isfinite(tail_mass_) && tail_mass_ >= 0.0, "tail mass must be nonnegative");
    double total = tail_mass_;
    for (double w : weights_) {
      detail::require(std::isfinite(w) && w > 0.0, "weights must be positive");
      total += w;
    }
    detail::require(std::abs(total - 1.0) <= 1e-9, "weights must sum to 1, got " + std::to_string(total));
    for (const auto& a : atoms_) {
      detail::require(a.index.size() == a.value.size(), "atom index/value length mismatch");
      for (std::size_t i = 0; i < a.index.size(); ++i) {
        detail::require(a.index[i] < dimension_, "atom coordinate out of range");
        detail::require(std::isfinite(a.value[i]), "atom coordinates must be finite");
      }
    }
  }

  static DiscreteMeasure from_dense(std::string name, const std::vector<CoefficientVector>& atoms,
                                    std::vector<double> weights) {
    detail::require(!atoms.empty(), "measure needs at least one atom");
    const std::size_t dim = atoms.front().size();
    std::vector<Atom> sparse;
    for (const auto& x : atoms) {
      detail::require(x.size() == dim, "all atoms must have the same length");
      Atom a;
      for (std::size_t i = 0; i < dim; ++i) {
        if (x[i] != 0.0) {
          a.index.push_back(i);
          a.value.push_back(x[i]);
        }
      }
      sparse.push_back(std::move(a));
    }
    return DiscreteMeasure(std::move(name), dim, std::move(sparse), std::move(weights));
  }

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  double tail_mass() const { return tail_mass_; }
  const std::optional<TailModel>& tail_model() const { return model_; }

  /// Norming-constant bracket [lower, upper] when the family has one.
  std::optional<std::pair<double, double>> constant_bracket;

  CoefficientVector atom(std::size_t i) const {
    std::vector<double> x(dimension_, 0.0);
    for (std::size_t j = 0; j < atoms_[i].index.size(); ++j) x[atoms_[i].index[j]] = atoms_[i].value[j];
    return CoefficientVector(std::move(x));
  }

  /// (u, x_i); coordinates of u beyond its length count as zero.
  double inner(std::size_t i, const CoefficientVector& u) const {
    double s = 0.0;
    const Atom& a = atoms_[i];
    for (std::size_t j = 0; j < a.index.size(); ++j) {
      if (a.index[j] < u.size()) s += u[a.index[j]] * a.value[j];
    }
    return s;
  }

  double atom_norm(std::size_t i) const {
    double s = 0.0;
    for (double v : atoms_[i].value) s += v * v;
    return std::sqrt(s);
  }

  /// Every atom is a multiple of a single basis vector, no two share one.
  bool diagonal() const {
    std::vector<bool> used(dimension_, false);
    for (const auto& a : atoms_) {
      if (a.index.size() > 1) return false;
      if (a.index.size() == 1) {
        if (used[a.index[0]]) return false;
        used[a.index[0]] = true;
      }
    }
    return true;
  }

 private:
  std::string name_;
  std::size_t dimension_;
  std::vector<Atom> atoms_;
  std::vector<double> weights_;
  double tail_mass_;
  std::optional<TailModel> model_;
};

namespace detail {

/// sum_{n > m} 1/n^2, Euler-Maclaurin from n = 50 on.
inline double inverse_square_tail(std::size_t m) {
  constexpr std::size_t start = 50;
  double head = 0.0;
  for (std::size_t n = m + 1; n <= start; ++n) head += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  const double x = static_cast<double>(std::max(m, start));
  const double x2 = x * x;
  const double tail =
      1.0 / x - 1.0 / (2.0 * x2) + 1.0 / (6.0 * x2 * x) - 1.0 / (30.0 * x2 * x2 * x) +
      1.0 / (42.0 * x2 * x2 * x2 * x) - 1.0 / (30.0 * x2 * x2 * x2 * x2 * x);
  return head + tail;
}

inline DiscreteMeasure sqrt_n_family(std::string name, std::size_t n, const std::vector<double>& weights,
                                     double tail_mass, TailModel model) {
  std::vector<Atom> atoms(n);
  for (std::size_t i = 0; i < n; ++i) atoms[i] = {{i}, {std::sqrt(static_cast<double>(i + 1))}};
  return DiscreteMeasure(std::move(name), n, std::move(atoms), weights, tail_mass, model);
}

}  // namespace detail

/// (6/pi^2) sum 1/n^2 delta_{sqrt(n) e_n}, truncated to N atoms. Weights are
/// the exact (6/pi^2)/n^2; the mass of the dropped atoms is kept as tail_mass.
inline DiscreteMeasure make_weak4_measure(std::size_t n) {
  detail::require(n >= 1, "measure needs N >= 1");
  const double c = 6.0 / (std::numbers::pi * std::numbers::pi);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i + 1);
    w[i] = c / (k * k);
  }
  return detail::sqrt_n_family("weak4", n, w, c * detail::inverse_square_tail(n),
                               {.c = c, .atom_exponent = 0.5, .weight_power = 2.0, .log_power = 0.0});
}

/// C sum 1/(n ln^2(n+1)) delta_{sqrt(n) e_n}, truncated to N atoms. With
/// S_N the prefix sum and T the tail, 1/ln(N+2) <= T <= (1+1/N)/ln(N+1);
/// C uses the bracket midpoint and the bracket on C is recorded.
inline DiscreteMeasure make_nonHS_measure(std::size_t n) {
  detail::require(n >= 1, "measure needs N >= 1");
  std::vector<double> f(n);
  double prefix = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i + 1);
    const double l = std::log(k + 1.0);
    f[i] = 1.0 / (k * l * l);
    prefix += f[i];
  }
  const double nn = static_cast<double>(n);
  const double t_lo = 1.0 / std::log(nn + 2.0);
  const double t_hi = (1.0 + 1.0 / nn) / std::log(nn + 1.0);
  const double t_mid = 0.5 * (t_lo + t_hi);
  const double c = 1.0 / (prefix + t_mid);
  for (double& x : f) x *= c;
  auto mu = detail::sqrt_n_family("nonHS", n, f, c * t_mid,
                                  {.c = c, .atom_exponent = 0.5, .weight_power = 1.0, .log_power = 2.0});
  mu.constant_bracket = std::pair{1.0 / (prefix + t_hi), 1.0 / (prefix + t_lo)};
  return mu;
}

enum class MomentVerdict { ConvergesEvidence, DivergesEvidence, Inconclusive };

inline std::string to_string(MomentVerdict v) {
  switch (v) {
    case MomentVerdict::ConvergesEvidence: return "converges_evidence";
    case MomentVerdict::DivergesEvidence: return "diverges_evidence";
    case MomentVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct MomentMode {
  bool weak = false;
  CoefficientVector probe;

  static MomentMode strong() { return {}; }
  static MomentMode weak_along(CoefficientVector h) { return {true, std::move(h)}; }
  std::string name() const { return weak ? "weak" : "strong"; }
};

struct MomentReport {
  double p = 1.0;
  std::string mode;
  std::vector<std::size_t> levels;
  std::vector<double> partial_sums;
  MomentVerdict verdict = MomentVerdict::Inconclusive;
  MomentVerdict numeric_verdict = MomentVerdict::Inconclusive;
  std::optional<double> value;
  std::string reason;
};

namespace detail {

/// Partial sums of nonnegative terms at each level (levels past the last
/// term see the full sum) plus the total.
inline std::pair<std::vector<double>, double> partial_sums_at(const std::vector<double>& terms,
                                                              const std::vector<std::size_t>& levels) {
  std::vector<double> out;
  double s = 0.0;
  std::size_t done = 0;
  for (std::size_t level : levels) {
    const std::size_t upto = std::min(level, terms.size());
    for (; done < upto; ++done) s += terms[done];
    out.push_back(s);
  }
  for (; done < terms.size(); ++done) s += terms[done];
  return {out, s};
}

inline MomentVerdict numeric_series_verdict(const std::vector<std::size_t>& levels, const std::vector<double>& sums,
                                            const TruncationSchedule& s) {
  if (sums.size() < 2) return MomentVerdict::Inconclusive;
  std::vector<std::size_t> pos(levels.begin() + 1, levels.end());
  std::vector<double> inc;
  for (std::size_t i = 1; i < sums.size(); ++i) inc.push_back(sums[i] - sums[i - 1]);
  switch (classify_trend(pos, inc, s.cauchy_tol, s.divergence_floor)) {
    case Trend::Vanishing: return MomentVerdict::ConvergesEvidence;
    case Trend::Persistent: return MomentVerdict::DivergesEvidence;
    case Trend::Unclear: return MomentVerdict::Inconclusive;
  }
  return MomentVerdict::Inconclusive;
}

inline void settle(MomentReport& r, std::optional<bool> analytic, double total, const std::string& why) {
  if (analytic) {
    r.verdict = *analytic ? MomentVerdict::ConvergesEvidence : MomentVerdict::DivergesEvidence;
    r.reason = why;
  } else {
    r.verdict = r.numeric_verdict;
    r.reason = "partial-sum increments across levels";
  }
  if (r.verdict == MomentVerdict::ConvergesEvidence) r.value = total;
}

}  // namespace detail

/// int |(h,u)|^p dmu (weak) or int ||u||^p dmu (strong), by partial sums over atoms.
inline MomentReport moment(const DiscreteMeasure& mu, double p, const MomentMode& mode, const TruncationSchedule& s) {
  detail::require(std::isfinite(p) && p >= 1.0, "moment exponent must be >= 1");
  s.validate();
  MomentReport r;
  r.p = p;
  r.mode = mode.name();
  r.levels = s.levels;
  std::vector<double> terms(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double x = mode.weak ? std::abs(mu.inner(i, mode.probe)) : mu.atom_norm(i);
    terms[i] = mu.weights()[i] * std::pow(x, p);
  }
  auto [sums, total] = detail::partial_sums_at(terms, s.levels);
  r.partial_sums = std::move(sums);
  r.numeric_verdict = detail::numeric_series_verdict(r.levels, r.partial_sums, s);

  std::optional<bool> analytic;
  std::string why;
  if (mu.tail_mass() == 0.0) {
    analytic = true;
    why = "finitely many atoms";
  } else if (mode.weak && mu.tail_model() && mode.probe.size() <= mu.dimension()) {
    // Atoms past the stored ones are multiples of e_n with n > dimension,
    // orthogonal to the probe.
    analytic = true;
    why = "probe is orthogonal to every atom past the stored ones";
  } else if (!mode.weak && mu.tail_model()) {
    const TailModel& m = *mu.tail_model();
    analytic = TailModel::series_converges(m.weight_power - m.atom_exponent * p, m.log_power);
    why = "closed-form family: terms behave like n^" + std::to_string(m.atom_exponent * p - m.weight_power) +
          " ln^-" + std::to_string(m.log_power) + "(n+1)";
  }
  detail::settle(r, analytic, total, why);
  return r;
}

/// j(u) = sum_n w_n (u, x_n) x_n.
inline CoefficientVector pettis_j(const DiscreteMeasure& mu, const CoefficientVector& u) {
  detail::require(u.size() == mu.dimension(), "vector length must match the measure's dimension");
  std::vector<double> out(mu.dimension(), 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const double c = mu.weights()[i] * mu.inner(i, u);
    const Atom& a = mu.atoms()[i];
    for (std::size_t j = 0; j < a.index.size(); ++j) out[a.index[j]] += c * a.value[j];
  }
  return CoefficientVector(std::move(out));
}

/// Diagonal of j for a diagonal measure: j(e_n) = d_n e_n.
inline std::vector<double> j_diagonal(const DiscreteMeasure& mu) {
  detail::require(mu.diagonal(), "only diagonal measures are supported");
  std::vector<double> d(mu.dimension(), 0.0);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const Atom& a = mu.atoms()[i];
    if (!a.index.empty()) d[a.index[0]] += mu.weights()[i] * a.value[0] * a.value[0];
  }
  return d;
}

/// sum_n ||j(e_n)||^2 over levels.
inline MomentReport hs_diagnostic(const DiscreteMeasure& mu, const TruncationSchedule& s) {
  s.validate();
  const std::vector<double> d = j_diagonal(mu);
  std::vector<double> terms(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) terms[i] = d[i] * d[i];
  MomentReport r;
  r.p = 2.0;
  r.mode = "hilbert_schmidt";
  r.levels = s.levels;
  auto [sums, total] = detail::partial_sums_at(terms, s.levels);
  r.partial_sums = std::move(sums);
  r.numeric_verdict = detail::numeric_series_verdict(r.levels, r.partial_sums, s);
  std::optional<bool> analytic;
  std::string why;
  if (mu.tail_mass() == 0.0) {
    analytic = true;
    why = "finite rank";
  } else if (const auto& m = mu.tail_model()) {
    // d_n = c n^{2a-b} ln^-d(n+1)
    const double s_exp = -2.0 * (2.0 * m->atom_exponent - m->weight_power);
    analytic = TailModel::series_converges(s_exp, 2.0 * m->log_power);
    why = "closed-form family: ||j(e_n)||^2 behaves like n^" + std::to_string(-s_exp) + " ln^-" +
          std::to_string(2.0 * m->log_power) + "(n+1)";
  }
  detail::settle(r, analytic, total, why);
  return r;
}

struct JCompactness {
  CompactnessKind verdict = CompactnessKind::Inconclusive;
  std::vector<double> diagonal;
  std::string reason;
};

/// Compactness of j for a diagonal measure: its diagonal must tend to 0.
inline JCompactness j_compactness(const DiscreteMeasure& mu, std::size_t n) {
  const std::vector<double> d = j_diagonal(mu);
  JCompactness r;
  r.diagonal.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(std::min(n, d.size())));
  if (mu.tail_mass() == 0.0) {
    r.verdict = CompactnessKind::CompactEvidence;
    r.reason = "finite rank";
    return r;
  }
  if (const auto& m = mu.tail_model()) {
    const double e = 2.0 * m->atom_exponent - m->weight_power;
    const bool vanishes = e < -1e-12 || (std::abs(e) <= 1e-12 && m->log_power > 0.0);
    if (vanishes) {
      r.verdict = CompactnessKind::CompactEvidence;
      r.reason = "diagonal c n^" + std::to_string(e) + " ln^-" + std::to_string(m->log_power) + "(n+1) tends to 0";
      return r;
    }
    r.reason = "diagonal does not tend to 0";
    return r;
  }
  r.reason = "no closed form for the diagonal past the stored atoms";
  return r;
}

}  // namespace bricks

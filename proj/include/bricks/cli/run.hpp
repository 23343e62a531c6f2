#pragma once

// Command dispatch for the bricks tool. Every command produces a report of
// sections, each with its own pass/fail; the exit status is 0 exactly when
// all sections pass.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "bricks/bricks.hpp"
#include "bricks/cli/config.hpp"
#include "bricks/cli/report.hpp"

namespace bricks::cli {

enum ExitStatus : int { kOk = 0, kCheckFailed = 1, kBadConfig = 2, kCapExceeded = 3, kInvariantViolated = 4 };

namespace sections {

inline Section harmonic_norms() {
  Section s{"summing-basis-harmonic-norms",
            "in the summing basis ||e_1 + e_2/2 + ... + e_n/n|| = 1 + 1/2 + ... + 1/n, unbounded in n"};
  const BasisModel b = BasisModel::summing_c();
  double h = 0.0;
  double err = 0.0;
  double at11 = 0.0;
  std::vector<double> c;
  for (std::size_t n = 1; n <= 30; ++n) {
    c.push_back(1.0 / static_cast<double>(n));
    h += 1.0 / static_cast<double>(n);
    const double v = norm(synthesize(b, CoefficientVector(c)), NormTag::sup());
    err = std::max(err, std::abs(v - h));
    if (n == 11) at11 = v;
  }
  s.values = {{"n_max", 30}, {"max_abs_error", num(err)}, {"norm_at_11", num(at11)}};
  s.pass = err <= 1e-12 && at11 > 3.0;
  s.verdict = s.pass ? "harmonic growth reproduced" : "mismatch";
  s.expected = "error <= 1e-12 for n <= 30 and norm > 3 at n = 11";
  return s;
}

inline Section extreme_point_unbounded(const TruncationSchedule& sch, std::size_t patterns, std::uint64_t seed) {
  Section s{"summing-basis-unbounded-brick-with-extreme-point",
            "with eps_n = 1/n in the summing basis the alternating extreme point converges while the brick is "
            "unbounded"};
  const Brick k(BasisModel::summing_c(), HalfHeights(TailRule::reciprocal()));
  const RadiusReport er = extreme_radius(k, sch, patterns, seed);
  const RadiusReport ur = unconditional_radius(k, sch);
  const PatternEvidence& alt = er.patterns.at(1);
  double max_step = 0.0;
  for (std::size_t i = 1; i < alt.partial_norms.size(); ++i) {
    max_step = std::max(max_step, std::abs(alt.partial_norms[i] - alt.partial_norms[i - 1]));
  }
  s.values = {{"alternating_trend", to_string(alt.trend)},
              {"alternating_partial_norms", nums(alt.partial_norms)},
              {"alternating_max_increment", num(max_step)},
              {"extreme_radius", to_json(er)},
              {"unconditional_radius", to_json(ur)}};
  s.pass = alt.trend == Trend::Vanishing && max_step < 1e-3 && er.existence == std::optional<bool>(true) &&
           ur.verdict == VerdictKind::DivergenceEvidence;
  s.verdict = "extreme point exists: " + std::string(er.existence.value_or(false) ? "yes" : "no") +
              "; unconditional radius: " + to_string(ur.verdict);
  s.expected = "alternating pattern Cauchy (increments < 1e-3), unconditional radius divergent";
  return s;
}

inline Section c0_unit_ball(const TruncationSchedule& sch, std::size_t patterns, std::size_t samples,
                            std::uint64_t seed) {
  Section s{"c0-unit-ball", "the unit ball of c0 is a bounded brick without extreme points"};
  const Brick k(BasisModel::standard_c0(), HalfHeights(TailRule::constant(1.0)));
  std::vector<double> abs;
  bool all_one = true;
  for (std::size_t n : sch.levels) {
    abs.push_back(absolute_radius(k, n, samples, seed));
    all_one = all_one && abs.back() == 1.0;
  }
  const RadiusReport ur = unconditional_radius(k, sch);
  const RadiusReport er = extreme_radius(k, sch, patterns, seed);
  s.values = {{"levels", counts(sch.levels)},
              {"absolute_radius", nums(abs)},
              {"unconditional_verdict", to_string(ur.verdict)},
              {"extreme_verdict", to_string(er.verdict)}};
  s.pass = all_one && ur.verdict == VerdictKind::DivergenceEvidence && er.verdict == VerdictKind::DivergenceEvidence;
  s.verdict = "absolute radius 1; unconditional " + to_string(ur.verdict) + "; extreme " + to_string(er.verdict);
  s.expected = "absolute radius exactly 1 at every level; both other radii divergent";
  return s;
}

inline Section uncompact_brick(const TruncationSchedule& sch, std::size_t patterns, std::uint64_t seed) {
  Section s{"uncompact-block-brick",
            "blocks f_j of c0 over harmonic blocks with eps_n = 1/n: a brick bounded by 2 that is not compact"};
  const std::size_t cover = std::max<std::size_t>(sch.max_level(), 60);
  const BasisModel u = make_uncompact_basis(cover);
  const Brick k(u, HalfHeights(TailRule::reciprocal()));

  std::vector<double> radii;
  bool bounded = true;
  for (std::size_t n : sch.levels) {
    radii.push_back(truncated_sign_radius(k, n));
    bounded = bounded && radii.back() <= 2.0 + 1e-9;
  }

  // g_k = sum over block k of e_n / n
  Json gs = Json::array();
  bool g_ok = true;
  std::size_t start = 0;
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  for (std::size_t end : u.block_ends()) {
    if (end > cover) break;
    std::vector<double> c(end, 0.0);
    for (std::size_t n = start + 1; n <= end; ++n) c[n - 1] = 1.0 / static_cast<double>(n);
    const CoefficientVector g = synthesize(u, CoefficientVector(c));
    const double gn = norm(g, NormTag::sup());
    const bool member = contains(k, g);
    g_ok = g_ok && member && gn >= 1.0 - 1e-12;
    gs.push_back({{"block", {start + 1, end}}, {"norm", num(gn)}, {"member", member}});
    blocks.emplace_back(start + 1, end);
    start = end;
  }

  const CompactnessVerdict cv = brick_compactness(k, sch);
  bool witness_ok = false;
  if (cv.witness) {
    const NoncompactWitness& w = *cv.witness;
    const bool covers_block = std::any_of(blocks.begin(), blocks.end(), [&](const auto& b) {
      return b.first > w.lo && b.second <= w.hi;
    });
    witness_ok = covers_block && w.value >= 1.0 - 1e-12 && std::abs(recheck_witness(k, w) - w.value) <= 1e-12;
  }
  const RadiusReport ur = unconditional_radius(k, sch);
  const RadiusReport er = extreme_radius(k, sch, patterns, seed);
  s.values = {{"block_ends", counts(u.block_ends())},
              {"levels", counts(sch.levels)},
              {"sign_radius", nums(radii)},
              {"g", gs},
              {"compactness", to_json(cv)},
              {"unconditional_verdict", to_string(ur.verdict)},
              {"extreme_radius", to_json(er)},
              {"basis_constant_10", num(basis_constant(u, 10))},
              {"unconditional_constant_10", num(unconditional_constant(u, 10))}};
  if (cv.witness) s.witness = to_json(*cv.witness);
  s.pass = bounded && g_ok && cv.verdict == CompactnessKind::NoncompactEvidence && witness_ok &&
           ur.verdict == VerdictKind::DivergenceEvidence;
  s.verdict = to_string(cv.verdict);
  s.expected = "sign radius <= 2 at every level, every g_k a member with norm >= 1, noncompact with a block witness";
  return s;
}

inline Section hilbert_radii(const TruncationSchedule& sch, std::size_t patterns, std::size_t samples,
                             std::uint64_t seed) {
  Section s{"hilbert-radii", "in l2 with eps_n = 1/n all radii are finite and coincide"};
  const Brick k(BasisModel::standard_lp(2), HalfHeights(TailRule::reciprocal()));
  const RadiusReport ur = unconditional_radius(k, sch);
  const RadiusReport er = extreme_radius(k, sch, patterns, seed);
  const RadiiComparison rc = radii_coincide(k, std::min<std::size_t>(sch.max_level(), 12), samples, seed);
  const double target = std::numbers::pi / std::sqrt(6.0);
  s.values = {{"unconditional_radius", to_json(ur)},
              {"extreme_estimate", er.value ? num(*er.value) : Json("none")},
              {"pi_over_sqrt6", num(target)},
              {"truncated_radii", {{"extreme", num(rc.extreme)},
                                   {"unconditional", num(rc.unconditional)},
                                   {"absolute", num(rc.absolute)}}}};
  s.pass = ur.verdict == VerdictKind::FiniteEstimate && std::abs(*ur.value - target) <= 0.05 &&
           er.verdict == VerdictKind::FiniteEstimate && std::abs(*er.value - *ur.value) <= sch.cauchy_tol &&
           rc.coincide;
  s.verdict = to_string(ur.verdict);
  s.expected = "finite estimate within 0.05 of pi/sqrt(6); extreme equals unconditional; truncated radii coincide";
  return s;
}

inline Section compactness_dichotomy(const TruncationSchedule& sch) {
  Section s{"brick-compactness-dichotomy", "a brick is compact iff sum eps_n e_n converges unconditionally"};
  struct Case {
    std::string name;
    Brick brick;
    CompactnessKind expected;
  };
  const std::vector<Case> cases{
      {"l2, 1/n", Brick(BasisModel::standard_lp(2), HalfHeights(TailRule::reciprocal())),
       CompactnessKind::CompactEvidence},
      {"l2, 1/sqrt(n)", Brick(BasisModel::standard_lp(2), HalfHeights(TailRule::reciprocal_sqrt())),
       CompactnessKind::NoncompactEvidence},
      {"c0, 1/n", Brick(BasisModel::standard_c0(), HalfHeights(TailRule::reciprocal())),
       CompactnessKind::CompactEvidence},
      {"c0, 1", Brick(BasisModel::standard_c0(), HalfHeights(TailRule::constant(1.0))),
       CompactnessKind::NoncompactEvidence},
  };
  bool ok = true;
  Json out = Json::array();
  for (const auto& c : cases) {
    const CompactnessVerdict v = brick_compactness(c.brick, sch);
    bool pass = v.verdict == c.expected;
    if (c.name == "l2, 1/sqrt(n)") pass = pass && v.witness && v.witness->value >= 0.8;
    ok = ok && pass;
    out.push_back({{"brick", c.name}, {"expected", to_string(c.expected)}, {"result", to_json(v)}, {"pass", pass}});
  }
  s.values = {{"cases", out}};
  s.pass = ok;
  s.verdict = ok ? "all four verdicts as expected" : "verdict mismatch";
  s.expected = "compact, noncompact (window norm >= 0.8), compact, noncompact";
  return s;
}

inline Section net_soundness(const TruncationSchedule& sch, std::uint64_t seed) {
  Section s{"epsilon-net", "an axis grid over the coefficient box is an eps-net of a compact brick"};
  const Brick k(BasisModel::standard_c0(), HalfHeights::finite({1.0, 0.5, 0.25}));
  const double eps = 0.3;
  const EpsilonNet net = epsilon_net(k, eps, 3, sch);
  bool members = true;
  for (const auto& p : net.points) members = members && contains(k, p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  const CoefficientVector e = k.half_heights(3);
  for (int t = 0; t < 10'000; ++t) {
    const CoefficientVector x({unit(rng) * e[0], unit(rng) * e[1], unit(rng) * e[2]});
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : net.points) best = std::min(best, norm(x - p, NormTag::sup()));
    worst = std::max(worst, best);
  }
  s.values = {{"eps", num(eps)},
              {"points", net.points.size()},
              {"points_per_axis", counts(net.points_per_axis)},
              {"spacing", num(net.spacing)},
              {"tail_bound", num(net.tail_bound)},
              {"samples", 10'000},
              {"max_distance_to_net", num(worst)}};
  s.pass = members && worst <= eps;
  s.verdict = s.pass ? "net covers every sample" : "net fails";
  s.expected = "every net point a member; every sampled member within eps of the net";
  return s;
}

inline std::vector<CoefficientVector> random_set(std::mt19937_64& rng, std::size_t count, std::size_t dim) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  std::vector<CoefficientVector> set;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> x(dim);
    for (auto& v : x) v = d(rng);
    set.emplace_back(std::move(x));
  }
  return set;
}

inline Section c0_entropy_section(const TruncationSchedule& sch, std::uint64_t seed) {
  Section s{"c0-entropy", "the entropy of a finite set in c0 equals its largest member norm"};
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  bool exact = true;
  for (int t = 0; t < 100; ++t) {
    const auto set = random_set(rng, 1 + rng() % 6, 1 + rng() % 8);
    double m = 0.0;
    for (const auto& x : set) m = std::max(m, norm(x, NormTag::sup()));
    const double e = c0_entropy(set);
    exact = exact && e == m;
    const RadiusReport r = basis_radius(set, BasisModel::standard_c0(), sch);
    worst = std::max(worst, r.value ? std::abs(*r.value - e) : std::numeric_limits<double>::infinity());
  }
  const std::vector<CoefficientVector> fixed{{1.0, 0.0}, {0.5, 2.0}};
  s.values = {{"random_sets", 100},
              {"max_basis_radius_gap", num(worst)},
              {"example_set", {{1.0, 0.0}, {0.5, 2.0}}},
              {"example_entropy", num(c0_entropy(fixed))}};
  s.pass = exact && worst <= 1e-12 && c0_entropy(fixed) == 2.0;
  s.verdict = s.pass ? "entropy equals max member norm" : "mismatch";
  s.expected = "exact equality with the max member norm; basis radius in c0 equal to 1e-12";
  return s;
}

inline Section gelfand(const TruncationSchedule&) {
  Section s{"gelfand-set", "signed sums of e_k / 2^k in l2 form a compact set of diameter 2 sqrt(sum 4^-k)"};
  std::vector<CoefficientVector> xs;
  std::vector<double> eps;
  double sq = 0.0;
  for (std::size_t k = 1; k <= 10; ++k) {
    const double v = std::ldexp(1.0, -static_cast<int>(k));
    xs.push_back(v * CoefficientVector::unit(10, k - 1));
    eps.push_back(v);
    sq += v * v;
  }
  const GelfandSet g = gelfand_set(xs, NormTag::lp(2));
  const Brick k(BasisModel::standard_lp(2), HalfHeights::finite(CoefficientVector(eps)));
  const double r = truncated_sign_radius(k, 10);
  s.values = {{"points", g.points.size()},
              {"max_norm", num(g.max_norm)},
              {"diameter", num(g.diameter)},
              {"closed_form", num(std::sqrt(sq))},
              {"brick_sign_radius", num(r)}};
  s.pass = g.points.size() == 1024 && std::abs(g.max_norm - std::sqrt(sq)) <= 1e-12 && g.max_norm == r;
  s.verdict = s.pass ? "max norm matches" : "mismatch";
  s.expected = "1024 points, max norm sqrt(sum 4^-k) to 1e-12, equal to the brick's sign radius";
  return s;
}

inline Section weak4(std::size_t atoms) {
  Section s{"weak-fourth-moment-without-strong-second",
            "(6/pi^2) sum n^-2 delta at sqrt(n) e_n has a weak 4th moment but no strong 2nd moment"};
  const DiscreteMeasure mu = make_weak4_measure(atoms);
  const double c = 6.0 / (std::numbers::pi * std::numbers::pi);
  TruncationSchedule ms;
  ms.levels.clear();
  for (std::size_t l = 10; l <= atoms; l *= 10) ms.levels.push_back(l);
  if (ms.levels.empty() || ms.levels.back() != atoms) ms.levels.push_back(atoms);
  const MomentReport w4 = moment(mu, 4.0, MomentMode::weak_along({1.0}), ms);
  const MomentReport w2 = moment(mu, 2.0, MomentMode::weak_along({1.0}), ms);
  const MomentReport s2 = moment(mu, 2.0, MomentMode::strong(), ms);
  const MomentReport hs = hs_diagnostic(mu, ms);
  double h = 0.0;
  double worst = 0.0;
  std::size_t li = 0;
  for (std::size_t n = 1; n <= atoms && li < ms.levels.size(); ++n) {
    h += 1.0 / static_cast<double>(n);
    if (n == ms.levels[li]) worst = std::max(worst, std::abs(s2.partial_sums[li++] - c * h));
  }
  double total = mu.tail_mass();
  for (double w : mu.weights()) total += w;
  s.values = {{"atoms", atoms},
              {"weight_1", num(mu.weights()[0])},
              {"mass_check", num(total - 1.0)},
              {"weak_p4_at_e1", to_json(w4)},
              {"weak_p2_at_e1", to_json(w2)},
              {"strong_p2", to_json(s2)},
              {"strong_p2_max_gap_to_harmonic", num(worst)},
              {"hilbert_schmidt", to_json(hs)}};
  s.pass = w4.verdict == MomentVerdict::ConvergesEvidence && std::abs(*w4.value - c) <= 1e-10 &&
           s2.verdict == MomentVerdict::DivergesEvidence && worst <= 1e-10 &&
           w2.verdict == MomentVerdict::ConvergesEvidence && hs.verdict == MomentVerdict::ConvergesEvidence;
  s.verdict = "weak 4th: " + to_string(w4.verdict) + "; strong 2nd: " + to_string(s2.verdict);
  s.expected = "weak p=4 at e_1 equals 6/pi^2 to 1e-10; strong p=2 sums equal (6/pi^2) H_N and diverge";
  return s;
}

inline Section non_hs(std::size_t atoms, std::uint64_t seed) {
  Section s{"compact-non-hilbert-schmidt-operator",
            "C sum 1/(n ln^2(n+1)) delta at sqrt(n) e_n gives a compact j that is not Hilbert-Schmidt"};
  const DiscreteMeasure mu = make_nonHS_measure(atoms);
  const auto [c_lo, c_hi] = *mu.constant_bracket;
  bool diag_ok = true;
  double worst = 0.0;
  const std::size_t kmax = std::min<std::size_t>(100, atoms);
  for (std::size_t k = 1; k <= kmax; ++k) {
    const CoefficientVector jk = pettis_j(mu, CoefficientVector::unit(atoms, k - 1));
    const double l = std::log(static_cast<double>(k) + 1.0);
    const double lo = c_lo / (l * l);
    const double hi = c_hi / (l * l);
    diag_ok = diag_ok && jk[k - 1] >= lo - 1e-15 && jk[k - 1] <= hi + 1e-15;
    double off = 0.0;
    for (std::size_t i = 0; i < atoms; ++i) {
      if (i != k - 1) off = std::max(off, std::abs(jk[i]));
    }
    diag_ok = diag_ok && off == 0.0;
    worst = std::max(worst, std::abs(jk[k - 1] - mu.tail_model()->c / (l * l)));
  }
  TruncationSchedule ms;
  ms.levels.clear();
  for (std::size_t l = 10; l <= atoms; l *= 10) ms.levels.push_back(l);
  if (ms.levels.empty() || ms.levels.back() != atoms) ms.levels.push_back(atoms);
  const MomentReport hs = hs_diagnostic(mu, ms);
  const JCompactness jc = j_compactness(mu, atoms);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  double asym = 0.0;
  double min_quad = std::numeric_limits<double>::infinity();
  for (int t = 0; t < 100; ++t) {
    std::vector<double> u(atoms), v(atoms);
    for (auto& x : u) x = d(rng);
    for (auto& x : v) x = d(rng);
    const CoefficientVector cu(u), cv(v);
    const CoefficientVector ju = pettis_j(mu, cu), jv = pettis_j(mu, cv);
    double a = 0.0, b = 0.0, q = 0.0;
    for (std::size_t i = 0; i < atoms; ++i) {
      a += ju[i] * cv[i];
      b += cu[i] * jv[i];
      q += ju[i] * cu[i];
    }
    asym = std::max(asym, std::abs(a - b));
    min_quad = std::min(min_quad, q);
  }
  s.values = {{"atoms", atoms},
              {"norming_constant", num(mu.tail_model()->c)},
              {"norming_constant_bracket", {num(c_lo), num(c_hi)}},
              {"diagonal_checked_up_to", kmax},
              {"max_diagonal_gap", num(worst)},
              {"note", "j(e_k) = C e_k / ln^2(k+1); the norming constant C is kept"},
              {"hilbert_schmidt", to_json(hs)},
              {"j_compactness", to_string(jc.verdict)},
              {"max_self_adjointness_gap", num(asym)},
              {"min_quadratic_form", num(min_quad)}};
  s.pass = diag_ok && hs.verdict == MomentVerdict::DivergesEvidence && jc.verdict == CompactnessKind::CompactEvidence &&
           asym <= 1e-12 && min_quad >= 0.0;
  s.verdict = "hilbert-schmidt: " + to_string(hs.verdict) + "; j: " + to_string(jc.verdict);
  s.expected = "j(e_k) within the C bracket for k <= 100; not Hilbert-Schmidt; compact; self-adjoint and positive";
  return s;
}

inline Section solidity() {
  Section s{"solidity-certificates", "unconditional bases and summable half-heights each make a brick solid"};
  struct Case {
    std::string name;
    Brick brick;
    SolidityKind expected;
  };
  const std::vector<Case> cases{
      {"c0, 1", Brick(BasisModel::standard_c0(), HalfHeights(TailRule::constant(1.0))),
       SolidityKind::SolidByUnconditional},
      {"summing, n^-2", Brick(BasisModel::summing_c(), HalfHeights(TailRule::power_law(2.0))),
       SolidityKind::SolidBySummable},
      {"summing, 1/n", Brick(BasisModel::summing_c(), HalfHeights(TailRule::reciprocal())),
       SolidityKind::NoCertificate},
  };
  bool ok = true;
  Json out = Json::array();
  for (const auto& c : cases) {
    const SolidityCertificate cert = solidity_certificate(c.brick, 24);
    ok = ok && cert.kind == c.expected;
    out.push_back({{"brick", c.name}, {"certificate", to_string(cert.kind)}, {"evidence", cert.evidence}});
  }
  s.values = {{"cases", out}};
  s.pass = ok;
  s.verdict = ok ? "certificates as expected" : "certificate mismatch";
  s.expected = "unconditional, summable, none";
  return s;
}

}  // namespace sections

struct RunResult {
  Json report;
  bool pass = false;
};

inline Json header(const RunConfig& cfg) {
  Json h;
  h["tool"] = "bricks";
  h["command"] = cfg.command;
  h["seed"] = cfg.seed;
  h["schedule"] = {{"levels", counts(cfg.schedule.levels)},
                   {"cauchy_tol", num(cfg.schedule.cauchy_tol)},
                   {"divergence_floor", num(cfg.schedule.divergence_floor)}};
  return h;
}

inline Json brick_json(const BrickConfig& b) {
  Json j;
  j["basis"] = b.basis;
  if (b.basis == "blocks") {
    j["block_base"] = b.block_base;
    j["breakpoints"] = counts(b.breakpoints);
    j["weights"] = nums(b.weights);
    j["normalize"] = b.normalize;
  }
  j["tail"] = b.tail;
  if (b.tail == "power_law" || b.tail == "constant") j["tail_param"] = num(b.tail_param);
  j["prefix"] = nums(b.prefix);
  return j;
}

inline std::vector<Section> command_sections(const RunConfig& cfg) {
  const TruncationSchedule& sch = cfg.schedule;
  std::vector<Section> out;
  if (cfg.command == "examples") {
    sch.validate_cap(kDefaultEnumerationCap);
    out.push_back(sections::harmonic_norms());
    out.push_back(sections::extreme_point_unbounded(sch, cfg.patterns, cfg.seed));
    out.push_back(sections::c0_unit_ball(sch, cfg.patterns, cfg.samples, cfg.seed));
    out.push_back(sections::uncompact_brick(sch, cfg.patterns, cfg.seed));
    out.push_back(sections::hilbert_radii(sch, cfg.patterns, cfg.samples, cfg.seed));
    out.push_back(sections::compactness_dichotomy(sch));
    out.push_back(sections::solidity());
    out.push_back(sections::net_soundness(sch, cfg.seed));
    out.push_back(sections::c0_entropy_section(sch, cfg.seed));
    out.push_back(sections::gelfand(sch));
    out.push_back(sections::weak4(10'000));
    out.push_back(sections::non_hs(1000, cfg.seed));
    return out;
  }
  if (cfg.command == "radius") {
    sch.validate_cap(kDefaultEnumerationCap);
    const Brick k = make_brick(cfg.brick, sch.max_level());
    const RadiusReport ur = unconditional_radius(k, sch);
    const RadiusReport er = extreme_radius(k, sch, cfg.patterns, cfg.seed);
    const RadiiComparison rc = radii_coincide(k, sch.max_level(), cfg.samples, cfg.seed);
    Section s{"brick-radii", "extreme, unconditional and absolute radii of the configured brick"};
    s.values = {{"brick", brick_json(cfg.brick)},
                {"unconditional_radius", to_json(ur)},
                {"extreme_radius", to_json(er)},
                {"absolute_radius", num(rc.absolute)},
                {"truncated_radii_coincide", rc.coincide}};
    s.verdict = to_string(ur.verdict);
    s.expected = "truncated radii coincide at the last level";
    s.pass = rc.coincide;
    out.push_back(std::move(s));
    return out;
  }
  if (cfg.command == "compact") {
    sch.validate_cap(kDefaultEnumerationCap);
    const Brick k = make_brick(cfg.brick, sch.max_level());
    const CompactnessVerdict v = brick_compactness(k, sch);
    const SolidityCertificate cert = solidity_certificate(k, sch.max_level());
    Section s{"brick-compactness", "compactness of the configured brick"};
    s.values = {{"brick", brick_json(cfg.brick)},
                {"compactness", to_json(v)},
                {"solidity", {{"certificate", to_string(cert.kind)}, {"evidence", cert.evidence}}}};
    s.verdict = to_string(v.verdict);
    s.expected = "a witness that re-checks when noncompact";
    s.pass = true;
    if (v.witness) {
      s.witness = to_json(*v.witness);
      s.pass = std::abs(recheck_witness(k, *v.witness) - v.witness->value) <= 1e-9;
    }
    out.push_back(std::move(s));
    return out;
  }
  if (cfg.command == "net") {
    sch.validate_cap(kDefaultEnumerationCap);
    BrickConfig bc = cfg.brick;
    if (!cfg.brick_given) {
      bc = BrickConfig{};
      bc.basis = "c0";
      bc.tail = "zero";
      bc.prefix = {1.0, 0.5, 0.25};
    }
    const Brick k = make_brick(bc, std::max(sch.max_level(), cfg.net.level));
    const EpsilonNet net = epsilon_net(k, cfg.net.eps, cfg.net.level, sch, cfg.net.budget);
    bool members = true;
    for (const auto& p : net.points) members = members && contains(k, p);
    Section s{"epsilon-net", "axis-grid eps-net of the configured brick"};
    s.values = {{"brick", brick_json(bc)},
                {"eps", num(cfg.net.eps)},
                {"level", cfg.net.level},
                {"points", net.points.size()},
                {"points_per_axis", counts(net.points_per_axis)},
                {"spacing", num(net.spacing)},
                {"tail_bound", num(net.tail_bound)}};
    if (net.points.size() <= 64) {
      Json pts = Json::array();
      for (const auto& p : net.points) pts.push_back(nums(p.values()));
      s.values["net"] = pts;
    }
    s.verdict = net.points.size() == 1 ? "single-point net" : "grid net";
    s.expected = "every net point is a member of the brick";
    s.pass = members;
    out.push_back(std::move(s));
    return out;
  }
  if (cfg.command == "entropy") {
    std::vector<CoefficientVector> set;
    for (const auto& row : cfg.entropy.set) set.emplace_back(row);
    std::size_t len = set.empty() ? 0 : set.front().size();
    std::vector<BasisModel> bases;
    for (const auto& name : cfg.entropy.bases) bases.push_back(make_basis(name, len));
    const EntropyReport r = entropy_bounds(set, bases, sch);
    Section s{"entropy-bounds", "entropy bounds of the configured set over the configured bases"};
    Json per = Json::object();
    for (const auto& [name, rr] : r.per_basis) per[name] = to_json(rr);
    s.values = {{"set", cfg.entropy.set},
                {"max_member_norm", num(r.max_member_norm)},
                {"entropy_upper", r.entropy_upper ? num(*r.entropy_upper) : Json("inf")},
                {"e0_upper", r.e0_upper ? num(*r.e0_upper) : Json("inf")},
                {"sudakov_lower", r.sudakov_lower ? num(*r.sudakov_lower) : Json("none")},
                {"per_basis", per}};
    if (r.sudakov_sum_of_squares) s.values["sudakov_sum_of_squares"] = num(*r.sudakov_sum_of_squares);
    if (r.exact) {
      s.values["exact"] = num(*r.exact);
      s.values["exact_justification"] = r.exact_justification;
    }
    s.verdict = r.entropy_upper ? "finite upper bound" : "no finite upper bound";
    s.expected = "entropy upper bound at least the largest member norm";
    s.pass = !r.entropy_upper || *r.entropy_upper >= r.max_member_norm - 1e-9;
    out.push_back(std::move(s));
    return out;
  }
  if (cfg.command == "measure") {
    const MeasureConfig& m = cfg.measure;
    DiscreteMeasure mu = m.family == "weak4"   ? make_weak4_measure(m.atoms)
                         : m.family == "nonHS" ? make_nonHS_measure(m.atoms)
                                               : throw InvalidArgument("unknown measure family '" + m.family +
                                                                       "' (expected weak4 or nonHS)");
    TruncationSchedule ms = sch;
    ms.levels = m.levels;
    ms.validate();
    if (m.mode != "weak" && m.mode != "strong") {
      throw InvalidArgument("unknown moment mode '" + m.mode + "' (expected weak or strong)");
    }
    const MomentMode mode =
        m.mode == "weak" ? MomentMode::weak_along(CoefficientVector(m.probe)) : MomentMode::strong();
    const MomentReport mr = moment(mu, m.p, mode, ms);
    const MomentReport hs = hs_diagnostic(mu, ms);
    const JCompactness jc = j_compactness(mu, std::min<std::size_t>(m.atoms, 10));
    Section s{"measure-moments", "moments and the operator j of the configured measure"};
    s.values = {{"family", m.family},
                {"atoms", m.atoms},
                {"tail_mass", num(mu.tail_mass())},
                {"moment", to_json(mr)},
                {"hilbert_schmidt", to_json(hs)},
                {"j_compactness", to_string(jc.verdict)},
                {"j_diagonal_head", nums(jc.diagonal)}};
    if (mu.constant_bracket) {
      s.values["norming_constant"] = num(mu.tail_model()->c);
      s.values["norming_constant_bracket"] = {num(mu.constant_bracket->first), num(mu.constant_bracket->second)};
    }
    s.verdict = to_string(mr.verdict);
    s.expected = "moment partial sums nondecreasing";
    s.pass = std::is_sorted(mr.partial_sums.begin(), mr.partial_sums.end());
    out.push_back(std::move(s));
    return out;
  }
  throw InvalidArgument("unknown command '" + cfg.command +
                        "' (expected examples, radius, compact, entropy, net or measure)");
}

inline RunResult execute(const RunConfig& cfg) {
  cfg.schedule.validate();
  RunResult r;
  r.report = header(cfg);
  Json secs = Json::array();
  r.pass = true;
  for (const Section& s : command_sections(cfg)) {
    r.pass = r.pass && s.pass;
    secs.push_back(s.to_json());
  }
  r.report["sections"] = secs;
  r.report["pass"] = r.pass;
  return r;
}

/// Runs the command, writes the report, and returns the exit status.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const RunResult r = execute(cfg);
    const std::string text = r.report.dump(2) + "\n";
    if (cfg.output_path) {
      std::ofstream f(*cfg.output_path, std::ios::binary);
      if (!f) throw InvalidArgument("cannot open output file '" + *cfg.output_path + "'");
      f << text;
    } else {
      out << text;
    }
    return r.pass ? kOk : kCheckFailed;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kBadConfig;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kInvariantViolated;
  }
}

}  // namespace bricks::cli

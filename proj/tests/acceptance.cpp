// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime limits are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bricks/bricks.hpp"
#include "bricks/cli/run.hpp"
#include "generators.hpp"

using namespace bricks;

namespace {

constexpr double kHarmonicTol = 1e-12;
constexpr double kCauchyStep = 1e-3;
constexpr double kUncompactBound = 2.0 + 1e-9;
constexpr double kUnitNormTol = 1e-12;
constexpr double kCoincideTol = 1e-9;
constexpr double kL2RadiusTol = 1e-3;
constexpr double kVertexSlack = 1e-9;
constexpr double kLn2Witness = 0.8;
constexpr double kNetEps = 0.3;
constexpr double kEntropyTol = 1e-12;
constexpr double kSandwichSlack = 1e-9;
constexpr double kMeasureTol = 1e-10;
constexpr double kOperatorTol = 1e-12;
constexpr double kGelfandTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;
  int failures = 0;

  // keeps the first three messages
  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (++failures > 3) return;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> body;
};

long double harmonic(std::size_t n) {
  long double h = 0.0L;
  for (std::size_t k = n; k >= 1; --k) h += 1.0L / static_cast<long double>(k);
  return h;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Outcome ac1() {
  Outcome o;
  const BasisModel b = BasisModel::summing_c();
  std::vector<double> c;
  for (std::size_t n = 1; n <= 30; ++n) {
    c.push_back(1.0 / static_cast<double>(n));
    const double v = norm(synthesize(b, CoefficientVector(c)), NormTag::sup());
    const double h = static_cast<double>(harmonic(n));
    o.check(std::abs(v - h) <= kHarmonicTol, "n = " + std::to_string(n) + " norm " + fmt(v) + " vs H " + fmt(h));
    if (n == 11) o.check(v > 3.0, "norm at 11 is " + fmt(v));
  }
  return o;
}

Outcome ac2() {
  Outcome o;
  const TruncationSchedule s;
  const Brick k(BasisModel::summing_c(), HalfHeights(TailRule::reciprocal()));
  const RadiusReport er = extreme_radius(k, s);
  const PatternEvidence& alt = er.patterns.at(1);
  o.check(alt.label == "alternating", "pattern 1 is " + alt.label);
  o.check(alt.trend == Trend::Vanishing, "alternating trend " + to_string(alt.trend));
  for (std::size_t i = 1; i < alt.partial_norms.size(); ++i) {
    const double step = std::abs(alt.partial_norms[i] - alt.partial_norms[i - 1]);
    o.check(step < kCauchyStep, "increment " + fmt(step) + " at window " + std::to_string(i));
  }
  o.check(er.existence == std::optional<bool>(true), "no extreme point reported");
  const RadiusReport ur = unconditional_radius(k, s);
  o.check(ur.verdict == VerdictKind::DivergenceEvidence, "unconditional radius " + to_string(ur.verdict));
  return o;
}

Outcome ac3() {
  Outcome o;
  const TruncationSchedule s;
  s.validate_cap(24);
  const BasisModel u = make_uncompact_basis(60);
  const Brick k(u, HalfHeights(TailRule::reciprocal()));
  for (std::size_t n : s.levels) {
    const double r = truncated_sign_radius(k, n);
    o.check(r <= kUncompactBound, "sign radius " + fmt(r) + " at " + std::to_string(n));
  }
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::size_t start = 0;
  for (std::size_t end : u.block_ends()) {
    if (end > 60) break;
    std::vector<double> c(end, 0.0);
    for (std::size_t n = start + 1; n <= end; ++n) c[n - 1] = 1.0 / static_cast<double>(n);
    const CoefficientVector g = synthesize(u, CoefficientVector(c));
    o.check(contains(k, g), "g over block ending " + std::to_string(end) + " is not a member");
    o.check(norm(g, NormTag::sup()) >= 1.0 - kUnitNormTol, "g norm " + fmt(norm(g, NormTag::sup())));
    blocks.emplace_back(start + 1, end);
    start = end;
  }
  o.check(blocks.size() >= 4, "fewer than four blocks");
  const CompactnessVerdict v = brick_compactness(k, s);
  o.check(v.verdict == CompactnessKind::NoncompactEvidence, "verdict " + to_string(v.verdict));
  if (v.witness) {
    const NoncompactWitness& w = *v.witness;
    bool covers = false;
    for (const auto& [lo, hi] : blocks) covers = covers || (lo > w.lo && hi <= w.hi);
    o.check(covers, "witness window does not cover a block");
    o.check(w.value >= 1.0 - kUnitNormTol, "witness value " + fmt(w.value));
    o.check(std::abs(recheck_witness(k, w) - w.value) <= kUnitNormTol, "witness does not re-check");
  } else {
    o.check(false, "no witness");
  }
  return o;
}

Outcome ac4() {
  Outcome o;
  const TruncationSchedule s;
  const Brick k(BasisModel::standard_c0(), HalfHeights(TailRule::constant(1.0)));
  for (std::size_t n : s.levels) {
    const double a = absolute_radius(k, n, 1000, 0);
    o.check(a == 1.0, "absolute radius " + fmt(a) + " at " + std::to_string(n));
  }
  o.check(unconditional_radius(k, s).verdict == VerdictKind::DivergenceEvidence, "unconditional radius not divergent");
  o.check(extreme_radius(k, s).verdict == VerdictKind::DivergenceEvidence, "extreme radius not divergent");
  return o;
}

// sqrt(sum eps_n^2): direct sum to 10^6 plus the integral of the power-law tail.
double l2_radius_oracle(const HalfHeights& h, double alpha) {
  constexpr std::size_t far = 1'000'000;
  long double s = 0.0L;
  for (std::size_t n = far; n >= 1; --n) {
    const long double e = h(n);
    s += e * e;
  }
  const double q = 2.0 * alpha;
  s += std::pow(static_cast<long double>(far) + 0.5L, 1.0L - q) / (q - 1.0);
  return std::sqrt(static_cast<double>(s));
}

Outcome ac5() {
  Outcome o;
  gen::Rng rng(5005);
  for (int t = 0; t < 50; ++t) {
    const double alpha = rng.uniform(1.1, 2.5);
    const HalfHeights h(rng.heights(rng.index(0, 8)), TailRule::power_law(alpha));
    const Brick k(BasisModel::standard_lp(2), h);
    const std::string tag = "brick " + std::to_string(t);
    const CompactnessVerdict cv = brick_compactness(k, {});
    o.check(cv.verdict == CompactnessKind::CompactEvidence, tag + " not compact-certified");
    const RadiiComparison c = radii_coincide(k, 12, 200, static_cast<std::uint64_t>(t));
    o.check(std::abs(c.extreme - c.unconditional) <= kCoincideTol, tag + " extreme vs unconditional");
    o.check(std::abs(c.absolute - c.unconditional) <= kCoincideTol, tag + " absolute vs unconditional");
    const RadiusReport r = unconditional_radius(k, {});
    if (r.verdict != VerdictKind::FiniteEstimate) {
      o.check(false, tag + " verdict " + to_string(r.verdict));
      continue;
    }
    const double oracle = l2_radius_oracle(h, alpha);
    o.check(std::abs(*r.value - oracle) <= kL2RadiusTol, tag + " estimate " + fmt(*r.value) + " vs " + fmt(oracle));
  }
  return o;
}

Outcome ac6() {
  Outcome o;
  gen::Rng rng(6006);
  for (const BasisModel& b : gen::bases(12)) {
    for (std::size_t n : {3u, 7u, 12u}) {
      const Brick k(b, HalfHeights::finite(rng.heights(n)));
      const std::string tag = b.name() + " N = " + std::to_string(n);
      Eigen::MatrixXd cols = b.synth_matrix(n);
      for (std::size_t j = 0; j < n; ++j) cols.col(static_cast<Eigen::Index>(j)) *= k.heights()(j + 1);
      const double naive = sign_maximum_naive(cols, b.norm_tag()).value;
      const double gray = sign_maximum_gray(cols, b.norm_tag()).value;
      o.check(naive == gray, tag + " gray " + fmt(gray) + " vs naive " + fmt(naive));
      double worst = 0.0;
      for (int t = 0; t < 10'000; ++t) {
        std::vector<double> a(n);
        for (std::size_t j = 0; j < n; ++j) a[j] = rng.uniform(-1.0, 1.0) * k.heights()(j + 1);
        worst = std::max(worst, norm(synthesize(b, CoefficientVector(a)), b.norm_tag()));
      }
      o.check(worst <= naive + kVertexSlack, tag + " box point " + fmt(worst) + " beats vertex " + fmt(naive));
    }
  }
  return o;
}

Outcome ac7() {
  Outcome o;
  const TruncationSchedule s;
  const auto verdict = [&](const BasisModel& b, const TailRule& r) {
    return brick_compactness(Brick(b, HalfHeights(r)), s);
  };
  o.check(verdict(BasisModel::standard_lp(2), TailRule::reciprocal()).verdict == CompactnessKind::CompactEvidence,
          "l2, 1/n not compact");
  const CompactnessVerdict sq = verdict(BasisModel::standard_lp(2), TailRule::reciprocal_sqrt());
  o.check(sq.verdict == CompactnessKind::NoncompactEvidence, "l2, 1/sqrt(n) not noncompact");
  if (sq.witness) {
    long double h = 0.0L;
    for (std::size_t n = sq.witness->hi; n > sq.witness->lo; --n) h += 1.0L / static_cast<long double>(n);
    const double oracle = std::sqrt(static_cast<double>(h));
    o.check(sq.witness->value >= kLn2Witness, "window tail " + fmt(sq.witness->value));
    o.check(std::abs(sq.witness->value - oracle) <= 1e-12, "window tail vs harmonic oracle " + fmt(oracle));
  } else {
    o.check(false, "no witness for l2, 1/sqrt(n)");
  }
  o.check(verdict(BasisModel::standard_c0(), TailRule::reciprocal()).verdict == CompactnessKind::CompactEvidence,
          "c0, 1/n not compact");
  o.check(verdict(BasisModel::standard_c0(), TailRule::constant(1.0)).verdict == CompactnessKind::NoncompactEvidence,
          "c0, 1 not noncompact");
  return o;
}

Outcome ac8() {
  Outcome o;
  const Brick k(BasisModel::standard_c0(), HalfHeights::finite({1.0, 0.5, 0.25}));
  const EpsilonNet net = epsilon_net(k, kNetEps, 3);
  for (const auto& p : net.points) o.check(contains(k, p), "net point outside the brick");
  gen::Rng rng(8008);
  double worst = 0.0;
  for (int t = 0; t < 10'000; ++t) {
    const CoefficientVector x{rng.uniform(-1.0, 1.0), rng.uniform(-0.5, 0.5), rng.uniform(-0.25, 0.25)};
    o.check(contains(k, x), "sample outside the brick");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : net.points) best = std::min(best, norm(x - p, NormTag::sup()));
    worst = std::max(worst, best);
  }
  o.check(worst <= kNetEps, "max distance to net " + fmt(worst));
  return o;
}

std::vector<CoefficientVector> random_set(gen::Rng& rng, std::size_t size, std::size_t n) {
  std::vector<CoefficientVector> set;
  for (std::size_t i = 0; i < size; ++i) set.push_back(rng.vector(n, -3.0, 3.0));
  return set;
}

Outcome ac9() {
  Outcome o;
  gen::Rng rng(9009);
  for (int t = 0; t < 100; ++t) {
    const auto set = random_set(rng, rng.index(1, 8), rng.index(1, 10));
    double m = 0.0;
    for (const auto& x : set) {
      for (double v : x) m = std::max(m, std::abs(v));
    }
    const double e = c0_entropy(set);
    o.check(e == m, "entropy " + fmt(e) + " vs max norm " + fmt(m));
    const RadiusReport r = basis_radius(set, BasisModel::standard_c0(), {});
    o.check(r.value && std::abs(*r.value - m) <= kEntropyTol, "basis radius differs from max norm");
  }
  return o;
}

Outcome ac10() {
  Outcome o;
  gen::Rng rng(10010);
  const std::vector<BasisModel> sup_bases{BasisModel::standard_c0(), BasisModel::summing_c(),
                                          make_uncompact_basis(10)};
  std::vector<std::vector<CoefficientVector>> fixtures{{{1.0, 0.0}, {0.5, 2.0}}};
  for (int t = 0; t < 30; ++t) fixtures.push_back(random_set(rng, rng.index(1, 6), rng.index(1, 10)));
  for (const auto& set : fixtures) {
    const EntropyReport e = entropy_bounds(set, sup_bases, {});
    o.check(e.entropy_upper && *e.entropy_upper >= e.max_member_norm - kSandwichSlack, "sup-norm sandwich fails");
  }
  for (int t = 0; t < 10; ++t) {
    const auto set = random_set(rng, rng.index(1, 6), rng.index(1, 10));
    const EntropyReport e = entropy_bounds(set, {BasisModel::standard_lp(2)}, {});
    o.check(e.entropy_upper && *e.entropy_upper >= e.max_member_norm - kSandwichSlack, "l2 sandwich fails");
  }
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = rng.index(1, 10);
    const auto big = random_set(rng, rng.index(2, 8), n);
    const std::vector<CoefficientVector> small(big.begin(), big.begin() + 1 + rng.index(0, big.size() - 2));
    for (const BasisModel& b : sup_bases) {
      const ClearanceProfile gs = clearances(small, b, n);
      const ClearanceProfile gb = clearances(big, b, n);
      for (std::size_t i = 0; i < n; ++i) o.check(gs.values[i] <= gb.values[i], "clearance not monotone");
      const RadiusReport rs = basis_radius(small, b, {});
      const RadiusReport rb = basis_radius(big, b, {});
      o.check(rs.value && rb.value && *rs.value <= *rb.value + kEntropyTol, "basis radius not monotone");
    }
  }
  return o;
}

Outcome ac11() {
  Outcome o;
  const double c = 6.0 / (std::numbers::pi * std::numbers::pi);
  const DiscreteMeasure w4 = make_weak4_measure(10'000);
  TruncationSchedule one;
  one.levels = {10};
  const MomentReport weak = moment(w4, 4.0, MomentMode::weak_along(CoefficientVector{1.0}), one);
  o.check(weak.verdict == MomentVerdict::ConvergesEvidence && weak.value && std::abs(*weak.value - c) <= kMeasureTol,
          "weak p = 4 moment at e_1");
  TruncationSchedule all;
  all.levels.resize(10'000);
  for (std::size_t n = 1; n <= 10'000; ++n) all.levels[n - 1] = n;
  const MomentReport strong = moment(w4, 2.0, MomentMode::strong(), all);
  o.check(strong.verdict == MomentVerdict::DivergesEvidence, "strong p = 2 verdict " + to_string(strong.verdict));
  long double h = 0.0L;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 10'000; ++n) {
    h += 1.0L / static_cast<long double>(n);
    worst = std::max(worst, std::abs(strong.partial_sums[n - 1] - c * static_cast<double>(h)));
  }
  o.check(worst <= kMeasureTol, "strong p = 2 gap to (6/pi^2) H_N " + fmt(worst));

  const DiscreteMeasure nh = make_nonHS_measure(10'000);
  const auto [lo, hi] = *nh.constant_bracket;
  const double width = hi - lo;
  for (std::size_t k = 1; k <= 100; ++k) {
    const CoefficientVector jk = pettis_j(nh, CoefficientVector::unit(nh.dimension(), k - 1));
    const double l = std::log(static_cast<double>(k) + 1.0);
    const double expected = nh.tail_model()->c / (l * l);
    o.check(std::abs(jk[k - 1] - expected) <= width, "j(e_" + std::to_string(k) + ") off the bracket");
    o.check(norm(jk, NormTag::lp(2)) == jk[k - 1], "j(e_" + std::to_string(k) + ") not diagonal");
  }
  TruncationSchedule hs_levels;
  hs_levels.levels = {10, 100, 1000, 10'000};
  o.check(hs_diagnostic(nh, hs_levels).verdict == MomentVerdict::DivergesEvidence, "hilbert-schmidt not divergent");
  o.check(j_compactness(nh, 100).verdict == CompactnessKind::CompactEvidence, "j not compact");

  gen::Rng rng(11011);
  const auto dot = [](const CoefficientVector& a, const CoefficientVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  const DiscreteMeasure small = make_nonHS_measure(200);
  for (int t = 0; t < 100; ++t) {
    const CoefficientVector u = rng.vector(200);
    const CoefficientVector v = rng.vector(200);
    const CoefficientVector ju = pettis_j(small, u);
    o.check(std::abs(dot(ju, v) - dot(u, pettis_j(small, v))) <= kOperatorTol, "j not self-adjoint");
    o.check(dot(ju, u) >= -kOperatorTol, "j not positive");
  }
  return o;
}

Outcome ac12() {
  Outcome o;
  std::vector<CoefficientVector> xs;
  std::vector<double> eps;
  long double sq = 0.0L;
  for (std::size_t k = 1; k <= 10; ++k) {
    const double v = std::ldexp(1.0, -static_cast<int>(k));
    xs.push_back(v * CoefficientVector::unit(10, k - 1));
    eps.push_back(v);
    sq += static_cast<long double>(v) * v;
  }
  const GelfandSet g = gelfand_set(xs, NormTag::lp(2));
  o.check(g.points.size() == 1024, "point count " + std::to_string(g.points.size()));
  const double closed = std::sqrt(static_cast<double>(sq));
  o.check(std::abs(g.max_norm - closed) <= kGelfandTol, "max norm " + fmt(g.max_norm) + " vs " + fmt(closed));
  const Brick k(BasisModel::standard_lp(2), HalfHeights::finite(CoefficientVector(eps)));
  o.check(g.max_norm == truncated_sign_radius(k, 10), "max norm differs from the brick sign radius");
  return o;
}

Outcome ac13() {
  Outcome o;
  cli::RunConfig cfg;
  cfg.command = "examples";
  cfg.seed = 0;
  std::ostringstream a, b, err;
  const int ra = cli::run(cfg, a, err);
  const int rb = cli::run(cfg, b, err);
  o.check(ra == 0 && rb == 0, "exit status " + std::to_string(ra) + ", " + std::to_string(rb));
  o.check(a.str() == b.str(), "reports differ");
  o.check(!a.str().empty(), "empty report");
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "harmonic unboundedness in the summing basis", 1.0, ac1},
      {2, "extreme point with unbounded brick", 5.0, ac2},
      {3, "uncompact block brick", 10.0, ac3},
      {4, "unit ball of c0", 5.0, ac4},
      {5, "radii coincidence on compact l2 bricks", 0.0, ac5},
      {6, "vertex maximality", 0.0, ac6},
      {7, "compactness dichotomy", 0.0, ac7},
      {8, "eps-net soundness", 0.0, ac8},
      {9, "c0 entropy", 0.0, ac9},
      {10, "entropy sandwich and monotonicity", 0.0, ac10},
      {11, "measures", 10.0, ac11},
      {12, "gelfand enumeration", 0.0, ac12},
      {13, "cli determinism", 0.0, ac13},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.pass = false;
      if (!o.detail.empty()) o.detail += "; ";
      o.detail += "runtime " + fmt(secs) + " s over " + fmt(c.time_limit) + " s";
    }
    std::printf("[%s] AC-%d %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

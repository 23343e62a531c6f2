#include <gtest/gtest.h>

#include <cmath>

#include "bricks/brick.hpp"
#include "bricks/schedule.hpp"
#include "generators.hpp"

using namespace bricks;

TEST(TailRule, values_and_validation) {
  EXPECT_EQ(0.0, TailRule::zero()(7));
  EXPECT_EQ(0.25, TailRule::reciprocal()(4));
  EXPECT_EQ(0.5, TailRule::reciprocal_sqrt()(4));
  EXPECT_EQ(0.125, TailRule::power_law(1.5)(4));
  EXPECT_EQ(2.0, TailRule::constant(2.0)(100));
  EXPECT_THROW(TailRule::power_law(-1.0), InvalidArgument);
  EXPECT_THROW(TailRule::constant(-0.5), InvalidArgument);
  const TailRule bad = TailRule::custom([](std::size_t n) { return n == 3 ? -1.0 : 1.0; }, "bad");
  EXPECT_EQ(1.0, bad(2));
  EXPECT_THROW(bad(3), InvalidArgument);
}

TEST(HalfHeights, prefix_then_tail) {
  const HalfHeights h(CoefficientVector{5.0, 6.0}, TailRule::reciprocal());
  EXPECT_EQ(5.0, h(1));
  EXPECT_EQ(6.0, h(2));
  EXPECT_EQ(1.0 / 3.0, h(3));
  EXPECT_THROW(h(0), InvalidArgument);
  EXPECT_EQ((CoefficientVector{5.0, 6.0, 1.0 / 3.0}), h.first(3));
}

TEST(HalfHeights, analytic_queries) {
  EXPECT_EQ(std::optional<bool>(false), HalfHeights(TailRule::reciprocal()).summable(1.0));
  EXPECT_EQ(std::optional<bool>(true), HalfHeights(TailRule::reciprocal()).summable(2.0));
  EXPECT_EQ(std::optional<bool>(false), HalfHeights(TailRule::reciprocal_sqrt()).summable(2.0));
  EXPECT_EQ(std::optional<bool>(false), HalfHeights(TailRule::constant(1.0)).vanishing());
  EXPECT_EQ(std::optional<bool>(true), HalfHeights::finite({1.0}).summable(1.0));
  EXPECT_FALSE(HalfHeights(TailRule::custom([](std::size_t) { return 1.0; }, "one")).summable(1.0).has_value());
  EXPECT_TRUE(HalfHeights::finite({1.0, 2.0}).zero_beyond(2));
  EXPECT_FALSE(HalfHeights::finite({1.0, 2.0}).zero_beyond(1));
}

TEST(HalfHeights, tail_sums_bracket_direct_sums) {
  // sum_{n > L} n^-s against a long direct sum plus its integral remainder
  for (double alpha : {1.0, 1.5, 2.0}) {
    for (double q : {1.5, 2.0}) {
      if (q * alpha <= 1.0) continue;
      const HalfHeights h(TailRule::power_law(alpha));
      for (std::size_t level : {0u, 4u, 24u}) {
        const double s = q * alpha;
        long double direct = 0.0L;
        const std::size_t far = 200'000;
        for (std::size_t n = far; n > level; --n) direct += std::pow(static_cast<long double>(n), -s);
        direct += std::pow(static_cast<long double>(far) + 0.5L, 1.0L - s) / (s - 1.0);
        const double est = *h.tail_power_sum(level, q);
        const double upper = *h.tail_power_sum_upper(level, q);
        EXPECT_GE(upper, static_cast<double>(direct) - 1e-12);
        EXPECT_NEAR(static_cast<double>(direct), est, 1e-10 * static_cast<double>(direct))
            << "alpha " << alpha << " q " << q << " level " << level;
      }
    }
  }
  EXPECT_TRUE(std::isinf(*HalfHeights(TailRule::reciprocal()).tail_power_sum(10, 1.0)));
  EXPECT_EQ(0.25 + 1.0 / 16.0, *HalfHeights::finite({1.0, 0.5, 0.25}).tail_power_sum(1, 2.0));
  EXPECT_EQ(0.5, *HalfHeights::finite({1.0, 0.5, 0.25}).tail_sup(1));
  EXPECT_EQ(1.0 / 11.0, *HalfHeights(TailRule::reciprocal()).tail_sup(10));
}

TEST(Brick, membership_and_extreme_points) {
  const Brick k(BasisModel::summing_c(), HalfHeights::finite({1.0, 0.5, 0.25}));
  const CoefficientVector x = extreme_point(k, SignPattern({1, -1, 1}));
  EXPECT_EQ((CoefficientVector{1.0, 0.5, 0.75}), x);
  EXPECT_TRUE(contains(k, x));
  EXPECT_TRUE(is_extreme(k, x));
  EXPECT_TRUE(contains(k, 0.5 * x));
  EXPECT_FALSE(is_extreme(k, 0.5 * x));
  EXPECT_FALSE(contains(k, 1.01 * x));
  EXPECT_FALSE(contains(k, CoefficientVector{0.0, 0.0, 0.0, 0.1}));
}

TEST(BrickProperties, random_extreme_points_are_members) {
  gen::Rng rng(5);
  for (const BasisModel& b : gen::bases(10)) {
    for (int t = 0; t < 40; ++t) {
      const std::size_t n = rng.index(1, 10);
      const Brick k(b, HalfHeights::finite(rng.heights(n)));
      const SignPattern theta = SignPattern::from_bits(n, rng.bits());
      const CoefficientVector x = extreme_point(k, theta);
      EXPECT_TRUE(contains(k, x)) << b.name();
      EXPECT_TRUE(is_extreme(k, x)) << b.name();
      // shrinking one active coordinate leaves the brick's vertex set
      std::vector<double> c(analyze(k.basis(), x).values());
      for (std::size_t i = 0; i < n; ++i) {
        if (c[i] != 0.0) {
          c[i] *= 0.5;
          const CoefficientVector y = synthesize(k.basis(), CoefficientVector(c));
          EXPECT_TRUE(contains(k, y));
          EXPECT_FALSE(is_extreme(k, y));
          break;
        }
      }
    }
  }
}

TEST(Brick, unnormalized_basis_rescales_heights) {
  const BasisModel raw = block_basis(BasisModel::standard_c0(), {{0, 1, 2}, {4.0, 2.0}}, false);
  const Brick k(raw, HalfHeights::finite({1.0, 1.0}));
  EXPECT_TRUE(k.basis().flags().normalized);
  EXPECT_EQ((CoefficientVector{4.0, 2.0}), k.half_heights(2));
  // the same set: x = 1 * u_1 + 1 * u_2 is a vertex either way
  EXPECT_TRUE(is_extreme(k, CoefficientVector{4.0, 2.0}));
}

TEST(Solidity, certificates) {
  EXPECT_EQ(SolidityKind::SolidByUnconditional,
            solidity_certificate(Brick(BasisModel::standard_c0(), HalfHeights(TailRule::constant(1.0))), 10).kind);
  const SolidityCertificate s =
      solidity_certificate(Brick(BasisModel::summing_c(), HalfHeights(TailRule::power_law(2.0))), 4);
  EXPECT_EQ(SolidityKind::SolidBySummable, s.kind);
  EXPECT_NEAR(1.0 + 0.25 + 1.0 / 9.0 + 1.0 / 16.0, *s.partial_sum, 1e-15);
  EXPECT_EQ(SolidityKind::NoCertificate,
            solidity_certificate(Brick(BasisModel::summing_c(), HalfHeights(TailRule::reciprocal())), 10).kind);
  const HalfHeights geometric(
      TailRule::custom([](std::size_t n) { return std::pow(0.5, static_cast<double>(n)); }, "2^-n"));
  EXPECT_EQ(SolidityKind::SolidBySummable, solidity_certificate(Brick(BasisModel::summing_c(), geometric), 8).kind);
}

TEST(Schedule, validation) {
  TruncationSchedule s;
  EXPECT_NO_THROW(s.validate_cap(24));
  EXPECT_THROW(s.validate_cap(20), CapExceeded);
  s.levels = {4, 4};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.levels = {};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s.levels = {0, 4};
  EXPECT_THROW(s.validate(), InvalidArgument);
  s = {};
  s.cauchy_tol = 0.0;
  EXPECT_THROW(s.validate(), InvalidArgument);
}

TEST(Schedule, windows) {
  using W = std::vector<std::pair<std::size_t, std::size_t>>;
  EXPECT_EQ((W{{4, 8}, {8, 16}, {12, 24}}), schedule_windows(TruncationSchedule{}));
  TruncationSchedule s;
  s.levels = {10, 15, 18};
  EXPECT_EQ((W{{10, 15}, {15, 18}}), schedule_windows(s));
}

TEST(Trend, classification) {
  const std::vector<std::size_t> pos{4, 8, 16, 32};
  EXPECT_EQ(Trend::Vanishing, classify_trend(pos, std::vector<double>{1.0, 0.5, 0.25, 0.125}, 1e-6, 1e-3));
  EXPECT_EQ(Trend::Persistent, classify_trend(pos, std::vector<double>{0.8, 0.81, 0.8, 0.82}, 1e-6, 1e-3));
  EXPECT_EQ(Trend::Vanishing, classify_trend(pos, std::vector<double>{1.0, 1.0, 1.0, 0.0}, 1e-6, 1e-3));
  EXPECT_EQ(Trend::Unclear, classify_trend(pos, std::vector<double>{1.0, 0.9, 0.8, 0.75}, 1e-6, 1e-3));
  EXPECT_EQ(Trend::Unclear, classify_trend(pos, std::vector<double>{1e-4, 1e-4, 1e-4, 1e-4}, 1e-6, 1e-3));
  EXPECT_NEAR(1.0, decay_exponent(pos, std::vector<double>{1.0, 0.5, 0.25, 0.125}), 1e-12);
}

#include <gtest/gtest.h>

#include <cmath>

#include "bricks/basis.hpp"
#include "bricks/operator_norms.hpp"
#include "generators.hpp"

using namespace bricks;

namespace {

long double harmonic(std::size_t n) {
  long double h = 0.0L;
  for (std::size_t k = n; k >= 1; --k) h += 1.0L / static_cast<long double>(k);
  return h;
}

// Sup-norm of x -> S diag(theta) A x, built without the library's matrices.
// `restart[i]` marks coordinates where the running sum starts over.
double sign_operator_sup(const std::vector<bool>& restart, const std::vector<int>& theta) {
  const std::size_t n = theta.size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // coordinate i = sum over k <= i in i's run of theta_k (x_k - x_{k-1})
    std::size_t start = i;
    while (!restart[start]) --start;
    std::vector<double> row(n, 0.0);
    for (std::size_t k = start; k <= i; ++k) {
      row[k] += theta[k];
      if (k > start) row[k - 1] -= theta[k];
    }
    double s = 0.0;
    for (double r : row) s += std::abs(r);
    best = std::max(best, s);
  }
  return best;
}

double brute_unconditional(const std::vector<bool>& restart) {
  const std::size_t n = restart.size();
  double best = 0.0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    std::vector<int> theta(n);
    for (std::size_t k = 0; k < n; ++k) theta[k] = (bits >> k) & 1U ? -1 : 1;
    best = std::max(best, sign_operator_sup(restart, theta));
  }
  return best;
}

}  // namespace

TEST(SummingBasis, harmonic_norms) {
  const BasisModel b = BasisModel::summing_c();
  std::vector<double> c;
  for (std::size_t n = 1; n <= 30; ++n) {
    c.push_back(1.0 / static_cast<double>(n));
    const double v = norm(synthesize(b, CoefficientVector(c)), NormTag::sup());
    EXPECT_NEAR(static_cast<double>(harmonic(n)), v, 1e-12) << "n = " << n;
  }
  const double h11 = norm(synthesize(b, CoefficientVector(std::vector<double>(c.begin(), c.begin() + 11))),
                          NormTag::sup());
  EXPECT_GT(h11, 3.0);
  EXPECT_NEAR(3.0199, h11, 1e-4);
  EXPECT_NEAR(25.0 / 12.0, static_cast<double>(harmonic(4)), 1e-15);
}

TEST(SummingBasis, coefficients_are_differences) {
  const BasisModel b = BasisModel::summing_c();
  const CoefficientVector a = analyze(b, CoefficientVector{1.0, 3.0, 2.0});
  EXPECT_EQ((CoefficientVector{1.0, 2.0, -1.0}), a);
}

TEST(SummingBasis, unconditional_constant_matches_brute_force) {
  const BasisModel b = BasisModel::summing_c();
  for (std::size_t n = 1; n <= 10; ++n) {
    std::vector<bool> restart(n, false);
    restart[0] = true;
    const double brute = brute_unconditional(restart);
    EXPECT_DOUBLE_EQ(brute, unconditional_constant(b, n)) << "n = " << n;
    EXPECT_DOUBLE_EQ(2.0 * static_cast<double>(n) - 1.0, brute);
  }
  EXPECT_EQ(7.0, unconditional_constant(b, 4));
  EXPECT_NEAR(1.0, basis_constant(b, 12), 1e-12);
}

TEST(UncompactBasis, harmonic_block_ends) {
  const auto ends = harmonic_block_ends(100);
  ASSERT_GE(ends.size(), 5u);
  EXPECT_EQ(2u, ends[0]);
  EXPECT_EQ(7u, ends[1]);
  EXPECT_EQ(20u, ends[2]);
  EXPECT_EQ(56u, ends[3]);
  for (std::size_t k = 1; k < ends.size(); ++k) {
    double sum = 0.0;
    for (std::size_t n = ends[k - 1] + 1; n <= ends[k]; ++n) sum += 1.0 / static_cast<double>(n);
    EXPECT_GE(sum, 1.0);
    EXPECT_LE(sum, 2.0);
    EXPECT_LT(sum - 1.0 / static_cast<double>(ends[k]), 1.0);
  }
}

TEST(UncompactBasis, constants_at_ten) {
  const BasisModel u = make_uncompact_basis(10);
  std::vector<bool> restart(10, false);
  restart[0] = restart[2] = restart[7] = true;
  const double brute = brute_unconditional(restart);
  EXPECT_DOUBLE_EQ(brute, unconditional_constant(u, 10));
  EXPECT_EQ(9.0, brute);
  EXPECT_NEAR(1.0, basis_constant(u, 10), 1e-12);
}

TEST(UncompactBasis, vectors_are_block_tails) {
  const BasisModel u = make_uncompact_basis(10);
  const Eigen::MatrixXd s = u.synth_matrix(10);
  // f_4 lives in block {3..7}: ones at coordinates 4..7
  for (Eigen::Index i = 0; i < 10; ++i) EXPECT_EQ(i >= 3 && i <= 6 ? 1.0 : 0.0, s(i, 3));
  for (std::size_t j = 1; j <= 10; ++j) EXPECT_EQ(1.0, u.column_norm(j));
}

TEST(BasisProperties, analysis_inverts_synthesis) {
  for (const BasisModel& b : gen::bases(12)) {
    for (std::size_t n = 1; n <= 12; ++n) {
      const Eigen::MatrixXd prod = b.analysis_matrix(n) * b.synth_matrix(n);
      EXPECT_LE((prod - Eigen::MatrixXd::Identity(prod.rows(), prod.cols())).cwiseAbs().maxCoeff(), 1e-12)
          << b.name() << " n = " << n;
    }
  }
}

TEST(BasisProperties, round_trip_random_coefficients) {
  gen::Rng rng(3);
  for (const BasisModel& b : gen::bases(12)) {
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = rng.index(1, 12);
      const CoefficientVector a = rng.vector(n);
      EXPECT_LE(max_abs_difference(a, analyze(b, synthesize(b, a))), 1e-12) << b.name();
    }
  }
}

TEST(BasisProperties, normalized_columns) {
  for (const BasisModel& b : gen::bases(10)) {
    for (std::size_t j = 1; j <= 10; ++j) EXPECT_NEAR(1.0, b.column_norm(j), 1e-12) << b.name();
  }
}

TEST(BasisProperties, constants_at_least_one_and_ordered) {
  for (const BasisModel& b : gen::bases(8)) {
    const double k = basis_constant(b, 8);
    const double m = unconditional_constant(b, 8);
    EXPECT_GE(k, 1.0 - 1e-9) << b.name();
    EXPECT_GE(m, 1.0 - 1e-9) << b.name();
  }
}

TEST(BlockBasis, l2_blocks_are_isometric) {
  const BasisModel b = block_basis(BasisModel::standard_lp(2), {{0, 2, 4}, {1.0, 2.0, 1.0, -1.0}});
  EXPECT_TRUE(b.coefficient_isometry());
  EXPECT_EQ(2u, *b.max_truncation());
  EXPECT_EQ(4u, b.ambient_dim(2));
  const CoefficientVector x = synthesize(b, CoefficientVector{1.0, 0.0});
  EXPECT_NEAR(1.0 / std::sqrt(5.0), x[0], 1e-15);
  EXPECT_NEAR(2.0 / std::sqrt(5.0), x[1], 1e-15);
  EXPECT_THROW(b.synth_matrix(3), InvalidArgument);
  EXPECT_EQ(2u, *b.truncation_for_ambient(4));
  EXPECT_FALSE(b.truncation_for_ambient(3).has_value());
}

TEST(BlockBasis, unnormalized_then_normalized) {
  const BasisModel raw =
      block_basis(BasisModel::standard_c0(), {{0, 2, 5}, {3.0, -1.0, 0.5, 0.5, 2.0}}, false);
  EXPECT_FALSE(raw.flags().normalized);
  EXPECT_EQ(3.0, raw.column_norm(1));
  EXPECT_EQ(2.0, raw.column_norm(2));
  const BasisModel b = raw.normalized();
  EXPECT_NEAR(1.0, b.column_norm(1), 1e-15);
  EXPECT_NEAR(1.0, b.column_norm(2), 1e-15);
}

TEST(BlockBasis, rejects_bad_specs) {
  EXPECT_THROW(block_basis(BasisModel::standard_c0(), {{0, 2, 2}, {1.0, 1.0}}), InvalidArgument);
  EXPECT_THROW(block_basis(BasisModel::standard_c0(), {{1, 3}, {1.0, 1.0, 1.0}}), InvalidArgument);
  EXPECT_THROW(block_basis(BasisModel::standard_c0(), {{0, 2}, {0.0, 0.0}}), InvalidArgument);
  EXPECT_THROW(block_basis(BasisModel::standard_c0(), {{0, 2}, {1.0}}), InvalidArgument);
}

TEST(BlockBasis, sup_projection_norm_bounds_samples) {
  // Rectangular non-isometric span: every sampled ratio stays under the constant.
  const BasisModel b = gen::bases(6).back();
  ASSERT_FALSE(b.coefficient_isometry());
  const double k = basis_constant(b, 6);
  gen::Rng rng(4);
  for (int t = 0; t < 2000; ++t) {
    const CoefficientVector a = rng.vector(6);
    const double whole = norm(synthesize(b, a), NormTag::sup());
    for (std::size_t n = 1; n <= 6; ++n) {
      std::vector<double> head(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n));
      head.resize(6, 0.0);
      EXPECT_LE(norm(synthesize(b, CoefficientVector(head)), NormTag::sup()), k * whole + 1e-9);
    }
  }
}

TEST(OperatorNorms, exact_per_tag) {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, -2.0, 3.0, 4.0;
  EXPECT_EQ(6.0, matrix_operator_norm(m, NormTag::lp(1)));
  EXPECT_EQ(7.0, matrix_operator_norm(m, NormTag::sup()));
  // largest singular value of [[1,-2],[3,4]]: sqrt((30 + sqrt(500)) / 2)
  EXPECT_NEAR(std::sqrt((30.0 + std::sqrt(500.0)) / 2.0), matrix_operator_norm(m, NormTag::lp(2)), 1e-12);
}

TEST(OperatorNorms, enumeration_cap) {
  EXPECT_THROW(unconditional_constant(BasisModel::summing_c(), 25), CapExceeded);
  EXPECT_EQ(1.0, unconditional_constant(BasisModel::standard_c0(), 40, 64));
}

TEST(SignPattern, constructors) {
  EXPECT_EQ((std::vector<int>{1, -1, 1, -1}), SignPattern::alternating(4).signs());
  EXPECT_EQ((std::vector<int>{1, 1, 1}), SignPattern::all_plus(3).signs());
  EXPECT_EQ((std::vector<int>{-1, 1, -1}), SignPattern::from_bits(3, 0b101).signs());
  EXPECT_THROW(SignPattern(std::vector<int>{1, 0}), InvalidArgument);
}

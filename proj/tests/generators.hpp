#pragma once

// Seeded random inputs for the property tests.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "bricks/bricks.hpp"

namespace gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
  }
  std::uint64_t bits() { return eng_(); }

  bricks::CoefficientVector vector(std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return bricks::CoefficientVector(std::move(v));
  }

  Eigen::MatrixXd matrix(std::size_t rows, std::size_t cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = uniform(-1.0, 1.0);
    }
    return m;
  }

  /// Positive half-heights with a few exact zeros mixed in.
  bricks::CoefficientVector heights(std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = index(0, 9) == 0 ? 0.0 : uniform(0.05, 1.0);
    return bricks::CoefficientVector(std::move(v));
  }

 private:
  std::mt19937_64 eng_;
};

inline std::vector<bricks::NormTag> tags() {
  return {bricks::NormTag::lp(1), bricks::NormTag::lp(2), bricks::NormTag::sup()};
}

/// Every built-in basis plus one block basis of each standard space.
inline std::vector<bricks::BasisModel> bases(std::size_t cover) {
  using bricks::BasisModel;
  std::vector<BasisModel> out{BasisModel::standard_lp(1), BasisModel::standard_lp(2), BasisModel::standard_c0(),
                              BasisModel::summing_c(), bricks::make_uncompact_basis(cover)};
  std::vector<std::size_t> bp;
  std::vector<double> w;
  for (std::size_t i = 0; i <= 2 * cover; i += 2) bp.push_back(i);
  for (std::size_t i = 0; i < 2 * cover; ++i) w.push_back(i % 2 == 0 ? 1.0 : -0.5);
  out.push_back(bricks::block_basis(BasisModel::standard_lp(2), {bp, w}));
  out.push_back(bricks::block_basis(BasisModel::standard_c0(), {bp, w}));
  out.push_back(bricks::block_basis(BasisModel::summing_c(), {bp, w}));
  return out;
}

/// Brute-force max over all sign patterns of ||sum theta_j c_j||.
inline double brute_sign_max(const Eigen::MatrixXd& cols, bricks::NormTag tag) {
  const auto m = static_cast<std::size_t>(cols.cols());
  double best = 0.0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(cols.rows());
    for (std::size_t j = 0; j < m; ++j) {
      x += ((bits >> j) & 1U ? -1.0 : 1.0) * cols.col(static_cast<Eigen::Index>(j));
    }
    best = std::max(best, bricks::norm(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), tag));
  }
  return best;
}

}  // namespace gen

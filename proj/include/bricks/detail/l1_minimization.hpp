#pragma once

// Minimum l1-norm solutions of an underdetermined linear system.
// Used to evaluate dual norms of functionals on a subspace of l_inf^m,
// which is what an operator norm on the span of a block basis needs.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

#include "bricks/errors.hpp"

namespace bricks::detail {

/// min c^T z subject to A z = b, z >= 0 (dense two-phase simplex, Bland's rule).
/// c must be nonnegative so the problem is bounded below.
inline double solve_nonnegative_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                   const Eigen::VectorXd& c) {
  const Eigen::Index rows = A.rows();
  const Eigen::Index vars = A.cols();
  const Eigen::Index total = vars + rows;  // real variables then artificials
  const double tol = 1e-11 * std::max(1.0, A.cwiseAbs().maxCoeff());

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows, total + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(vars) = sign * A.row(i);
    t(i, vars + i) = 1.0;
    t(i, total) = sign * b(i);
    basis[static_cast<std::size_t>(i)] = vars + i;
  }
  std::vector<bool> active_row(static_cast<std::size_t>(rows), true);

  auto pivot = [&](Eigen::Index r, Eigen::Index col) {
    t.row(r) /= t(r, col);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i != r && t(i, col) != 0.0) t.row(i) -= t(i, col) * t.row(r);
    }
    basis[static_cast<std::size_t>(r)] = col;
  };

  auto run = [&](const Eigen::VectorXd& cost, Eigen::Index allowed) {
    for (int iteration = 0; iteration < 100000; ++iteration) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < allowed && entering < 0; ++j) {
        double reduced = cost(j);
        for (Eigen::Index i = 0; i < rows; ++i) {
          if (active_row[static_cast<std::size_t>(i)]) reduced -= cost(basis[static_cast<std::size_t>(i)]) * t(i, j);
        }
        if (reduced < -tol) entering = j;
      }
      if (entering < 0) return;
      Eigen::Index leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows; ++i) {
        if (!active_row[static_cast<std::size_t>(i)] || t(i, entering) <= tol) continue;
        const double ratio = t(i, total) / t(i, entering);
        if (ratio < best_ratio - tol ||
            (std::abs(ratio - best_ratio) <= tol && leaving >= 0 &&
             basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
          best_ratio = ratio;
          leaving = i;
        }
      }
      if (leaving < 0) throw InvariantViolation("linear program unbounded");
      pivot(leaving, entering);
    }
    throw InvariantViolation("simplex iteration limit reached");
  };

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
  phase1.tail(rows).setOnes();
  run(phase1, total);

  double infeasibility = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (basis[static_cast<std::size_t>(i)] >= vars) infeasibility += t(i, total);
  }
  if (infeasibility > 1e-8 * std::max(1.0, b.cwiseAbs().maxCoeff())) {
    throw InvariantViolation("linear system has no nonnegative solution");
  }
  // Drive zero-level artificials out of the basis; rows that cannot be
  // pivoted are redundant and dropped.
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (basis[static_cast<std::size_t>(i)] < vars) continue;
    Eigen::Index col = -1;
    for (Eigen::Index j = 0; j < vars && col < 0; ++j) {
      if (std::abs(t(i, j)) > tol) col = j;
    }
    if (col >= 0) {
      pivot(i, col);
    } else {
      active_row[static_cast<std::size_t>(i)] = false;
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(total);
  phase2.head(vars) = c;
  run(phase2, vars);

  double value = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (active_row[static_cast<std::size_t>(i)]) value += phase2(basis[static_cast<std::size_t>(i)]) * t(i, total);
  }
  return value;
}

/// min ||z||_1 subject to G z = r.
inline double min_l1_solution_norm(const Eigen::MatrixXd& G, const Eigen::VectorXd& r) {
  const Eigen::Index m = G.cols();
  Eigen::MatrixXd A(G.rows(), 2 * m);
  A << G, -G;
  return solve_nonnegative_lp(A, r, Eigen::VectorXd::Ones(2 * m));
}

}  // namespace bricks::detail

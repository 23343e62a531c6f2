#pragma once

// Exact operator norms of coefficient maps acting on the span of e_1..e_N.
//
// A coefficient map T (N x N) acts on x = S a as x -> S T a. For square
// models this is the ambient matrix S T S^{-1}, and the norm follows from the
// per-tag formula. Rectangular models (block bases) need the norm restricted
// to the range of S: through a QR factor for l2, and through minimum-norm
// Hahn-Banach extensions of the row functionals for sup.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cstdint>

#include "bricks/basis.hpp"
#include "bricks/detail/l1_minimization.hpp"
#include "bricks/errors.hpp"
#include "bricks/sequence.hpp"

namespace bricks {

/// Max column sum (l1), largest singular value (l2) or max row sum (sup).
inline double matrix_operator_norm(const Eigen::MatrixXd& m, NormTag tag) {
  if (m.size() == 0) return 0.0;
  switch (tag.kind()) {
    case NormKind::L1: return m.cwiseAbs().colwise().sum().maxCoeff();
    case NormKind::Sup: return m.cwiseAbs().rowwise().sum().maxCoeff();
    case NormKind::L2: {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
      return svd.singularValues()(0);
    }
  }
  return 0.0;
}

/// Norm of x = S a -> S T a on the span of the first n basis vectors.
inline double span_operator_norm(const BasisModel& b, std::size_t n, const Eigen::MatrixXd& t) {
  detail::require(t.rows() == static_cast<Eigen::Index>(n) && t.cols() == static_cast<Eigen::Index>(n),
                  "coefficient operator has the wrong shape");
  if (n == 0) return 0.0;
  const NormTag tag = b.norm_tag();
  if (b.coefficient_isometry()) return matrix_operator_norm(t, tag);
  const Eigen::MatrixXd s = b.synth_matrix(n);
  if (s.rows() == s.cols()) {
    return matrix_operator_norm(s * t * b.analysis_matrix(n), tag);
  }
  switch (tag.kind()) {
    case NormKind::L2: {
      // S = Q R with orthonormal Q, so the span is isometric to R^n via y = R a.
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(s);
      const Eigen::MatrixXd r =
          qr.matrixQR().topLeftCorner(s.cols(), s.cols()).template triangularView<Eigen::Upper>();
      const Eigen::MatrixXd r_inv = r.inverse();
      return matrix_operator_norm(r * t * r_inv, tag);
    }
    case NormKind::Sup: {
      // Row i of S T a is a functional on the span; its norm there is the
      // smallest l1 norm of an extension c with S^T c = (S T)_i^T.
      const Eigen::MatrixXd st = s * t;
      const Eigen::MatrixXd g = s.transpose();
      double best = 0.0;
      for (Eigen::Index i = 0; i < st.rows(); ++i) {
        const Eigen::VectorXd row = st.row(i).transpose();
        if (row.cwiseAbs().maxCoeff() == 0.0) continue;
        best = std::max(best, detail::min_l1_solution_norm(g, row));
      }
      return best;
    }
    case NormKind::L1:
      break;
  }
  throw InvalidArgument("operator norms on non-isometric l1 block spans are not supported");
}

/// max_{1 <= n <= N} ||P_n|| with P_n the n-th partial-sum projection.
inline double basis_constant(const BasisModel& b, std::size_t n_max) {
  detail::require(n_max >= 1, "basis constant needs N >= 1");
  const auto size = static_cast<Eigen::Index>(n_max);
  double best = 0.0;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index n = 0; n < size; ++n) {
    t(n, n) = 1.0;
    best = std::max(best, span_operator_norm(b, n_max, t));
  }
  return best;
}

/// max over all sign patterns of ||M_theta|| at truncation N.
inline double unconditional_constant(const BasisModel& b, std::size_t n_max,
                                     std::size_t cap = kDefaultEnumerationCap) {
  detail::require(n_max >= 1, "unconditional constant needs N >= 1");
  if (n_max > cap) {
    throw CapExceeded("unconditional constant at N = " + std::to_string(n_max) + " exceeds enumeration cap " +
                      std::to_string(cap));
  }
  if (b.flags().one_unconditional || b.coefficient_isometry()) return 1.0;

  // M_theta and M_{-theta} have the same norm, so theta_1 stays +1 and the
  // remaining signs run in Gray-code order.
  const auto size = static_cast<Eigen::Index>(n_max);
  Eigen::VectorXd theta = Eigen::VectorXd::Ones(size);
  const std::uint64_t count = std::uint64_t{1} << (n_max - 1);

  const Eigen::MatrixXd s = b.synth_matrix(n_max);
  if (s.rows() != s.cols()) {
    double best = 0.0;
    for (std::uint64_t k = 0; k < count; ++k) {
      if (k > 0) theta(std::countr_zero(k) + 1) *= -1.0;
      best = std::max(best, span_operator_norm(b, n_max, theta.asDiagonal().toDenseMatrix()));
    }
    return best;
  }

  const Eigen::MatrixXd a = b.analysis_matrix(n_max);
  const NormTag tag = b.norm_tag();
  Eigen::MatrixXd m = s * a;
  double best = matrix_operator_norm(m, tag);
  for (std::uint64_t k = 1; k < count; ++k) {
    const Eigen::Index j = std::countr_zero(k) + 1;
    theta(j) *= -1.0;
    if (k % 256 == 0) {
      m = s * theta.asDiagonal() * a;
    } else {
      m.noalias() += (2.0 * theta(j)) * s.col(j) * a.row(j);
    }
    best = std::max(best, matrix_operator_norm(m, tag));
  }
  return best;
}

}  // namespace bricks

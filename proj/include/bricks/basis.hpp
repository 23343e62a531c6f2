#pragma once

// Concrete Schauder bases at finite truncation.
//
// A basis is modelled by two families of matrices indexed by the truncation
// level n: the synthesis matrix S(n), whose column j holds the ambient
// coordinates of e_j, and a left inverse A(n) = S(n)^+ whose row j is the
// biorthogonal functional e_j^*. Built-in bases are square (the first n
// coordinates determine the norm of any combination of e_1..e_n); block
// bases live in the ambient space of their covering truncation and are
// rectangular.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bricks/errors.hpp"
#include "bricks/sequence.hpp"

namespace bricks {

/// Largest N for which 2^N sign patterns are enumerated.
inline constexpr std::size_t kDefaultEnumerationCap = 24;

enum class BasisKind { StandardLp, StandardC0, SummingC, UncompactC0Blocks, UserBlockBasis };

inline std::string to_string(BasisKind k) {
  switch (k) {
    case BasisKind::StandardLp: return "standard_lp";
    case BasisKind::StandardC0: return "standard_c0";
    case BasisKind::SummingC: return "summing_c";
    case BasisKind::UncompactC0Blocks: return "uncompact_c0_blocks";
    case BasisKind::UserBlockBasis: return "user_block_basis";
  }
  return "?";
}

/// Which condition on the half-heights makes sum theta_n eps_n e_n converge for
/// every choice of signs, when that is known in closed form.
enum class SeriesCriterion { VanishingTerms, SummableTerms, SquareSummableTerms, Unknown };

struct BasisFlags {
  bool normalized = true;
  bool unconditional = false;
  bool one_unconditional = false;
  bool boundedly_complete = false;

  friend bool operator==(const BasisFlags&, const BasisFlags&) = default;
};

/// A choice of signs theta_1..theta_N, each exactly +1 or -1.
class SignPattern {
 public:
  SignPattern() = default;
  explicit SignPattern(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_) {
      if (s != 1 && s != -1) throw InvalidArgument("sign pattern entries must be +1 or -1");
    }
  }

  static SignPattern all_plus(std::size_t n) { return SignPattern(std::vector<int>(n, 1)); }
  /// +1, -1, +1, ...
  static SignPattern alternating(std::size_t n) {
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = (i % 2 == 0) ? 1 : -1;
    return SignPattern(std::move(s));
  }
  /// Bit i set means theta_{i+1} = -1.
  static SignPattern from_bits(std::size_t n, std::uint64_t bits) {
    std::vector<int> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = ((bits >> i) & 1U) ? -1 : 1;
    return SignPattern(std::move(s));
  }

  std::size_t size() const { return signs_.size(); }
  int operator[](std::size_t i) const { return signs_[i]; }
  const std::vector<int>& signs() const { return signs_; }

  friend bool operator==(const SignPattern&, const SignPattern&) = default;

 private:
  std::vector<int> signs_;
};

/// Consecutive blocks u_n = sum_{i=k_n+1}^{k_{n+1}} a_i e_i of a basis.
/// breakpoints = (k_1 = 0, k_2, ..., k_{B+1}); weights a_1..a_{k_{B+1}}.
struct BlockSpec {
  std::vector<std::size_t> breakpoints;
  std::vector<double> weights;

  std::size_t block_count() const { return breakpoints.empty() ? 0 : breakpoints.size() - 1; }

  void validate() const {
    detail::require(breakpoints.size() >= 2, "block spec needs at least one block");
    detail::require(breakpoints.front() == 0, "block breakpoints must start at 0");
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
      detail::require(breakpoints[i] > breakpoints[i - 1], "block breakpoints must be strictly increasing");
    }
    detail::require(weights.size() >= breakpoints.back(), "block weights do not cover the last block");
    for (double w : weights) detail::require(std::isfinite(w), "block weights must be finite");
  }
};

class BasisModel {
 public:
  /// Everything that defines a model. `synth(n)` returns ambient_dim(n) x n,
  /// `analysis(n)` returns n x ambient_dim(n) with analysis(n) * synth(n) = I.
  struct Definition {
    std::string name;
    NormTag norm_tag = NormTag::sup();
    BasisKind kind = BasisKind::StandardC0;
    BasisFlags flags;
    /// The coefficient map a -> sum a_n e_n is an isometry from (R^n, norm_tag)
    /// onto the span (standard bases and normalized disjoint blocks of them).
    bool coefficient_isometry = false;
    SeriesCriterion criterion = SeriesCriterion::Unknown;
    std::optional<std::size_t> max_truncation;
    std::function<std::size_t(std::size_t)> ambient_dim;
    std::function<Eigen::MatrixXd(std::size_t)> synth;
    std::function<Eigen::MatrixXd(std::size_t)> analysis;
    /// Last indices n_1 < n_2 < ... of the harmonic blocks (uncompact basis only).
    std::vector<std::size_t> block_ends;
  };

  explicit BasisModel(Definition def) : def_(std::make_shared<const Definition>(std::move(def))) {
    detail::require(def_->ambient_dim && def_->synth && def_->analysis, "basis definition is incomplete");
  }

  static BasisModel standard_lp(int p);
  static BasisModel standard_c0();
  static BasisModel summing_c();

  const std::string& name() const { return def_->name; }
  NormTag norm_tag() const { return def_->norm_tag; }
  BasisKind kind() const { return def_->kind; }
  const BasisFlags& flags() const { return def_->flags; }
  bool coefficient_isometry() const { return def_->coefficient_isometry; }
  SeriesCriterion series_criterion() const { return def_->criterion; }
  std::optional<std::size_t> max_truncation() const { return def_->max_truncation; }
  const std::vector<std::size_t>& block_ends() const { return def_->block_ends; }

  void check_truncation(std::size_t n) const {
    if (def_->max_truncation && n > *def_->max_truncation) {
      throw InvalidArgument("basis '" + name() + "' is only defined up to truncation " +
                            std::to_string(*def_->max_truncation));
    }
  }

  std::size_t ambient_dim(std::size_t n) const {
    check_truncation(n);
    return def_->ambient_dim(n);
  }
  bool is_square() const { return !def_->max_truncation && def_->kind != BasisKind::UserBlockBasis; }

  Eigen::MatrixXd synth_matrix(std::size_t n) const {
    check_truncation(n);
    return def_->synth(n);
  }
  Eigen::MatrixXd analysis_matrix(std::size_t n) const {
    check_truncation(n);
    return def_->analysis(n);
  }

  /// Smallest truncation whose ambient dimension is m, if any.
  std::optional<std::size_t> truncation_for_ambient(std::size_t m) const {
    const std::size_t limit = def_->max_truncation.value_or(m);
    for (std::size_t n = 0; n <= limit; ++n) {
      const std::size_t d = def_->ambient_dim(n);
      if (d == m) return n;
      if (d > m) break;
    }
    return std::nullopt;
  }

  /// Ambient norm of e_index (1-based).
  double column_norm(std::size_t index) const {
    detail::require(index >= 1, "basis vectors are indexed from 1");
    const Eigen::MatrixXd s = synth_matrix(index);
    const Eigen::VectorXd col = s.col(static_cast<Eigen::Index>(index - 1));
    return bricks::norm(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())), norm_tag());
  }

  /// The normalized basis e_n / ||e_n||; returns *this when already normalized.
  BasisModel normalized() const {
    if (flags().normalized) return *this;
    Definition def = *def_;
    auto base = def_;
    auto model = *this;
    def.name = name() + "-normalized";
    def.flags.normalized = true;
    def.synth = [base, model](std::size_t n) {
      Eigen::MatrixXd s = base->synth(n);
      for (std::size_t j = 0; j < n; ++j) s.col(static_cast<Eigen::Index>(j)) /= model.column_norm(j + 1);
      return s;
    };
    def.analysis = [base, model](std::size_t n) {
      Eigen::MatrixXd a = base->analysis(n);
      for (std::size_t j = 0; j < n; ++j) a.row(static_cast<Eigen::Index>(j)) *= model.column_norm(j + 1);
      return a;
    };
    return BasisModel(std::move(def));
  }

 private:
  std::shared_ptr<const Definition> def_;
};

inline BasisModel BasisModel::standard_lp(int p) {
  const NormTag tag = NormTag::lp(p);
  Definition def;
  def.name = p == 1 ? "l1" : "l2";
  def.norm_tag = tag;
  def.kind = BasisKind::StandardLp;
  def.flags = {.normalized = true, .unconditional = true, .one_unconditional = true, .boundedly_complete = true};
  def.coefficient_isometry = true;
  def.criterion = p == 1 ? SeriesCriterion::SummableTerms : SeriesCriterion::SquareSummableTerms;
  def.ambient_dim = [](std::size_t n) { return n; };
  def.synth = [](std::size_t n) -> Eigen::MatrixXd {
    return Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  };
  def.analysis = def.synth;
  return BasisModel(std::move(def));
}

inline BasisModel BasisModel::standard_c0() {
  Definition def;
  def.name = "c0";
  def.norm_tag = NormTag::sup();
  def.kind = BasisKind::StandardC0;
  // Unconditional but not boundedly complete: c0 itself is the obstruction.
  def.flags = {.normalized = true, .unconditional = true, .one_unconditional = true, .boundedly_complete = false};
  def.coefficient_isometry = true;
  def.criterion = SeriesCriterion::VanishingTerms;
  def.ambient_dim = [](std::size_t n) { return n; };
  def.synth = [](std::size_t n) -> Eigen::MatrixXd {
    return Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  };
  def.analysis = def.synth;
  return BasisModel(std::move(def));
}

/// Summing basis of c: e_n = (0, ..., 0, 1, 1, ...) with n - 1 leading zeros.
inline BasisModel BasisModel::summing_c() {
  Definition def;
  def.name = "summing_c";
  def.norm_tag = NormTag::sup();
  def.kind = BasisKind::SummingC;
  def.flags = {.normalized = true, .unconditional = false, .one_unconditional = false, .boundedly_complete = false};
  def.coefficient_isometry = false;
  // sum theta_n eps_n e_n converges for all signs iff sum eps_n < inf.
  def.criterion = SeriesCriterion::SummableTerms;
  def.ambient_dim = [](std::size_t n) { return n; };
  def.synth = [](std::size_t n) -> Eigen::MatrixXd {
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) s.col(j).tail(m - j).setOnes();
    return s;
  };
  // a_1 = x_1, a_n = x_n - x_{n-1}
  def.analysis = [](std::size_t n) -> Eigen::MatrixXd {
    const auto m = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    for (Eigen::Index i = 1; i < m; ++i) a(i, i - 1) = -1.0;
    return a;
  };
  return BasisModel(std::move(def));
}

/// Block ends n_1 = 2 < n_2 < ... such that every block's harmonic sum
/// 1/(n_{k-1}+1) + ... + 1/n_k lies in [1, 2]. After the fixed first block
/// {1, 2}, each block is extended until its sum first reaches 1; the sum
/// then stays below 1 + 1/(n_{k-1}+1) <= 2. Returns ends until one is >= limit.
inline std::vector<std::size_t> harmonic_block_ends(std::size_t limit) {
  std::vector<std::size_t> ends{2};
  while (ends.back() < limit) {
    std::size_t n = ends.back();
    double sum = 0.0;
    while (sum < 1.0) {
      ++n;
      sum += 1.0 / static_cast<double>(n);
    }
    ends.push_back(n);
  }
  return ends;
}

/// The f_n system of c0: inside the k-th harmonic block, f_j has ones from
/// coordinate j to the block end n_k. Coordinates of sum a_j f_j are running
/// sums of the coefficients restarted at each block start.
inline BasisModel make_uncompact_basis(std::size_t n_cover) {
  detail::require(n_cover >= 2, "uncompact basis needs N >= 2");
  BasisModel::Definition def;
  def.name = "uncompact_c0_blocks";
  def.norm_tag = NormTag::sup();
  def.kind = BasisKind::UncompactC0Blocks;
  def.flags = {.normalized = true, .unconditional = false, .one_unconditional = false, .boundedly_complete = false};
  def.coefficient_isometry = false;
  def.criterion = SeriesCriterion::Unknown;
  def.block_ends = harmonic_block_ends(n_cover);
  def.ambient_dim = [](std::size_t n) { return n; };
  auto block_starts = [](std::size_t n) {
    // starts[i] is true when coordinate i (0-based) opens a block
    std::vector<bool> starts(n, false);
    std::size_t begin = 0;
    for (std::size_t end : harmonic_block_ends(n)) {
      if (begin < n) starts[begin] = true;
      begin = end;
    }
    return starts;
  };
  def.synth = [block_starts](std::size_t n) -> Eigen::MatrixXd {
    const auto m = static_cast<Eigen::Index>(n);
    const std::vector<bool> starts = block_starts(n);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      for (Eigen::Index i = j; i < m; ++i) {
        if (i > j && starts[static_cast<std::size_t>(i)]) break;
        s(i, j) = 1.0;
      }
    }
    return s;
  };
  def.analysis = [block_starts](std::size_t n) -> Eigen::MatrixXd {
    const auto m = static_cast<Eigen::Index>(n);
    const std::vector<bool> starts = block_starts(n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    for (Eigen::Index i = 1; i < m; ++i) {
      if (!starts[static_cast<std::size_t>(i)]) a(i, i - 1) = -1.0;
    }
    return a;
  };
  return BasisModel(std::move(def));
}

/// Block basis u_n / ||u_n|| (or u_n when normalize is false). The result is
/// defined up to truncation spec.block_count() and lives in the ambient space
/// of the base basis at the covering truncation k_{n+1}.
inline BasisModel block_basis(const BasisModel& base, const BlockSpec& spec, bool normalize = true) {
  spec.validate();
  base.check_truncation(spec.breakpoints.back());
  const NormTag tag = base.norm_tag();
  std::vector<double> norms;
  std::vector<double> weight_energy;
  for (std::size_t j = 0; j + 1 < spec.breakpoints.size(); ++j) {
    const std::size_t lo = spec.breakpoints[j];
    const std::size_t hi = spec.breakpoints[j + 1];
    const Eigen::MatrixXd s = base.synth_matrix(hi);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(s.rows());
    double energy = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      u += spec.weights[i] * s.col(static_cast<Eigen::Index>(i));
      energy += spec.weights[i] * spec.weights[i];
    }
    const double u_norm = norm(std::span<const double>(u.data(), static_cast<std::size_t>(u.size())), tag);
    if (energy == 0.0 || u_norm == 0.0) {
      throw InvalidArgument("block " + std::to_string(j + 1) + " is zero");
    }
    norms.push_back(normalize ? u_norm : 1.0);
    weight_energy.push_back(energy);
  }

  BasisModel::Definition def;
  def.name = base.name() + "-blocks";
  def.norm_tag = tag;
  def.kind = BasisKind::UserBlockBasis;
  def.flags.normalized = normalize;
  if (base.flags().unconditional) {
    def.flags.unconditional = true;
    def.flags.one_unconditional = base.flags().one_unconditional;
  }
  def.flags.boundedly_complete = base.flags().boundedly_complete;
  def.coefficient_isometry = base.coefficient_isometry() && normalize;
  def.criterion = def.coefficient_isometry ? base.series_criterion() : SeriesCriterion::Unknown;
  def.max_truncation = spec.block_count();
  const auto breakpoints = spec.breakpoints;
  def.ambient_dim = [base, breakpoints](std::size_t n) { return base.ambient_dim(breakpoints[n]); };
  def.synth = [base, spec, norms](std::size_t n) -> Eigen::MatrixXd {
    const Eigen::MatrixXd s = base.synth_matrix(spec.breakpoints[n]);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(s.rows(), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = spec.breakpoints[j]; i < spec.breakpoints[j + 1]; ++i) {
        out.col(static_cast<Eigen::Index>(j)) += spec.weights[i] * s.col(static_cast<Eigen::Index>(i));
      }
      out.col(static_cast<Eigen::Index>(j)) /= norms[j];
    }
    return out;
  };
  def.analysis = [base, spec, norms, weight_energy](std::size_t n) -> Eigen::MatrixXd {
    const Eigen::MatrixXd a = base.analysis_matrix(spec.breakpoints[n]);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), a.cols());
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = spec.breakpoints[j]; i < spec.breakpoints[j + 1]; ++i) {
        out.row(static_cast<Eigen::Index>(j)) += spec.weights[i] * a.row(static_cast<Eigen::Index>(i));
      }
      out.row(static_cast<Eigen::Index>(j)) *= norms[j] / weight_energy[j];
    }
    return out;
  };
  return BasisModel(std::move(def));
}

namespace detail {

inline Eigen::Map<const Eigen::VectorXd> as_eigen(const CoefficientVector& v) {
  return {v.entries().data(), static_cast<Eigen::Index>(v.size())};
}

inline CoefficientVector from_eigen(const Eigen::VectorXd& v) {
  return CoefficientVector(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace detail

/// Ambient coordinates of sum_{n <= N} a_n e_n.
inline CoefficientVector synthesize(const BasisModel& b, const CoefficientVector& coeffs) {
  const Eigen::MatrixXd s = b.synth_matrix(coeffs.size());
  return detail::from_eigen(s * detail::as_eigen(coeffs));
}

/// Coefficients e_n^*(x) of an ambient vector.
inline CoefficientVector analyze(const BasisModel& b, const CoefficientVector& ambient) {
  const auto n = b.truncation_for_ambient(ambient.size());
  if (!n) {
    throw InvalidArgument("ambient length " + std::to_string(ambient.size()) +
                          " does not match any truncation of basis '" + b.name() + "'");
  }
  const Eigen::MatrixXd a = b.analysis_matrix(*n);
  return detail::from_eigen(a * detail::as_eigen(ambient));
}

}  // namespace bricks

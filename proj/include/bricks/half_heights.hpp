#pragma once

// Half-height sequences eps_n: an explicit prefix followed by a closed-form
// tail rule, with the analytic tail facts the verdicts rely on.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "bricks/errors.hpp"
#include "bricks/sequence.hpp"

namespace bricks {

enum class TailKind { Zero, Reciprocal, ReciprocalSqrt, PowerLaw, Constant, Custom };

class TailRule {
 public:
  using Function = std::function<double(std::size_t)>;

  static TailRule zero() { return TailRule(TailKind::Zero, 0.0); }
  /// eps_n = 1/n
  static TailRule reciprocal() { return TailRule(TailKind::Reciprocal, 1.0); }
  /// eps_n = 1/sqrt(n)
  static TailRule reciprocal_sqrt() { return TailRule(TailKind::ReciprocalSqrt, 0.5); }
  /// eps_n = n^-alpha, alpha >= 0
  static TailRule power_law(double alpha) {
    detail::require(std::isfinite(alpha) && alpha >= 0.0, "power-law exponent must be finite and >= 0");
    return TailRule(TailKind::PowerLaw, alpha);
  }
  static TailRule constant(double c) {
    detail::require(std::isfinite(c) && c >= 0.0, "constant half-height must be finite and >= 0");
    return TailRule(TailKind::Constant, c);
  }
  /// Evaluated on demand; only numeric evidence is available for it.
  static TailRule custom(Function f, std::string description) {
    detail::require(static_cast<bool>(f), "custom tail rule needs a function");
    TailRule r(TailKind::Custom, 0.0);
    r.fn_ = std::move(f);
    r.description_ = std::move(description);
    return r;
  }

  TailKind kind() const { return kind_; }
  /// alpha for power-type rules, c for Constant.
  double parameter() const { return param_; }

  double operator()(std::size_t n) const {
    detail::require(n >= 1, "half-heights are indexed from 1");
    const double x = static_cast<double>(n);
    double v = 0.0;
    switch (kind_) {
      case TailKind::Zero: v = 0.0; break;
      case TailKind::Reciprocal: v = 1.0 / x; break;
      case TailKind::ReciprocalSqrt: v = 1.0 / std::sqrt(x); break;
      case TailKind::PowerLaw: v = std::pow(x, -param_); break;
      case TailKind::Constant: v = param_; break;
      case TailKind::Custom: v = fn_(n); break;
    }
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidArgument("tail rule produced an invalid half-height at n = " + std::to_string(n));
    }
    return v;
  }

  /// Decay exponent alpha of a rule of the form n^-alpha.
  std::optional<double> power_exponent() const {
    switch (kind_) {
      case TailKind::Reciprocal:
      case TailKind::ReciprocalSqrt:
      case TailKind::PowerLaw: return param_;
      default: return std::nullopt;
    }
  }

  bool identically_zero() const {
    return kind_ == TailKind::Zero || (kind_ == TailKind::Constant && param_ == 0.0);
  }

  std::string description() const {
    std::ostringstream os;
    switch (kind_) {
      case TailKind::Zero: return "zero";
      case TailKind::Reciprocal: return "1/n";
      case TailKind::ReciprocalSqrt: return "1/sqrt(n)";
      case TailKind::PowerLaw: os << "n^-" << param_; return os.str();
      case TailKind::Constant: os << "constant " << param_; return os.str();
      case TailKind::Custom: return description_;
    }
    return "?";
  }

 private:
  TailRule(TailKind k, double p) : kind_(k), param_(p) {}
  TailKind kind_;
  double param_;
  Function fn_;
  std::string description_;
};

inline std::string to_string(TailKind k) {
  switch (k) {
    case TailKind::Zero: return "zero";
    case TailKind::Reciprocal: return "reciprocal";
    case TailKind::ReciprocalSqrt: return "reciprocal_sqrt";
    case TailKind::PowerLaw: return "power_law";
    case TailKind::Constant: return "constant";
    case TailKind::Custom: return "custom";
  }
  return "?";
}

class HalfHeights {
 public:
  /// eps_n = prefix[n-1] for n <= prefix.size(), tail(n) beyond. When
  /// `rule_covers_prefix` is set the prefix must agree with the rule.
  HalfHeights(CoefficientVector prefix, TailRule tail, bool rule_covers_prefix = false)
      : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
      detail::require(prefix_[i] >= 0.0, "half-heights must be nonnegative");
      if (rule_covers_prefix) {
        const double r = tail_(i + 1);
        detail::require(std::abs(r - prefix_[i]) <= 1e-12 * std::max(1.0, std::abs(r)),
                        "half-height prefix disagrees with its tail rule at n = " + std::to_string(i + 1));
      }
    }
  }
  explicit HalfHeights(TailRule tail) : HalfHeights(CoefficientVector{}, std::move(tail)) {}

  /// Finitely many nonzero half-heights.
  static HalfHeights finite(CoefficientVector values) { return HalfHeights(std::move(values), TailRule::zero()); }

  double operator()(std::size_t n) const {
    detail::require(n >= 1, "half-heights are indexed from 1");
    return n <= prefix_.size() ? prefix_[n - 1] : tail_(n);
  }

  CoefficientVector first(std::size_t n) const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (*this)(i + 1);
    return CoefficientVector(std::move(out));
  }

  const CoefficientVector& prefix() const { return prefix_; }
  const TailRule& tail() const { return tail_; }

  /// Rescaled sequence eps_n * f(n), e.g. eps_n ||e_n|| when normalizing.
  HalfHeights scaled(std::function<double(std::size_t)> f, const std::string& what) const {
    auto self = *this;
    return HalfHeights(TailRule::custom([self, f](std::size_t n) { return self(n) * f(n); },
                                        tail_.description() + " scaled by " + what));
  }

  /// Whether sum eps_n^q converges; nullopt when undecidable from the rule.
  std::optional<bool> summable(double q) const {
    if (tail_.identically_zero()) return true;
    if (tail_.kind() == TailKind::Constant) return false;
    if (auto a = tail_.power_exponent()) return q * *a > 1.0;
    return std::nullopt;
  }

  /// Whether eps_n -> 0.
  std::optional<bool> vanishing() const {
    if (tail_.identically_zero()) return true;
    if (tail_.kind() == TailKind::Constant) return false;
    if (auto a = tail_.power_exponent()) return *a > 0.0;
    return std::nullopt;
  }

  /// True when eps_n = 0 for every n > level.
  bool zero_beyond(std::size_t level) const { return level >= prefix_.size() && tail_.identically_zero(); }

  /// Estimate of sum_{n > level} eps_n^q (midpoint integral rule on the
  /// closed-form part). Infinite when the series diverges.
  std::optional<double> tail_power_sum(std::size_t level, double q) const { return tail_sum(level, q, false); }

  /// Upper bound for sum_{n > level} eps_n^q, valid for decreasing rules.
  std::optional<double> tail_power_sum_upper(std::size_t level, double q) const { return tail_sum(level, q, true); }

  /// sup_{n > level} eps_n.
  std::optional<double> tail_sup(std::size_t level) const {
    double m = 0.0;
    for (std::size_t n = level + 1; n <= prefix_.size(); ++n) m = std::max(m, prefix_[n - 1]);
    const std::size_t from = std::max(level, prefix_.size());
    if (tail_.identically_zero()) return m;
    if (tail_.kind() == TailKind::Constant) return std::max(m, tail_.parameter());
    if (tail_.power_exponent()) return std::max(m, tail_(from + 1));
    return std::nullopt;
  }

 private:
  std::optional<double> tail_sum(std::size_t level, double q, bool upper) const {
    double head = 0.0;
    for (std::size_t n = level + 1; n <= prefix_.size(); ++n) head += std::pow(prefix_[n - 1], q);
    const std::size_t from = std::max(level, prefix_.size());
    if (tail_.identically_zero()) return head;
    if (tail_.kind() == TailKind::Constant) return std::numeric_limits<double>::infinity();
    const auto alpha = tail_.power_exponent();
    if (!alpha) return std::nullopt;
    const double s = q * *alpha;
    if (s <= 1.0) return std::numeric_limits<double>::infinity();
    // Explicit terms up to k, then int_k^inf x^-s dx (an upper bound for a
    // decreasing rule) or its Euler-Maclaurin correction.
    const std::size_t k = from + kExplicitTerms;
    for (std::size_t n = from + 1; n <= k; ++n) head += std::pow(tail_(n), q);
    const double m = static_cast<double>(k);
    const double integral = std::pow(m, 1.0 - s) / (s - 1.0);
    if (upper) return head + integral;
    const double f = std::pow(m, -s);
    return head + integral - f / 2.0 + s * f / (12.0 * m) - s * (s + 1.0) * (s + 2.0) * f / (720.0 * m * m * m);
  }

  static constexpr std::size_t kExplicitTerms = 1000;

  CoefficientVector prefix_;
  TailRule tail_;
};

}  // namespace bricks

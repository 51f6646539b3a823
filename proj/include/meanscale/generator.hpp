#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "meanscale/errors.hpp"
#include "meanscale/expr.hpp"
#include "meanscale/interval.hpp"

namespace meanscale {

enum class Direction { Increasing, Decreasing };

/// log((e^u + e^v) / 2) in shifted form, finite for every finite u, v.
inline double log_mean_exp(double u, double v) {
  constexpr double kLn2 = 0.69314718055994531;
  return std::max(u, v) + std::log1p(std::exp(-std::abs(u - v))) - kLn2;
}

/// Parameters within this distance of a family's special value (p = 0 for
/// power, alpha = 0 for exponential, ln(alpha) = 0 for radical) are routed
/// to the closed-form limit branch.
inline constexpr double kSpecialParamTol = 1e-8;

/// A continuous strictly monotone scalar map h with its inverse, the atom
/// from which quasi-arithmetic means and generator distances are built.
///
/// `stable_mean`, when present, overrides the generic composition
/// h^{-1}((h(x)+h(y))/2) with an algebraically equal form that stays finite
/// where the naive one overflows (shifted log-sum-exp for the built-in
/// families).
class Generator {
 public:
  using Map = std::function<double(double)>;
  using Mean2 = std::function<double(double, double)>;

  Generator(Map forward, Map inverse, Interval domain, Direction direction,
            Mean2 stable_mean = {})
      : forward_(std::move(forward)),
        inverse_(std::move(inverse)),
        domain_(domain),
        direction_(direction),
        stable_(std::move(stable_mean)) {}

  /// h(u); throws OutOfDomain outside the open domain.
  double forward(double u) const;

  /// h^{-1}(v) as a raw map; v is trusted to lie in the range of h.
  double inverse(double v) const { return inverse_(v); }

  /// The induced two-point mean; identical to qam_eval(*this, x, y).
  double mean(double x, double y) const;

  const Interval& domain() const noexcept { return domain_; }
  Direction direction() const noexcept { return direction_; }
  bool has_stable_mean() const noexcept { return static_cast<bool>(stable_); }

 private:
  Map forward_;
  Map inverse_;
  Interval domain_;
  Direction direction_;
  Mean2 stable_;
};

/// m_h(x, y) = h^{-1}((h(x)+h(y))/2), via the stable path when the
/// generator carries one. Degenerate input x == y returns x without
/// evaluating h. The result is clamped into [min(x,y), max(x,y)], so
/// internality holds exactly.
double qam_eval(const Generator& gen, double x, double y);

/// Power generator h_p(u) = u^p on (0, inf), log u at p = 0. The induced
/// mean is evaluated in log space, which keeps it finite for |p| far beyond
/// where u^p itself overflows.
Generator make_power_generator(double p);

/// Exponential generator e_alpha(u) = e^{alpha u} on R, identity at
/// alpha = 0. The mean uses the shifted log-sum-exp form
///   [max(u,v) + log((1 + e^{-|u-v|})/2)] / alpha,   u = alpha x, v = alpha y,
/// finite in double precision wherever alpha and the inputs are.
Generator make_exponential_generator(double alpha);

/// Radical generator k_alpha(u) = alpha^{1/u} on (0, inf) for alpha > 0;
/// 1/u at alpha = 1. Throws NonPositiveAlpha for alpha <= 0.
Generator make_radical_generator(double alpha);

/// Radical generator addressed by t = ln(alpha). Scale sweeps and the
/// parameter solver work in this coordinate so that the special value sits
/// at t = 0 and symmetric brackets behave like the other families.
Generator make_radical_generator_log(double log_alpha);

/// Generator defined by a parsed expression in u. Strict monotonicity is
/// certified by sampling 256 points of a finite window of `domain`
/// (NotMonotone on violation); the inverse is computed by bracketed
/// root-finding to 1e-12 relative tolerance.
Generator make_custom_generator(const expr::ExprAst& ast, Interval domain);

/// h(u) = u on R.
Generator identity_generator();

/// The generator scale * h + offset (scale != 0). Induces the same mean as
/// h; used to exercise affine invariance.
Generator affine_transform(const Generator& gen, double scale, double offset);

}  // namespace meanscale

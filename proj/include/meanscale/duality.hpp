#pragma once

#include <functional>

#include "meanscale/generator.hpp"
#include "meanscale/interval.hpp"

namespace meanscale {

/// A smooth strictly convex potential f with derivatives f' (the dual
/// coordinate eta) and f'' (the Hessian metric coefficient). Strict
/// convexity and monotonicity of f' are certified at construction by
/// sampling a finite window of the domain.
class ConvexPotential {
 public:
  using Map = std::function<double(double)>;

  /// Closed-form derivatives.
  ConvexPotential(Map f, Map f1, Map f2, Interval domain);

  /// Derivatives by central finite differences: step cbrt(eps) scaled by
  /// max(1, |theta|) for f', and the quartic root of eps for f'' (the
  /// second difference amplifies rounding noise as eps / step^2, so the
  /// wider step is what keeps it to ~sqrt(eps) relative error).
  static ConvexPotential from_function(Map f, Interval domain);

  /// f(theta) = e^theta. Ships its closed-form conjugate
  /// eta log eta - eta.
  static ConvexPotential exponential();

  /// f(theta) = theta^2 / 2, self-conjugate.
  static ConvexPotential quadratic();

  double value(double theta) const;
  double grad(double theta) const;
  double hess(double theta) const;
  const Interval& domain() const noexcept { return domain_; }

  /// Closed-form Legendre conjugate when known (built-ins only); empty
  /// otherwise. Used as an exact reference for the numeric conjugate.
  const Map& conjugate_closed() const noexcept { return conj_closed_; }

 private:
  ConvexPotential(Map f, Map f1, Map f2, Interval domain, Map conj_closed);
  void certify() const;

  Map f_;
  Map f1_;
  Map f2_;
  Interval domain_;
  Map conj_closed_;
};

/// Legendre conjugate f*(eta) = eta theta* - f(theta*) where theta* solves
/// f'(theta*) = eta by bracketed root-finding. Throws EtaOutOfRange when eta
/// is not attained by f' on the domain.
double conjugate_value(const ConvexPotential& pot, double eta);

/// Arc-length generator h(theta) = integral of sqrt(f'') from base_point,
/// built by adaptive quadrature (absolute tolerance 1e-10). h(base_point)=0;
/// strictly increasing; inverse by bracketed root-finding.
Generator primal_arc_generator(const ConvexPotential& pot, double base_point);

/// Dual arc-length generator h<>(eta) = integral of 1/sqrt(f''(theta(u)))
/// from f'(base_point), where theta(u) inverts f'. Same arc-length
/// coordinate as h up to the integration constants.
Generator dual_arc_generator(const ConvexPotential& pot, double base_point);

/// Closed-form references for the built-in potentials' arc generators:
/// for f = e^theta, h(theta) = 2 e^{theta/2} and h<>(eta) = 2 sqrt(eta).
Generator exp_potential_primal_arc();
Generator exp_potential_dual_arc();

/// The primal/dual arc generator pair sharing one base point. Satisfies
/// h(theta) - h(theta0) = h<>(f'(theta)) - h<>(f'(theta0)).
struct DualMeanPair {
  Generator primal;
  Generator dual;
  double base_point = 0.0;
};

DualMeanPair make_dual_pair(const ConvexPotential& pot, double base_point);

/// The same center point read in the two coordinate charts.
struct DualMeanReport {
  double theta_mean = 0.0;       // m_h(a, b)
  double eta_mean = 0.0;         // m_{h<>}(f'(a), f'(b))
  double transported_eta = 0.0;  // f'(theta_mean)
  double arc_primal = 0.0;       // h(theta_mean)
  double arc_dual = 0.0;         // h<>(eta_mean)
  double eta_residual = 0.0;     // |transported_eta - eta_mean| (relative)
  double arc_residual = 0.0;     // |arc_primal - arc_dual| (relative)

  bool consistent(double tol = 1e-8) const {
    return eta_residual <= tol && arc_residual <= tol;
  }
};

/// Verifies that m_h(a,b) in theta-coordinates and m_{h<>}(f'(a), f'(b)) in
/// eta-coordinates are the same point: f'(theta_mean) = eta_mean and
/// h(theta_mean) = h<>(eta_mean), with both generators based at (a+b)/2.
DualMeanReport dual_mean_check(const ConvexPotential& pot, double a, double b);

/// A 1D Riemannian line: positive metric coefficient g11 over an interval,
/// with a base point fixing the integration constant of the arc length.
struct RiemannianLine {
  std::function<double(double)> g11;
  double base_point = 0.0;
  Interval domain = Interval::real();
};

/// Geodesic distance rho(theta1, theta2) = |integral of sqrt(g11)|.
double riemannian_distance(const RiemannianLine& line, double theta1,
                           double theta2);

/// Riemannian center of mass of two points: the quasi-arithmetic mean under
/// the arc-length generator of the line.
double riemannian_centroid(const RiemannianLine& line, double theta1,
                           double theta2);

/// x'-coordinate of the Euclidean center of mass under the chart x = h(x'):
/// m_h(a', b'), so that h(result) is the midpoint of h(a') and h(b').
double chart_transport(const Generator& chart, double a_prime, double b_prime);

}  // namespace meanscale

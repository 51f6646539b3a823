#include "meanscale/duality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <utility>

#include "meanscale/quadrature.hpp"
#include "meanscale/rootfind.hpp"

namespace meanscale {

namespace {

constexpr double kArcQuadTol = 1e-10;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// solves f'(theta) = eta on the potential's domain
double invert_grad(const ConvexPotential& pot, double eta) {
  auto g = [&pot](double t) { return pot.grad(t); };
  const Interval win = certification_window(pot.domain());
  const double seed = 0.5 * (win.lo + win.hi);
  const auto br = bracket_monotone(g, eta, seed, pot.domain());
  if (!br)
    throw EtaOutOfRange("eta = " + num(eta) +
                        " is not attained by f' on the domain");
  const double root = brent_root(
                          [&](double t) { return pot.grad(t) - eta; }, br->lo,
                          br->hi)
                          .x;
  // A bracket can close on an unattained infimum once f' underflows (e.g.
  // e^theta == 0 below theta ~ -745). There f'' has underflowed too, the
  // gradient is flat at machine precision, and the point is meaningless.
  if (!std::isnormal(pot.hess(root)))
    throw EtaOutOfRange("eta = " + num(eta) +
                        " is not attained by f' on the domain");
  return root;
}

// increasing generator h(x) = integral of `speed` from base_point, inverse
// by expanding bracket plus Brent
Generator arc_generator(std::function<double(double)> speed, double base_point,
                        Interval domain) {
  auto forward = [speed, base_point](double x) {
    return adaptive_simpson(speed, base_point, x, kArcQuadTol);
  };
  auto inverse = [forward, base_point, domain](double v) {
    const auto br = bracket_monotone(forward, v, base_point, domain);
    if (!br)
      throw OutOfDomain("arc length " + num(v) +
                        " is not attained on the domain");
    return brent_root([&](double x) { return forward(x) - v; }, br->lo,
                      br->hi)
        .x;
  };
  return Generator(std::move(forward), std::move(inverse), domain,
                   Direction::Increasing);
}

}  // namespace

ConvexPotential::ConvexPotential(Map f, Map f1, Map f2, Interval domain)
    : ConvexPotential(std::move(f), std::move(f1), std::move(f2), domain,
                      Map{}) {}

ConvexPotential::ConvexPotential(Map f, Map f1, Map f2, Interval domain,
                                 Map conj_closed)
    : f_(std::move(f)),
      f1_(std::move(f1)),
      f2_(std::move(f2)),
      domain_(domain),
      conj_closed_(std::move(conj_closed)) {
  certify();
}

ConvexPotential ConvexPotential::from_function(Map f, Interval domain) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double step1 = std::cbrt(kEps);
  const double step2 = std::pow(kEps, 0.25);
  auto f1 = [f, step1](double theta) {
    double h = step1 * std::max(1.0, std::abs(theta));
    const double hi = theta + h;
    const double lo = theta - h;
    h = 0.5 * (hi - lo);  // symmetrize against rounding in theta +- h
    return (f(hi) - f(lo)) / (2.0 * h);
  };
  auto f2 = [f, step2](double theta) {
    double h = step2 * std::max(1.0, std::abs(theta));
    const double hi = theta + h;
    const double lo = theta - h;
    h = 0.5 * (hi - lo);
    return (f(hi) - 2.0 * f(theta) + f(lo)) / (h * h);
  };
  return ConvexPotential(std::move(f), std::move(f1), std::move(f2), domain,
                         Map{});
}

ConvexPotential ConvexPotential::exponential() {
  auto e = [](double theta) { return std::exp(theta); };
  // f*(eta) = eta log eta - eta on the gradient range (0, inf)
  auto conj = [](double eta) {
    if (!(eta > 0.0))
      throw EtaOutOfRange("the conjugate of exp needs eta > 0, got " +
                          num(eta));
    return eta * std::log(eta) - eta;
  };
  return ConvexPotential(e, e, e, Interval::real(), conj);
}

ConvexPotential ConvexPotential::quadratic() {
  return ConvexPotential([](double theta) { return 0.5 * theta * theta; },
                         [](double theta) { return theta; },
                         [](double) { return 1.0; }, Interval::real(),
                         [](double eta) { return 0.5 * eta * eta; });
}

double ConvexPotential::value(double theta) const {
  if (!domain_.contains(theta))
    throw OutOfDomain("theta = " + num(theta) +
                      " is outside the potential domain");
  return f_(theta);
}

double ConvexPotential::grad(double theta) const {
  if (!domain_.contains(theta))
    throw OutOfDomain("theta = " + num(theta) +
                      " is outside the potential domain");
  return f1_(theta);
}

double ConvexPotential::hess(double theta) const {
  if (!domain_.contains(theta))
    throw OutOfDomain("theta = " + num(theta) +
                      " is outside the potential domain");
  return f2_(theta);
}

void ConvexPotential::certify() const {
  if (!(domain_.lo < domain_.hi))
    throw DegenerateInterval("potential domain is empty");
  const Interval win = certification_window(domain_);
  constexpr int kSamples = 256;
  double prev_grad = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double theta = win.lo + (i + 0.5) / kSamples * (win.hi - win.lo);
    const double v = f_(theta);
    const double g = f1_(theta);
    const double h = f2_(theta);
    if (!std::isfinite(v) || !std::isfinite(g) || !std::isfinite(h))
      throw NotMonotone("potential is not finite at theta = " + num(theta));
    if (!(h > 0.0))
      throw NotMonotone("potential is not strictly convex at theta = " +
                        num(theta) + " (f'' = " + num(h) + ")");
    if (i > 0 && !(g > prev_grad))
      throw NotMonotone("potential gradient fails to increase near theta = " +
                        num(theta));
    prev_grad = g;
  }
}

double conjugate_value(const ConvexPotential& pot, double eta) {
  const double theta = invert_grad(pot, eta);
  return eta * theta - pot.value(theta);
}

Generator primal_arc_generator(const ConvexPotential& pot,
                               double base_point) {
  if (!pot.domain().contains(base_point))
    throw OutOfDomain("base point " + num(base_point) +
                      " is outside the potential domain");
  auto p = std::make_shared<ConvexPotential>(pot);
  return arc_generator(
      [p](double t) { return std::sqrt(p->hess(t)); }, base_point,
      pot.domain());
}

Generator dual_arc_generator(const ConvexPotential& pot, double base_point) {
  if (!pot.domain().contains(base_point))
    throw OutOfDomain("base point " + num(base_point) +
                      " is outside the potential domain");
  auto p = std::make_shared<ConvexPotential>(pot);
  Generator primal = primal_arc_generator(pot, base_point);
  auto h = std::make_shared<Generator>(std::move(primal));
  // h<>(eta) = integral of sqrt((f*)'') = integral of 1/sqrt(f''(theta(s)));
  // substituting s = f'(t) turns that into the primal arc length at theta(eta),
  // so the dual generator is the exact pushforward h o (f')^{-1}
  auto forward = [p, h](double eta) { return h->forward(invert_grad(*p, eta)); };
  auto inverse = [p, h](double v) { return p->grad(h->inverse(v)); };
  // the eta-domain is the range of f', which is open and generally not
  // computable in closed form; membership is enforced by invert_grad, which
  // raises EtaOutOfRange for unattained values
  return Generator(std::move(forward), std::move(inverse), Interval::real(),
                   Direction::Increasing);
}

Generator exp_potential_primal_arc() {
  return Generator(
      [](double theta) { return 2.0 * std::exp(0.5 * theta); },
      [](double v) { return 2.0 * std::log(0.5 * v); }, Interval::real(),
      Direction::Increasing,
      [](double x, double y) {
        return 2.0 * log_mean_exp(0.5 * x, 0.5 * y);
      });
}

Generator exp_potential_dual_arc() {
  return Generator(
      [](double eta) { return 2.0 * std::sqrt(eta); },
      [](double v) { return 0.25 * v * v; }, Interval::positive(),
      Direction::Increasing,
      [](double x, double y) {
        const double r = 0.5 * (std::sqrt(x) + std::sqrt(y));
        return r * r;
      });
}

DualMeanPair make_dual_pair(const ConvexPotential& pot, double base_point) {
  return DualMeanPair{primal_arc_generator(pot, base_point),
                      dual_arc_generator(pot, base_point), base_point};
}

DualMeanReport dual_mean_check(const ConvexPotential& pot, double a,
                               double b) {
  if (!pot.domain().contains(a) || !pot.domain().contains(b))
    throw OutOfDomain("dual_mean_check points are outside the potential domain");
  if (a == b) {
    DualMeanReport rep;
    rep.theta_mean = a;
    rep.eta_mean = rep.transported_eta = pot.grad(a);
    return rep;
  }
  const double base = 0.5 * (a + b);
  const DualMeanPair pair = make_dual_pair(pot, base);

  const double eta_a = pot.grad(a);
  const double eta_b = pot.grad(b);

  DualMeanReport rep;
  rep.theta_mean = qam_eval(pair.primal, a, b);
  rep.eta_mean = qam_eval(pair.dual, eta_a, eta_b);
  rep.transported_eta = pot.grad(rep.theta_mean);
  rep.arc_primal = pair.primal.forward(rep.theta_mean);
  rep.arc_dual = pair.dual.forward(rep.eta_mean);

  constexpr double kTiny = 1e-300;
  const double eta_scale =
      std::max({std::abs(eta_a), std::abs(eta_b), kTiny});
  rep.eta_residual = std::abs(rep.transported_eta - rep.eta_mean) / eta_scale;
  const double arc_scale =
      std::max(std::abs(pair.primal.forward(a) - pair.primal.forward(b)), kTiny);
  rep.arc_residual = std::abs(rep.arc_primal - rep.arc_dual) / arc_scale;
  return rep;
}

double riemannian_distance(const RiemannianLine& line, double theta1,
                           double theta2) {
  if (!line.domain.contains(theta1) || !line.domain.contains(theta2))
    throw OutOfDomain("riemannian_distance points are outside the line domain");
  auto speed = [&line](double t) { return std::sqrt(line.g11(t)); };
  return std::abs(adaptive_simpson(speed, theta1, theta2, kArcQuadTol));
}

double riemannian_centroid(const RiemannianLine& line, double theta1,
                           double theta2) {
  if (!line.domain.contains(theta1) || !line.domain.contains(theta2))
    throw OutOfDomain("riemannian_centroid points are outside the line domain");
  if (!line.domain.contains(line.base_point))
    throw OutOfDomain("riemannian line base point is outside its domain");
  auto g11 = line.g11;
  const Generator arc = arc_generator(
      [g11](double t) { return std::sqrt(g11(t)); }, line.base_point,
      line.domain);
  return qam_eval(arc, theta1, theta2);
}

double chart_transport(const Generator& chart, double a_prime,
                       double b_prime) {
  return qam_eval(chart, a_prime, b_prime);
}

}  // namespace meanscale

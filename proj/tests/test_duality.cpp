#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "meanscale/duality.hpp"
#include "meanscale/rootfind.hpp"

using namespace meanscale;

TEST_CASE("conjugate closed points") {
  auto exp_pot = ConvexPotential::exponential();
  CHECK(conjugate_value(exp_pot, 1.0) == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(conjugate_value(exp_pot, std::exp(1.0)) ==
        doctest::Approx(0.0).epsilon(1e-10));

  auto quad = ConvexPotential::quadratic();
  CHECK(conjugate_value(quad, 3.0) == doctest::Approx(4.5).epsilon(1e-10));
}

TEST_CASE("numeric conjugate matches eta log eta - eta") {
  auto pot = ConvexPotential::exponential();
  for (int i = 0; i <= 40; ++i) {
    const double eta = 0.1 + (7.0 - 0.1) * i / 40.0;
    CAPTURE(eta);
    CHECK(conjugate_value(pot, eta) ==
          doctest::Approx(eta * std::log(eta) - eta).epsilon(1e-10));
  }
  // The built-in's own closed conjugate agrees with it too.
  REQUIRE(static_cast<bool>(pot.conjugate_closed()));
  CHECK(pot.conjugate_closed()(2.0) ==
        doctest::Approx(2.0 * std::log(2.0) - 2.0).epsilon(1e-14));
}

TEST_CASE("conjugate rejects unattained eta") {
  // f' = e^theta is positive: eta <= 0 is out of range.
  CHECK_THROWS_AS(conjugate_value(ConvexPotential::exponential(), -1.0),
                  EtaOutOfRange);
  CHECK_THROWS_AS(conjugate_value(ConvexPotential::exponential(), 0.0),
                  EtaOutOfRange);
}

TEST_CASE("finite-difference derivatives track closed forms") {
  auto pot = ConvexPotential::from_function(
      [](double t) { return std::exp(t); }, Interval::real());
  for (double t : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
    CAPTURE(t);
    CHECK(pot.grad(t) == doctest::Approx(std::exp(t)).epsilon(1e-6));
    CHECK(pot.hess(t) == doctest::Approx(std::exp(t)).epsilon(1e-6));
  }
  CHECK(pot.value(1.5) == std::exp(1.5));
}

TEST_CASE("certification rejects non-convex potentials") {
  // Concave.
  CHECK_THROWS_AS(ConvexPotential::from_function(
                      [](double t) { return -t * t; }, Interval::real()),
                  NotMonotone);
  // Inflection inside the window.
  CHECK_THROWS_AS(ConvexPotential::from_function(
                      [](double t) { return t * t * t; }, Interval::real()),
                  NotMonotone);
  // Empty domain.
  CHECK_THROWS_AS(ConvexPotential::from_function(
                      [](double t) { return t * t; }, Interval{2.0, 2.0}),
                  DegenerateInterval);
}

TEST_CASE("domain checks on potential evaluation") {
  auto pot = ConvexPotential([](double t) { return t * t / 2.0; },
                             [](double t) { return t; },
                             [](double) { return 1.0; }, Interval{-1.0, 1.0});
  CHECK(pot.value(0.5) == 0.125);
  CHECK_THROWS_AS(pot.value(2.0), OutOfDomain);
  CHECK_THROWS_AS(pot.grad(-3.0), OutOfDomain);
  CHECK_THROWS_AS(pot.hess(1.5), OutOfDomain);
}

TEST_CASE("primal arc generator reproduces the closed form") {
  auto pot = ConvexPotential::exponential();
  auto h = primal_arc_generator(pot, 0.0);
  CHECK(h.forward(0.0) == 0.0);  // base-point normalization
  CHECK(h.direction() == Direction::Increasing);
  for (int i = 0; i <= 16; ++i) {
    const double t = -2.0 + 4.0 * i / 16.0;
    CAPTURE(t);
    // h(t) - h(0) = 2 e^{t/2} - 2
    CHECK(h.forward(t) ==
          doctest::Approx(2.0 * std::exp(t / 2.0) - 2.0).epsilon(1e-8));
    CHECK(h.inverse(h.forward(t)) == doctest::Approx(t).epsilon(1e-10));
  }

  auto quad_h = primal_arc_generator(ConvexPotential::quadratic(), 0.0);
  CHECK(quad_h.forward(1.75) == doctest::Approx(1.75).epsilon(1e-10));
  CHECK(quad_h.forward(-3.0) == doctest::Approx(-3.0).epsilon(1e-10));
}

TEST_CASE("dual arc generator reproduces the closed form") {
  auto pot = ConvexPotential::exponential();
  auto hd = dual_arc_generator(pot, 0.0);  // based at eta = f'(0) = 1
  CHECK(hd.forward(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  for (int i = 0; i <= 16; ++i) {
    const double eta = std::exp(-2.0 + 4.0 * i / 16.0);
    CAPTURE(eta);
    // h<>(eta) - h<>(1) = 2 sqrt(eta) - 2
    CHECK(hd.forward(eta) ==
          doctest::Approx(2.0 * std::sqrt(eta) - 2.0).epsilon(1e-8));
  }
  CHECK_THROWS_AS(hd.forward(-0.5), EtaOutOfRange);

  auto quad_hd = dual_arc_generator(ConvexPotential::quadratic(), 0.0);
  CHECK(quad_hd.forward(2.5) == doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("closed-form arc references agree with the quadrature builds") {
  auto hp = exp_potential_primal_arc();
  CHECK(hp.forward(1.0) == doctest::Approx(2.0 * std::exp(0.5)).epsilon(1e-14));
  CHECK(qam_eval(hp, 0.0, 2.0) ==
        doctest::Approx(1.240229013916555).epsilon(1e-14));

  auto hd = exp_potential_dual_arc();
  CHECK(hd.forward(4.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(qam_eval(hd, 1.0, std::exp(2.0)) ==
        doctest::Approx(3.4564049389621852).epsilon(1e-14));
}

TEST_CASE("arc-length consistency across the dual pair") {
  // h(theta) - h(theta0) = h<>(f'(theta)) - h<>(f'(theta0)); with a shared
  // base point both sides are just h(theta) and h<>(f'(theta)).
  for (auto pot : {ConvexPotential::exponential(), ConvexPotential::quadratic()}) {
    auto pair = make_dual_pair(pot, 0.5);
    for (int i = 0; i <= 8; ++i) {
      const double t = -1.5 + 3.0 * i / 8.0;
      CAPTURE(t);
      CHECK(pair.primal.forward(t) ==
            doctest::Approx(pair.dual.forward(pot.grad(t))).epsilon(1e-8));
    }
  }
}

TEST_CASE("dual mean check on the worked example") {
  auto rep = dual_mean_check(ConvexPotential::exponential(), 0.0, 2.0);
  CHECK(rep.theta_mean == doctest::Approx(1.240229013916555).epsilon(1e-9));
  CHECK(rep.eta_mean == doctest::Approx(3.4564049389621852).epsilon(1e-9));
  CHECK(rep.transported_eta == doctest::Approx(rep.eta_mean).epsilon(1e-8));
  CHECK(rep.eta_residual <= 1e-8);
  CHECK(rep.arc_residual <= 1e-8);
  CHECK(rep.consistent());
}

TEST_CASE("dual mean check is trivial for the quadratic") {
  auto rep = dual_mean_check(ConvexPotential::quadratic(), 1.0, 5.0);
  CHECK(rep.theta_mean == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(rep.eta_mean == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(rep.transported_eta == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(rep.consistent());
}

TEST_CASE("dual mean check idempotent input") {
  auto rep = dual_mean_check(ConvexPotential::exponential(), 1.0, 1.0);
  CHECK(rep.theta_mean == 1.0);
  CHECK(rep.eta_mean == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  CHECK(rep.transported_eta == rep.eta_mean);
  CHECK(rep.eta_residual == 0.0);
  CHECK(rep.arc_residual == 0.0);
}

TEST_CASE("dual mean check on a quadrature-only potential") {
  // Quartic-plus-quadratic: strictly convex, no closed forms supplied.
  auto pot = ConvexPotential::from_function(
      [](double t) { return t * t * t * t / 4.0 + t * t / 2.0; },
      Interval::real());
  auto rep = dual_mean_check(pot, -0.5, 1.5);
  CHECK(rep.consistent());
  CHECK(rep.theta_mean > -0.5);
  CHECK(rep.theta_mean < 1.5);
}

TEST_CASE("riemannian distance") {
  RiemannianLine exp_line{[](double t) { return std::exp(t); }, 0.0,
                          Interval::real()};
  CHECK(riemannian_distance(exp_line, 0.0, 2.0) ==
        doctest::Approx(3.4365636569180905).epsilon(1e-8));
  // Symmetry of the unsigned distance.
  CHECK(riemannian_distance(exp_line, 2.0, 0.0) ==
        doctest::Approx(3.4365636569180905).epsilon(1e-8));
  CHECK(riemannian_distance(exp_line, 1.3, 1.3) == 0.0);

  RiemannianLine flat{[](double) { return 1.0; }, 0.0, Interval::real()};
  CHECK(riemannian_distance(flat, -1.0, 4.0) ==
        doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("riemannian centroid") {
  RiemannianLine flat{[](double) { return 1.0; }, 0.0, Interval::real()};
  CHECK(riemannian_centroid(flat, 1.0, 5.0) ==
        doctest::Approx(3.0).epsilon(1e-10));

  RiemannianLine exp_line{[](double t) { return std::exp(t); }, 0.0,
                          Interval::real()};
  const double c = riemannian_centroid(exp_line, 0.0, 2.0);
  CHECK(c == doctest::Approx(1.240229013916555).epsilon(1e-8));

  // Golden-section oracle on the summed squared geodesic distances.
  auto energy = [&](double x) {
    const double da = riemannian_distance(exp_line, 0.0, x);
    const double db = riemannian_distance(exp_line, x, 2.0);
    return da * da + db * db;
  };
  const double oracle = golden_section_min(energy, 0.0, 2.0, 1e-9).x;
  CHECK(c == doctest::Approx(oracle).epsilon(1e-6));

  CHECK(riemannian_centroid(exp_line, 0.7, 0.7) == 0.7);
}

TEST_CASE("chart transport") {
  CHECK(chart_transport(identity_generator(), 1.0, 3.0) == 2.0);

  auto cube = make_custom_generator(expr::parse("u^3"), {-10.0, 10.0});
  const double c = chart_transport(cube, 1.0, 2.0);
  CHECK(c == doctest::Approx(1.6509636244473133).epsilon(1e-10));
  // Contract: the transported point's x-coordinate is the Euclidean
  // midpoint of the x-coordinates.
  CHECK(cube.forward(c) ==
        doctest::Approx((cube.forward(1.0) + cube.forward(2.0)) / 2.0)
            .epsilon(1e-10));

  auto expchart = make_exponential_generator(1.0);
  CHECK(chart_transport(expchart, 0.0, 2.0) ==
        doctest::Approx(1.4337808304830272).epsilon(1e-12));
}

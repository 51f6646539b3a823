#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "meanscale/generator.hpp"

using namespace meanscale;

TEST_CASE("power mean closed forms") {
  CHECK(qam_eval(make_power_generator(1.0), 1.0, 3.0) == 2.0);
  CHECK(qam_eval(make_power_generator(0.0), 1.0, 4.0) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(qam_eval(make_power_generator(-1.0), 2.0, 6.0) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(qam_eval(make_power_generator(2.0), 1.0, 7.0) ==
        doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("exponential mean closed forms") {
  CHECK(qam_eval(make_exponential_generator(0.0), -1.0, 5.0) == 2.0);
  // (1/2) log((1+e^2)/2)
  CHECK(qam_eval(make_exponential_generator(2.0), 0.0, 1.0) ==
        doctest::Approx(0.71689041524151359).epsilon(1e-14));
  CHECK(qam_eval(make_exponential_generator(17.0), 4.0, 4.0) == 4.0);
}

TEST_CASE("radical mean closed forms") {
  CHECK(qam_eval(make_radical_generator(1.0), 2.0, 6.0) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(qam_eval(make_radical_generator(1.0), 5.0, 5.0) == 5.0);
  CHECK(qam_eval(make_radical_generator(10.0), 1.0, 1.0) == 1.0);
  CHECK(make_radical_generator(10.0).direction() == Direction::Decreasing);
  CHECK_THROWS_AS(make_radical_generator(0.0), NonPositiveAlpha);
  CHECK_THROWS_AS(make_radical_generator(-2.0), NonPositiveAlpha);
}

TEST_CASE("radical log parameterization flips direction at t = 0") {
  // alpha < 1 means t < 0: the generator e^{t/u} is increasing in u.
  CHECK(make_radical_generator_log(-1.0).direction() == Direction::Increasing);
  CHECK(make_radical_generator_log(1.0).direction() == Direction::Decreasing);
  // t = 0 is the harmonic branch.
  CHECK(qam_eval(make_radical_generator_log(0.0), 2.0, 6.0) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(qam_eval(make_radical_generator_log(std::log(10.0)), 1.0, 9.0) ==
        doctest::Approx(qam_eval(make_radical_generator(10.0), 1.0, 9.0))
            .epsilon(1e-14));
}

TEST_CASE("domain enforcement") {
  CHECK_THROWS_AS(make_power_generator(2.0).forward(-1.0), OutOfDomain);
  CHECK_THROWS_AS(make_power_generator(0.0).forward(0.0), OutOfDomain);
  CHECK_THROWS_AS(qam_eval(make_power_generator(1.0), -1.0, 2.0), OutOfDomain);
  CHECK_THROWS_AS(qam_eval(make_radical_generator(2.0), 0.0, 2.0),
                  OutOfDomain);
}

TEST_CASE("continuity across the special-parameter thresholds") {
  // Values within kSpecialParamTol of the special parameter route to the
  // limit branch; just outside they must still be close.
  double at0 = qam_eval(make_power_generator(0.0), 2.0, 8.0);
  double near0 = qam_eval(make_power_generator(1e-7), 2.0, 8.0);
  CHECK(std::abs(near0 - at0) < 1e-6);

  double e0 = qam_eval(make_exponential_generator(0.0), -1.0, 5.0);
  double enear = qam_eval(make_exponential_generator(1e-7), -1.0, 5.0);
  CHECK(std::abs(enear - e0) < 1e-5);

  double r0 = qam_eval(make_radical_generator(1.0), 2.0, 6.0);
  double rnear = qam_eval(make_radical_generator(1.0 + 1e-7), 2.0, 6.0);
  CHECK(std::abs(rnear - r0) < 1e-5);
}

TEST_CASE("stable path agrees with the naive composition in range") {
  // |alpha x| <= 300: both forms representable, must agree to 1e-10.
  for (double alpha : {-120.0, -7.0, 0.5, 40.0, 299.0}) {
    for (auto [x, y] : {std::pair{0.3, 1.0}, {-0.8, 0.9}, {0.1, 0.11}}) {
      CAPTURE(alpha);
      CAPTURE(x);
      const double naive =
          std::log((std::exp(alpha * x) + std::exp(alpha * y)) / 2.0) / alpha;
      const double stable = qam_eval(make_exponential_generator(alpha), x, y);
      CHECK(stable == doctest::Approx(naive).epsilon(1e-10));
    }
  }
}

TEST_CASE("stable path survives where the naive composition overflows") {
  const double alpha = 800.0;  // |alpha x| > 700 overflows e^{alpha x}
  const double x = 1.0, y = 0.25;
  CHECK(std::isinf(std::exp(alpha * x)));
  const double m = qam_eval(make_exponential_generator(alpha), x, y);
  CHECK(std::isfinite(m));
  // Within log(2)/alpha of the max.
  CHECK(m == doctest::Approx(x - std::log(2.0) / alpha).epsilon(1e-12));

  // Same on the radical side: alpha = e^600 would overflow alpha^(1/u).
  const double t = 600.0;
  const double r = qam_eval(make_radical_generator_log(t), 0.5, 2.0);
  CHECK(std::isfinite(r));
  CHECK(r > 0.5);
  CHECK(r < 2.0);
}

TEST_CASE("LSE limit bound log(2)/alpha") {
  // The gap saturates at exactly log(2)/alpha once e^{-alpha|x-y|} is below
  // eps, so give the bound a couple of ulps of headroom.
  const double x = -0.3, y = 1.7;
  for (double alpha : {10.0, 100.0, 1000.0}) {
    CAPTURE(alpha);
    const double bound = std::log(2.0) / alpha + 4e-15;
    const double up = qam_eval(make_exponential_generator(alpha), x, y);
    CHECK(std::abs(up - std::max(x, y)) <= bound);
    const double dn = qam_eval(make_exponential_generator(-alpha), x, y);
    CHECK(std::abs(dn - std::min(x, y)) <= bound);
  }
}

TEST_CASE("custom generators") {
  auto cube = make_custom_generator(expr::parse("u^3"), {-10.0, 10.0});
  CHECK(qam_eval(cube, 1.0, 2.0) ==
        doctest::Approx(1.6509636244473133).epsilon(1e-12));
  CHECK(cube.direction() == Direction::Increasing);

  auto logs = make_custom_generator(expr::parse("log(u)"), Interval::positive());
  CHECK(qam_eval(logs, 1.0, 4.0) == doctest::Approx(2.0).epsilon(1e-12));

  auto recip = make_custom_generator(expr::parse("1/u"), Interval::positive());
  CHECK(recip.direction() == Direction::Decreasing);
  CHECK(qam_eval(recip, 2.0, 6.0) == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(make_custom_generator(expr::parse("u*u - u"), {0.0, 10.0}),
                  NotMonotone);
  // Constant expressions are not monotone either.
  CHECK_THROWS_AS(make_custom_generator(expr::parse("3"), {0.0, 1.0}),
                  NotMonotone);
  CHECK_THROWS_AS(make_custom_generator(expr::parse("u"), {2.0, 2.0}),
                  DegenerateInterval);
}

TEST_CASE("custom inverse round trip") {
  auto g = make_custom_generator(expr::parse("u^3 + u"), {-50.0, 50.0});
  for (double u : {-3.0, -0.5, 0.0, 0.7, 4.0}) {
    CAPTURE(u);
    CHECK(g.inverse(g.forward(u)) == doctest::Approx(u).epsilon(1e-12));
  }
}

TEST_CASE("identity and affine transforms") {
  auto id = identity_generator();
  CHECK(id.forward(3.25) == 3.25);
  CHECK(qam_eval(id, 1.0, 3.0) == 2.0);

  auto g = make_power_generator(3.0);
  auto aff = affine_transform(g, -2.5, 7.0);
  CHECK(aff.direction() == Direction::Decreasing);
  CHECK(aff.forward(2.0) == doctest::Approx(-2.5 * 8.0 + 7.0));
  CHECK(qam_eval(aff, 1.0, 2.0) ==
        doctest::Approx(qam_eval(g, 1.0, 2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(affine_transform(g, 0.0, 1.0), Error);
}

// Randomized property sweep shared across the built-in families. The full
// 1000-case run lives in the acceptance binary; this is the fast smoke layer.
TEST_CASE("randomized generator properties") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto pick = [&](int fam, double& x, double& y, Generator& g) {
    switch (fam) {
      case 0:
        g = make_power_generator(-4.0 + 8.0 * unit(rng));
        x = 0.2 + 3.0 * unit(rng);
        y = 0.2 + 3.0 * unit(rng);
        break;
      case 1:
        g = make_exponential_generator(-30.0 + 60.0 * unit(rng));
        x = -2.0 + 4.0 * unit(rng);
        y = -2.0 + 4.0 * unit(rng);
        break;
      default:
        g = make_radical_generator_log(-8.0 + 16.0 * unit(rng));
        x = 0.3 + 2.0 * unit(rng);
        y = 0.3 + 2.0 * unit(rng);
        break;
    }
  };

  Generator g = identity_generator();
  for (int i = 0; i < 300; ++i) {
    double x, y;
    pick(i % 3, x, y, g);
    const double m = qam_eval(g, x, y);
    CAPTURE(i);

    // internality
    CHECK(m >= std::min(x, y));
    CHECK(m <= std::max(x, y));
    // symmetry
    CHECK(qam_eval(g, y, x) == doctest::Approx(m).epsilon(1e-14));
    // idempotence
    CHECK(qam_eval(g, x, x) == x);
    // inverse round trip
    CHECK(g.inverse(g.forward(x)) == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("affine invariance on sampled points") {
  // kappa h + beta goes through the raw composition, which loses h(x) to the
  // offset once |kappa h| drops toward eps |beta|. Keep |h| moderate so the
  // check measures the algebra, not that absorption.
  std::mt19937 rng(908070);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto sgn = [&] { return unit(rng) < 0.5 ? -1.0 : 1.0; };

  Generator g = identity_generator();
  for (int i = 0; i < 300; ++i) {
    double x, y;
    switch (i % 3) {
      case 0:
        g = make_power_generator(sgn() * (0.5 + 2.5 * unit(rng)));
        x = 0.4 + 2.0 * unit(rng);
        y = 0.4 + 2.0 * unit(rng);
        break;
      case 1:
        g = make_exponential_generator(sgn() * (0.5 + 2.5 * unit(rng)));
        x = -1.5 + 3.0 * unit(rng);
        y = -1.5 + 3.0 * unit(rng);
        break;
      default:
        g = make_radical_generator_log(sgn() * (0.5 + 1.5 * unit(rng)));
        x = 0.4 + 2.0 * unit(rng);
        y = 0.4 + 2.0 * unit(rng);
        break;
    }
    const double kappa = sgn() * (1.0 + 2.0 * unit(rng));
    const double beta = -2.0 + 4.0 * unit(rng);
    const double m = qam_eval(g, x, y);
    auto aff = affine_transform(g, kappa, beta);
    CAPTURE(i);
    CHECK(qam_eval(aff, x, y) == doctest::Approx(m).epsilon(1e-12));
  }
}

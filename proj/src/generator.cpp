#include "meanscale/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <vector>

#include "meanscale/rootfind.hpp"

namespace meanscale {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

double Generator::forward(double u) const {
  if (!domain_.contains(u))
    throw OutOfDomain("argument " + num(u) + " is outside the generator domain");
  return forward_(u);
}

double Generator::mean(double x, double y) const {
  if (!domain_.contains(x))
    throw OutOfDomain("mean argument " + num(x) +
                      " is outside the generator domain");
  if (!domain_.contains(y))
    throw OutOfDomain("mean argument " + num(y) +
                      " is outside the generator domain");
  if (x == y) return x;
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  double m;
  if (stable_) {
    m = stable_(x, y);
  } else {
    const double hx = forward_(x);
    const double hy = forward_(y);
    if (!std::isfinite(hx) || !std::isfinite(hy))
      throw OutOfDomain("generator overflows at " +
                        num(std::isfinite(hx) ? y : x) +
                        " and carries no stable mean");
    m = inverse_(0.5 * hx + 0.5 * hy);
  }
  if (!std::isfinite(m))
    throw OutOfDomain("mean of " + num(x) + " and " + num(y) +
                      " evaluated to a non-finite value");
  return std::clamp(m, lo, hi);
}

double qam_eval(const Generator& gen, double x, double y) {
  return gen.mean(x, y);
}

Generator make_power_generator(double p) {
  const Interval dom = Interval::positive();
  if (std::abs(p) <= kSpecialParamTol) {
    return Generator(
        [](double u) { return std::log(u); },
        [](double v) { return std::exp(v); }, dom, Direction::Increasing,
        [](double x, double y) {
          const double prod = x * y;
          if (std::isfinite(prod) &&
              prod >= std::numeric_limits<double>::min())
            return std::sqrt(prod);
          return std::sqrt(x) * std::sqrt(y);  // x*y left normal range
        });
  }
  const Direction dir = p > 0 ? Direction::Increasing : Direction::Decreasing;
  return Generator(
      [p](double u) { return std::pow(u, p); },
      [p](double v) { return std::pow(v, 1.0 / p); }, dom, dir,
      [p](double x, double y) {
        // direct composition while it stays inside normal range (it is the
        // more accurate route), the same mean in log space once u^p would
        // overflow or vanish
        const double hx = std::pow(x, p);
        const double hy = std::pow(y, p);
        const double avg = 0.5 * hx + 0.5 * hy;
        if (std::isfinite(hx) && std::isfinite(hy) && avg > 0.0 &&
            avg <= std::numeric_limits<double>::max()) {
          const double m = std::pow(avg, 1.0 / p);
          if (std::isfinite(m) && m > 0.0) return m;
        }
        return std::exp(log_mean_exp(p * std::log(x), p * std::log(y)) / p);
      });
}

Generator make_exponential_generator(double alpha) {
  const Interval dom = Interval::real();
  if (std::abs(alpha) <= kSpecialParamTol) {
    return Generator(
        [](double u) { return u; }, [](double v) { return v; }, dom,
        Direction::Increasing,
        [](double x, double y) { return 0.5 * x + 0.5 * y; });
  }
  const Direction dir =
      alpha > 0 ? Direction::Increasing : Direction::Decreasing;
  return Generator(
      [alpha](double u) { return std::exp(alpha * u); },
      [alpha](double v) { return std::log(v) / alpha; }, dom, dir,
      [alpha](double x, double y) {
        return log_mean_exp(alpha * x, alpha * y) / alpha;
      });
}

Generator make_radical_generator(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw NonPositiveAlpha("radical generator needs finite alpha > 0, got " +
                           num(alpha));
  return make_radical_generator_log(std::log(alpha));
}

Generator make_radical_generator_log(double log_alpha) {
  if (!std::isfinite(log_alpha))
    throw NonPositiveAlpha("radical generator needs finite ln(alpha)");
  const Interval dom = Interval::positive();
  if (std::abs(log_alpha) <= kSpecialParamTol) {
    return Generator(
        [](double u) { return 1.0 / u; }, [](double v) { return 1.0 / v; },
        dom, Direction::Decreasing,
        [](double x, double y) {
          const double num = 2.0 * x * y;
          if (std::isfinite(num) && num >= std::numeric_limits<double>::min())
            return num / (x + y);
          return 2.0 / (1.0 / x + 1.0 / y);  // 2xy left normal range
        });
  }
  const double t = log_alpha;
  // h(u) = alpha^{1/u} = e^{t/u}: decreasing in u for alpha > 1
  const Direction dir = t > 0 ? Direction::Decreasing : Direction::Increasing;
  return Generator(
      [t](double u) { return std::exp(t / u); },
      [t](double v) { return t / std::log(v); }, dom, dir,
      [t](double x, double y) {
        // t and log_mean_exp(t/x, t/y) share a sign, so m > 0 throughout
        return t / log_mean_exp(t / x, t / y);
      });
}

Generator make_custom_generator(const expr::ExprAst& ast, Interval domain) {
  if (!(domain.lo < domain.hi))
    throw DegenerateInterval("custom generator domain is empty");
  const Interval win = certification_window(domain);

  constexpr int kSamples = 256;
  std::vector<double> values(kSamples);
  std::vector<double> points(kSamples);
  for (int i = 0; i < kSamples; ++i) {
    // midpoint samples keep clear of the open endpoints
    const double u = win.lo + (i + 0.5) / kSamples * (win.hi - win.lo);
    points[i] = u;
    try {
      values[i] = ast.eval(u);
    } catch (const expr::DomainError& e) {
      throw NotMonotone("expression is undefined inside its domain at u = " +
                        num(u) + ": " + e.what());
    }
  }

  const bool up = values[1] > values[0];
  for (int i = 0; i + 1 < kSamples; ++i) {
    const bool ok = up ? values[i + 1] > values[i] : values[i + 1] < values[i];
    if (!ok)
      throw NotMonotone("expression is not strictly monotone between u = " +
                        num(points[i]) + " and u = " + num(points[i + 1]));
  }
  const Direction dir = up ? Direction::Increasing : Direction::Decreasing;

  const double seed = 0.5 * (win.lo + win.hi);
  auto forward = [ast](double u) { return ast.eval(u); };
  auto inverse = [ast, domain, seed](double v) {
    auto f = [&ast](double u) { return ast.eval(u); };
    const auto br = bracket_monotone(f, v, seed, domain);
    if (!br)
      throw OutOfDomain("value " + num(v) +
                        " is not attained by the expression on its domain");
    return brent_root([&](double u) { return ast.eval(u) - v; }, br->lo,
                      br->hi)
        .x;
  };
  return Generator(std::move(forward), std::move(inverse), domain, dir);
}

Generator identity_generator() {
  return Generator(
      [](double u) { return u; }, [](double v) { return v; }, Interval::real(),
      Direction::Increasing,
      [](double x, double y) { return 0.5 * x + 0.5 * y; });
}

Generator affine_transform(const Generator& gen, double scale, double offset) {
  if (scale == 0.0 || !std::isfinite(scale) || !std::isfinite(offset))
    throw Error("affine_transform needs a finite nonzero scale");
  const Direction dir =
      (scale > 0) == (gen.direction() == Direction::Increasing)
          ? Direction::Increasing
          : Direction::Decreasing;
  auto base = std::make_shared<Generator>(gen);
  // no stable mean on purpose: the affine copy exercises the raw
  // composition, which is what affine-invariance tests want to see
  return Generator(
      [base, scale, offset](double u) {
        return scale * base->forward(u) + offset;
      },
      [base, scale, offset](double v) {
        return base->inverse((v - offset) / scale);
      },
      gen.domain(), dir);
}

}  // namespace meanscale

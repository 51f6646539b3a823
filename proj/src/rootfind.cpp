#include "meanscale/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "meanscale/errors.hpp"

namespace meanscale {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kAbsFloor = 1e-18;  // keeps the width test sane near x = 0
}  // namespace

RootResult brent_root(const ScalarFn& f, double a, double b, double rel_tol,
                      double f_tol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, 0};
  if (fb == 0.0) return {b, 0};
  if ((fa > 0.0) == (fb > 0.0))
    throw Error("brent_root: endpoints do not straddle a root");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 1; it <= max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 =
        2.0 * kEps * std::abs(b) + 0.5 * (rel_tol * std::abs(b) + kAbsFloor);
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0 || std::abs(fb) <= f_tol)
      return {b, it};

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // inverse quadratic interpolation, secant when only two points differ
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw Error("brent_root: iteration cap reached");
}

namespace {

// Probe f at x; false when evaluation leaves the real domain or the value
// is not finite, so the bracket never carries an unusable endpoint.
bool probe(const ScalarFn& f, double x, double& fx) {
  try {
    fx = f(x);
  } catch (const expr::DomainError&) {
    return false;
  } catch (const OutOfDomain&) {
    return false;
  } catch (const QuadratureFailure&) {
    return false;  // arc-length probes can overflow far from the bracket
  }
  return std::isfinite(fx);
}

// Step from `good` toward `cand`, backing off geometrically until f is
// usable. Returns false when no usable point closer than `good` exists.
bool advance(const ScalarFn& f, double good, double cand, double& x,
             double& fx) {
  for (int i = 0; i < 60; ++i) {
    if (probe(f, cand, fx)) {
      x = cand;
      return true;
    }
    cand = good + 0.5 * (cand - good);
    if (cand == good) break;
  }
  return false;
}

}  // namespace

std::optional<Bracket> bracket_monotone(const ScalarFn& f, double target,
                                        double seed, const Interval& domain,
                                        int max_steps) {
  double lo = seed, hi = seed;
  double flo, fhi;
  if (!probe(f, seed, flo)) return std::nullopt;
  fhi = flo;

  double step = 0.5 * std::max(1.0, std::abs(seed));
  bool lo_stuck = false, hi_stuck = false;
  for (int i = 0; i < max_steps; ++i) {
    if (std::min(flo, fhi) <= target && target <= std::max(flo, fhi))
      return Bracket{lo, hi};
    if (lo_stuck && hi_stuck) break;

    if (!lo_stuck) {
      const double cand = domain.bounded_below()
                              ? domain.lo + 0.5 * (lo - domain.lo)
                              : lo - step;
      double x = lo, fx = flo;
      if (cand < lo && advance(f, lo, cand, x, fx)) {
        lo = x;
        flo = fx;
      } else {
        lo_stuck = true;
      }
    }
    if (!hi_stuck) {
      const double cand = domain.bounded_above()
                              ? domain.hi - 0.5 * (domain.hi - hi)
                              : hi + step;
      double x = hi, fx = fhi;
      if (cand > hi && advance(f, hi, cand, x, fx)) {
        hi = x;
        fhi = fx;
      } else {
        hi_stuck = true;
      }
    }
    step *= 2.0;
  }
  if (std::min(flo, fhi) <= target && target <= std::max(flo, fhi))
    return Bracket{lo, hi};
  return std::nullopt;
}

MinResult golden_section_min(const ScalarFn& f, double lo, double hi,
                             double x_tol, int max_iter) {
  if (!(lo <= hi)) throw Error("golden_section_min: empty interval");
  constexpr double kInvPhi = 0.6180339887498949;  // 1/phi

  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  int it = 0;
  while (hi - lo > x_tol && it < max_iter) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
    ++it;
  }
  const double xm = 0.5 * (lo + hi);
  return {xm, f(xm), it};
}

}  // namespace meanscale

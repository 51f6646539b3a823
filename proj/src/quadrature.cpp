#include "meanscale/quadrature.hpp"

#include <cmath>

#include "meanscale/errors.hpp"

namespace meanscale {

namespace {

using Fn = std::function<double(double)>;

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

// One adaptive step over [a, b] with midpoint m and whole-interval estimate
// s. `force` demands further splitting regardless of the error estimate, so
// deceptively symmetric integrands cannot terminate on the first probe.
double refine(const Fn& f, double a, double fa, double m, double fm, double b,
              double fb, double s, double tol, long& budget, int depth,
              int force) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double sl = simpson(fa, flm, fm, m - a);
  const double sr = simpson(fm, frm, fb, b - m);
  const double s2 = sl + sr;
  if (!std::isfinite(s2))
    throw QuadratureFailure("adaptive_simpson: non-finite integrand");
  if (force <= 0 && std::abs(s2 - s) <= 15.0 * tol)
    return s2 + (s2 - s) / 15.0;
  if (depth <= 0 || budget <= 0)
    throw QuadratureFailure(
        "adaptive_simpson: tolerance not met within the subdivision cap");
  budget -= 2;
  const double half = 0.5 * tol;
  return refine(f, a, fa, lm, flm, m, fm, sl, half, budget, depth - 1,
                force - 1) +
         refine(f, m, fm, rm, frm, b, fb, sr, half, budget, depth - 1,
                force - 1);
}

}  // namespace

double adaptive_simpson(const Fn& f, double a, double b, double abs_tol,
                        long max_intervals) {
  if (a == b) return 0.0;
  const double sign = (a < b) ? 1.0 : -1.0;
  if (a > b) std::swap(a, b);

  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
    throw QuadratureFailure("adaptive_simpson: non-finite integrand");

  long budget = max_intervals;
  const double s = simpson(fa, fm, fb, b - a);
  // depth 48 halvings exhausts double spacing long before the budget does
  return sign * refine(f, a, fa, m, fm, b, fb, s, abs_tol, budget, 48, 3);
}

}  // namespace meanscale

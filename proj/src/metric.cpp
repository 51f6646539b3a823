#include "meanscale/metric.hpp"

#include <algorithm>
#include <cmath>

#include "meanscale/rootfind.hpp"

namespace meanscale {

double GeneratorDistance::operator()(double x, double y) const {
  const double d = std::abs(gen_.forward(x) - gen_.forward(y));
  if (std::isnan(d))
    throw OutOfDomain("generator overflowed at both distance arguments");
  return d;
}

bool is_midpoint(const GeneratorDistance& d, double a, double b, double c,
                 double rel_tol) {
  if (!(a < b)) throw DegenerateInterval("is_midpoint needs a < b");
  const double dab = d(a, b);
  const double dac = d(a, c);
  const double dcb = d(c, b);
  return std::abs(dac - dcb) <= rel_tol * dab;
}

double frechet_mean_closed(const Generator& gen, double a, double b) {
  return qam_eval(gen, a, b);
}

double frechet_mean_numeric(const GeneratorDistance& d, double a, double b) {
  if (a > b) std::swap(a, b);
  if (a == b) return a;
  const double dab = d(a, b);
  // normalizing by d(a,b) keeps the objective O(1) however large h gets
  auto objective = [&](double x) {
    const double p = d(a, x) / dab;
    const double q = d(x, b) / dab;
    return p * p + q * q;
  };

  constexpr int kGrid = 1024;
  int best = 0;
  double best_value = objective(a);
  for (int i = 1; i < kGrid; ++i) {
    const double x = a + (b - a) * (static_cast<double>(i) / (kGrid - 1));
    const double v = objective(x);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo =
      a + (b - a) * (static_cast<double>(std::max(0, best - 1)) / (kGrid - 1));
  const double hi =
      a + (b - a) *
              (static_cast<double>(std::min(kGrid - 1, best + 1)) / (kGrid - 1));
  return golden_section_min(objective, lo, hi, 1e-9 * (b - a)).x;
}

}  // namespace meanscale

#pragma once

#include <utility>

#include "meanscale/generator.hpp"

namespace meanscale {

/// The metric distance d_h(x, y) = |h(x) - h(y)| induced by a generator.
/// Additive along the line: d(a,x) + d(x,b) = d(a,b) for x between a and b.
class GeneratorDistance {
 public:
  explicit GeneratorDistance(Generator gen) : gen_(std::move(gen)) {}

  double operator()(double x, double y) const;

  const Generator& generator() const noexcept { return gen_; }

 private:
  Generator gen_;
};

inline double distance(const GeneratorDistance& d, double x, double y) {
  return d(x, y);
}

/// True iff |d(a,c) - d(c,b)| <= rel_tol * d(a,b). Throws DegenerateInterval
/// when a >= b, OutOfDomain when any point is outside the generator domain.
bool is_midpoint(const GeneratorDistance& d, double a, double b, double c,
                 double rel_tol);

/// The closed-form Frechet mean under d_h: the quasi-arithmetic mean
/// m_h(a, b). Satisfies is_midpoint at 1e-10.
double frechet_mean_closed(const Generator& gen, double a, double b);

/// Independent oracle: minimizes d^2(a,x) + d^2(x,b) over [a, b] by a
/// 1024-point grid scan followed by golden-section refinement. Agrees with
/// frechet_mean_closed to 1e-6; never evaluates outside [a, b].
double frechet_mean_numeric(const GeneratorDistance& d, double a, double b);

}  // namespace meanscale

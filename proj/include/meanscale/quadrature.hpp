#pragma once

#include <functional>

namespace meanscale {

/// Signed integral of f over [a, b] by adaptive Simpson subdivision with
/// Richardson correction. abs_tol is the absolute error target for the whole
/// integral; max_intervals caps the total number of subdivisions. Throws
/// QuadratureFailure when the cap is reached or the integrand turns
/// non-finite.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol = 1e-10,
                        long max_intervals = 1000000);

}  // namespace meanscale

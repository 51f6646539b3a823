#pragma once

#include <functional>
#include <optional>

#include "meanscale/interval.hpp"

namespace meanscale {

using ScalarFn = std::function<double(double)>;

struct RootResult {
  double x = 0.0;
  int iterations = 0;
};

/// Brent's method on a sign-changing bracket [a, b].
///
/// Stops when the bracket collapses to rel_tol * |x| (plus a small absolute
/// floor) or |f(x)| <= f_tol, whichever happens first. Throws Error if the
/// endpoints do not straddle a root or the iteration cap is hit.
RootResult brent_root(const ScalarFn& f, double a, double b,
                      double rel_tol = 1e-12, double f_tol = 0.0,
                      int max_iter = 200);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// Grows a bracket around `seed` until f(lo) and f(hi) straddle `target`.
///
/// Assumes f is monotone on `domain` (either direction). Unbounded sides
/// advance by doubling steps; finite sides approach the open endpoint
/// geometrically. Probe points where f is non-finite or throws a domain
/// error are pulled back toward the last good point, so the returned
/// endpoints always carry finite values. Returns nullopt when the target is
/// not attained within max_steps expansions.
std::optional<Bracket> bracket_monotone(const ScalarFn& f, double target,
                                        double seed, const Interval& domain,
                                        int max_steps = 120);

struct MinResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section minimization of a unimodal f on [lo, hi] down to the
/// requested absolute bracket width.
MinResult golden_section_min(const ScalarFn& f, double lo, double hi,
                             double x_tol = 1e-8, int max_iter = 400);

}  // namespace meanscale

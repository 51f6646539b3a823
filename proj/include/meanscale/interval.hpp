#pragma once

#include <cmath>
#include <limits>

namespace meanscale {

/// Open interval (lo, hi) on the extended real line. Endpoints may be
/// infinite; membership is always strict and requires a finite point.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double u) const noexcept {
    return std::isfinite(u) && u > lo && u < hi;
  }

  bool bounded_below() const noexcept { return std::isfinite(lo); }
  bool bounded_above() const noexcept { return std::isfinite(hi); }

  static Interval real() noexcept { return {}; }
  static Interval positive() noexcept {
    return {0.0, std::numeric_limits<double>::infinity()};
  }
};

/// Finite sub-window on which sampling certificates (monotonicity,
/// convexity) run. A doubly infinite interval is clamped to [-100, 100];
/// a half-infinite one extends max(200, 2|endpoint|) past its finite end,
/// so exp-like maps stay representable across the whole window.
inline Interval certification_window(const Interval& iv) noexcept {
  if (!iv.bounded_below() && !iv.bounded_above()) return {-100.0, 100.0};
  if (iv.bounded_below() && !iv.bounded_above())
    return {iv.lo, iv.lo + std::max(200.0, 2.0 * std::abs(iv.lo))};
  if (!iv.bounded_below() && iv.bounded_above())
    return {iv.hi - std::max(200.0, 2.0 * std::abs(iv.hi)), iv.hi};
  return iv;
}

}  // namespace meanscale

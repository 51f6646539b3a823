#pragma once

#include <functional>
#include <optional>
#include <string>

#include "meanscale/generator.hpp"

namespace meanscale {

enum class ScaleDirection { IncreasingScale, DecreasingScale };

/// One-parameter family alpha -> Generator whose means sweep continuously
/// and strictly monotonically between min(a,b) and max(a,b).
///
/// The parameter is a plain real for every family. The radical family is
/// addressed by t = ln(alpha), so its admissible raw alpha in (0, inf) maps
/// onto all of R with the special (harmonic) value at t = 0.
class ScaleFamily {
 public:
  using Factory = std::function<Generator(double)>;

  ScaleFamily(std::string name, Factory make,
              std::optional<ScaleDirection> direction, Interval param_domain)
      : name_(std::move(name)),
        make_(std::move(make)),
        direction_(direction),
        param_domain_(param_domain) {}

  Generator make(double alpha) const { return make_(alpha); }

  const std::string& name() const noexcept { return name_; }
  std::optional<ScaleDirection> direction() const noexcept {
    return direction_;
  }
  const Interval& param_domain() const noexcept { return param_domain_; }

  /// Domain the member means operate on ((0,inf) for power/radical, R for
  /// exponential).
  Interval value_domain() const { return make_(0.0).domain(); }

  static ScaleFamily power();
  static ScaleFamily exponential();
  static ScaleFamily radical();

  /// Family s_alpha(u) = s(alpha * u) built from an expression for s. The
  /// expression domain must be all of R, otherwise the member domains would
  /// vary with alpha. Direction is left undeclared and inferred by
  /// check_scale.
  static ScaleFamily custom(const expr::ExprAst& s);

 private:
  std::string name_;
  Factory make_;
  std::optional<ScaleDirection> direction_;
  Interval param_domain_;
};

struct ScaleCheckViolation {
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  double mean_lo = 0.0;
  double mean_hi = 0.0;
};

struct ScaleCheckReport {
  std::optional<ScaleDirection> declared;
  ScaleDirection observed = ScaleDirection::IncreasingScale;
  bool monotone = false;
  std::optional<ScaleCheckViolation> violation;
  double mean_min = 0.0;
  double mean_max = 0.0;
  int samples = 0;

  bool ok() const {
    return monotone && (!declared.has_value() || *declared == observed);
  }
};

/// Sweeps m_alpha(a, b) over a symmetric log-spaced grid
/// (alpha in -[1e3, 1e-3], 0, [1e-3, 1e3]) with `samples` points and checks
/// strict monotonicity in alpha. samples must be >= 8.
ScaleCheckReport check_scale(const ScaleFamily& fam, double a, double b,
                             int samples);

struct SolveReport {
  double alpha = 0.0;          // solved parameter (family coordinate)
  double achieved_mean = 0.0;  // m_alpha(a, b)
  double residual = 0.0;       // |achieved_mean - c|
  int iterations = 0;          // mean evaluations spent
  double bracket_lo = 0.0;     // final parameter bracket
  double bracket_hi = 0.0;
};

/// Parameter cap for the bracket search. Targets needing |alpha| beyond it
/// raise BracketExhausted instead of returning a silently inaccurate alpha.
inline constexpr double kSolveAlphaMax = 1e6;

/// Finds alpha with |m_alpha(a, b) - c| <= tol by expanding bracket
/// doubling followed by Brent refinement. tol is on the mean value, not on
/// alpha. If the special parameter alpha = 0 already meets tol, it is
/// returned exactly. Throws TargetOutOfInterval when c is not strictly
/// inside (a, b), BracketExhausted when no sign change appears within
/// |alpha| <= 1e6.
SolveReport solve_parameter(const ScaleFamily& fam, double a, double b,
                            double c, double tol);

struct LimitProbe {
  double at_negative = 0.0;  // m_{-alpha_big}(a, b)
  double at_positive = 0.0;  // m_{+alpha_big}(a, b)
};

/// Means at the two extreme parameters +-alpha_big, evaluated through the
/// stable paths. For the exponential family the gaps to min/max equal
/// log(2)/alpha_big up to e^{-alpha_big |a-b|} corrections.
LimitProbe limit_probe(const ScaleFamily& fam, double a, double b,
                       double alpha_big);

}  // namespace meanscale

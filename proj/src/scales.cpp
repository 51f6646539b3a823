#include "meanscale/scales.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <utility>
#include <vector>

#include "meanscale/rootfind.hpp"

namespace meanscale {

namespace {

std::string num(double v) {
  // 12 digits so near-endpoint targets do not round onto the endpoint
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

using expr::Node;
using expr::NodePtr;

// rewrites every occurrence of u as (alpha * u), sharing untouched subtrees
NodePtr substitute_scaled(const NodePtr& n, double alpha) {
  switch (n->kind) {
    case Node::Kind::Number:
      return n;
    case Node::Kind::Variable: {
      auto coeff = std::make_shared<Node>();
      coeff->kind = Node::Kind::Number;
      coeff->number = alpha;
      auto mul = std::make_shared<Node>();
      mul->kind = Node::Kind::Binary;
      mul->op = expr::BinaryOp::Mul;
      mul->lhs = coeff;
      mul->rhs = n;
      return mul;
    }
    default: {
      NodePtr lhs = n->lhs ? substitute_scaled(n->lhs, alpha) : nullptr;
      NodePtr rhs = n->rhs ? substitute_scaled(n->rhs, alpha) : nullptr;
      if (lhs == n->lhs && rhs == n->rhs) return n;
      auto copy = std::make_shared<Node>(*n);
      copy->lhs = std::move(lhs);
      copy->rhs = std::move(rhs);
      return copy;
    }
  }
}

void require_points(const ScaleFamily& fam, double a, double b) {
  const Interval dom = fam.value_domain();
  if (!dom.contains(a) || !dom.contains(b))
    throw OutOfDomain("points " + num(a) + ", " + num(b) +
                      " are not inside the " + fam.name() + " value domain");
  if (a == b)
    throw DegenerateInterval("scale operations need two distinct points");
}

// symmetric log-spaced parameter sweep: -[1e3 .. 1e-3], 0, [1e-3 .. 1e3]
std::vector<double> parameter_grid(int samples) {
  const int n_neg = (samples - 1) / 2;
  const int n_pos = samples - 1 - n_neg;
  std::vector<double> grid;
  grid.reserve(samples);
  for (int i = 0; i < n_neg; ++i) {
    const double e = 3.0 - 6.0 * i / (n_neg - 1);
    grid.push_back(-std::pow(10.0, e));
  }
  grid.push_back(0.0);
  for (int i = 0; i < n_pos; ++i) {
    const double e = -3.0 + 6.0 * i / (n_pos - 1);
    grid.push_back(std::pow(10.0, e));
  }
  return grid;
}

}  // namespace

ScaleFamily ScaleFamily::power() {
  return ScaleFamily("power", [](double p) { return make_power_generator(p); },
                     ScaleDirection::IncreasingScale, Interval::real());
}

ScaleFamily ScaleFamily::exponential() {
  return ScaleFamily("exponential",
                     [](double a) { return make_exponential_generator(a); },
                     ScaleDirection::IncreasingScale, Interval::real());
}

ScaleFamily ScaleFamily::radical() {
  return ScaleFamily("radical",
                     [](double t) { return make_radical_generator_log(t); },
                     ScaleDirection::DecreasingScale, Interval::real());
}

ScaleFamily ScaleFamily::custom(const expr::ExprAst& s) {
  // certifies s itself once; the members s(alpha u) reuse that certificate
  // (alpha only rescales the axis), so their construction never re-samples
  // a window that alpha may have pushed out of range
  const Direction s_dir =
      make_custom_generator(s, Interval::real()).direction();
  auto factory = [s, s_dir](double alpha) -> Generator {
    // s(alpha u) -> s(0) + alpha s'(0) u as alpha -> 0: affine, so the
    // member at the special value is the arithmetic mean
    if (std::abs(alpha) <= kSpecialParamTol) return identity_generator();
    expr::ExprAst scaled(substitute_scaled(s.root(), alpha));
    const Direction dir = (alpha > 0) == (s_dir == Direction::Increasing)
                              ? Direction::Increasing
                              : Direction::Decreasing;
    auto forward = [scaled](double u) { return scaled.eval(u); };
    auto inverse = [scaled](double v) {
      auto f = [&scaled](double u) { return scaled.eval(u); };
      const auto br = bracket_monotone(f, v, 0.0, Interval::real());
      if (!br)
        throw OutOfDomain("value " + num(v) +
                          " is not attained by the scaled expression");
      return brent_root([&](double u) { return scaled.eval(u) - v; }, br->lo,
                        br->hi)
          .x;
    };
    return Generator(std::move(forward), std::move(inverse), Interval::real(),
                     dir);
  };
  return ScaleFamily("custom", std::move(factory), std::nullopt,
                     Interval::real());
}

ScaleCheckReport check_scale(const ScaleFamily& fam, double a, double b,
                             int samples) {
  if (samples < 8) throw Error("check_scale needs samples >= 8");
  require_points(fam, a, b);

  const std::vector<double> grid = parameter_grid(samples);
  std::vector<double> means(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    means[i] = fam.make(grid[i]).mean(a, b);

  ScaleCheckReport rep;
  rep.declared = fam.direction();
  rep.samples = static_cast<int>(grid.size());
  rep.mean_min = *std::min_element(means.begin(), means.end());
  rep.mean_max = *std::max_element(means.begin(), means.end());

  const bool up = means.back() > means.front();
  rep.observed =
      up ? ScaleDirection::IncreasingScale : ScaleDirection::DecreasingScale;
  rep.monotone = true;
  for (std::size_t i = 0; i + 1 < means.size(); ++i) {
    const bool ok = up ? means[i + 1] > means[i] : means[i + 1] < means[i];
    if (!ok) {
      rep.monotone = false;
      rep.violation =
          ScaleCheckViolation{grid[i], grid[i + 1], means[i], means[i + 1]};
      break;
    }
  }
  return rep;
}

SolveReport solve_parameter(const ScaleFamily& fam, double a, double b,
                            double c, double tol) {
  require_points(fam, a, b);
  if (!(tol > 0.0)) throw Error("solve_parameter needs tol > 0");
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (!(c > lo && c < hi))
    throw TargetOutOfInterval("target " + num(c) +
                              " is not strictly inside (" + num(lo) + ", " +
                              num(hi) + ")");

  int evals = 0;
  auto phi = [&](double alpha) {
    ++evals;
    return fam.make(alpha).mean(a, b) - c;
  };

  SolveReport rep;
  const double phi0 = phi(0.0);
  if (std::abs(phi0) <= tol) {
    // snap: anywhere inside the special-parameter plateau solves it, so
    // report the canonical alpha = 0 exactly
    rep.alpha = 0.0;
    rep.achieved_mean = phi0 + c;
    rep.residual = std::abs(phi0);
    rep.iterations = evals;
    return rep;
  }

  // expand |alpha| geometrically on one side until phi changes sign; a
  // probe already within tol is accepted on the spot (targets close to an
  // endpoint can meet tol without a crossing)
  struct Probe {
    double alpha = 0.0;
    double phi = 0.0;
  };
  std::optional<Probe> hit;
  auto scan = [&](double side) -> std::optional<std::pair<Probe, Probe>> {
    Probe prev{0.0, phi0};
    double step = 1.0;
    for (;;) {
      Probe cur{side * std::min(step, kSolveAlphaMax), 0.0};
      cur.phi = phi(cur.alpha);
      if (std::abs(cur.phi) <= tol) {
        hit = cur;
        return std::nullopt;
      }
      if ((prev.phi > 0.0) != (cur.phi > 0.0)) return std::pair{prev, cur};
      if (std::abs(cur.alpha) >= kSolveAlphaMax) return std::nullopt;
      prev = cur;
      step *= 2.0;
    }
  };

  // the root lies on the side where the mean moves toward c; probe alpha=1
  // to guess it and fall back to the other side if the guess scans dry
  const double first = std::abs(phi(1.0)) < std::abs(phi0) ? 1.0 : -1.0;
  auto bracket = scan(first);
  if (!bracket && !hit) bracket = scan(-first);
  if (hit) {
    rep.alpha = hit->alpha;
    rep.achieved_mean = hit->phi + c;
    rep.residual = std::abs(hit->phi);
    rep.iterations = evals;
    rep.bracket_lo = rep.bracket_hi = hit->alpha;
    return rep;
  }
  if (!bracket)
    throw BracketExhausted("no parameter in |alpha| <= " + num(kSolveAlphaMax) +
                           " attains mean " + num(c) +
                           "; the target is too close to an endpoint");

  rep.bracket_lo = std::min(bracket->first.alpha, bracket->second.alpha);
  rep.bracket_hi = std::max(bracket->first.alpha, bracket->second.alpha);
  const auto root =
      brent_root(phi, bracket->first.alpha, bracket->second.alpha, 1e-15, tol);
  rep.alpha = root.x;
  rep.achieved_mean = fam.make(root.x).mean(a, b);
  ++evals;
  rep.residual = std::abs(rep.achieved_mean - c);
  rep.iterations = evals;
  return rep;
}

LimitProbe limit_probe(const ScaleFamily& fam, double a, double b,
                       double alpha_big) {
  require_points(fam, a, b);
  if (!(alpha_big > 0.0)) throw Error("limit_probe needs alpha_big > 0");
  LimitProbe probe;
  probe.at_negative = fam.make(-alpha_big).mean(a, b);
  probe.at_positive = fam.make(alpha_big).mean(a, b);
  return probe;
}

}  // namespace meanscale

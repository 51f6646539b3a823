#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "meanscale/duality.hpp"
#include "meanscale/expr.hpp"
#include "meanscale/generator.hpp"
#include "meanscale/metric.hpp"
#include "meanscale/scales.hpp"

namespace {

// %.17g round-trips doubles exactly through text
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* direction_name(meanscale::ScaleDirection d) {
  return d == meanscale::ScaleDirection::IncreasingScale ? "IncreasingScale"
                                                         : "DecreasingScale";
}

meanscale::expr::ExprAst parse_required_expr(const std::string& text,
                                             const char* who) {
  if (text.empty())
    throw meanscale::Error(std::string(who) + " needs --expr");
  return meanscale::expr::parse(text);
}

meanscale::ScaleFamily family_from(const std::string& name,
                                   const std::string& expr_text) {
  using meanscale::ScaleFamily;
  if (name == "power") return ScaleFamily::power();
  if (name == "exponential") return ScaleFamily::exponential();
  if (name == "radical") return ScaleFamily::radical();
  return ScaleFamily::custom(parse_required_expr(expr_text, "--family custom"));
}

// eval addresses one member directly, so the radical parameter is the raw
// alpha > 0 here; solve/scan/check-scale sweep the family coordinate
// t = ln(alpha) instead
meanscale::Generator eval_generator(const std::string& name, double alpha,
                                    const std::string& expr_text) {
  if (name == "power") return meanscale::make_power_generator(alpha);
  if (name == "exponential") return meanscale::make_exponential_generator(alpha);
  if (name == "radical") return meanscale::make_radical_generator(alpha);
  return meanscale::ScaleFamily::custom(
             parse_required_expr(expr_text, "--family custom"))
      .make(alpha);
}

meanscale::ConvexPotential make_potential(const std::string& name,
                                          const std::string& expr_text) {
  using meanscale::ConvexPotential;
  if (name == "exp") return ConvexPotential::exponential();
  if (name == "quadratic") return ConvexPotential::quadratic();
  auto ast = parse_required_expr(expr_text, "--potential custom");
  return ConvexPotential::from_function(
      [ast](double theta) { return ast.eval(theta); },
      meanscale::Interval::real());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-arithmetic means, generator metrics, and dual scales"};
  app.require_subcommand(1);

  std::string family, expr_text, potential_name, out_path;
  double alpha = 0.0, x = 0.0, y = 0.0, a = 0.0, b = 0.0, c = 0.0;
  double tol = 1e-12, alpha_min = -5.0, alpha_max = 5.0;
  int steps = 101, samples = 64;
  bool log_spacing = false;

  const std::vector<std::string> families{"power", "exponential", "radical",
                                          "custom"};

  auto* cmd_eval =
      app.add_subcommand("eval", "mean of x and y under one family member");
  cmd_eval->add_option("--family", family, "mean family")
      ->required()
      ->check(CLI::IsMember(families));
  cmd_eval
      ->add_option("--alpha", alpha,
                   "family parameter; the radical family takes its raw "
                   "alpha > 0 here (alpha = 1 is harmonic)")
      ->required();
  cmd_eval->add_option("--x", x, "first point")->required();
  cmd_eval->add_option("--y", y, "second point")->required();
  cmd_eval->add_option("--expr", expr_text,
                       "expression s(u) for --family custom; the member "
                       "generator is s(alpha*u)");

  auto* cmd_solve = app.add_subcommand(
      "solve", "find the parameter whose mean of (a, b) equals c");
  cmd_solve->add_option("--family", family, "mean family")
      ->required()
      ->check(CLI::IsMember(families));
  cmd_solve->add_option("--a", a, "left endpoint")->required();
  cmd_solve->add_option("--b", b, "right endpoint")->required();
  cmd_solve->add_option("--c", c, "target mean, strictly inside (a, b)")
      ->required();
  cmd_solve
      ->add_option("--tol", tol, "residual tolerance on the achieved mean")
      ->capture_default_str();
  cmd_solve->add_option("--expr", expr_text,
                        "expression s(u) for --family custom");

  auto* cmd_scan = app.add_subcommand(
      "scan", "CSV sweep of the mean across a parameter range");
  cmd_scan->add_option("--family", family, "mean family")
      ->required()
      ->check(CLI::IsMember(families));
  cmd_scan->add_option("--a", a, "first point")->required();
  cmd_scan->add_option("--b", b, "second point")->required();
  cmd_scan
      ->add_option("--alpha-min", alpha_min,
                   "lowest parameter (t = ln(alpha) for radical)")
      ->capture_default_str();
  cmd_scan->add_option("--alpha-max", alpha_max, "highest parameter")
      ->capture_default_str();
  cmd_scan->add_option("--steps", steps, "row count, at least 2")
      ->capture_default_str();
  cmd_scan->add_flag("--log", log_spacing,
                     "log-uniform spacing (needs alpha-min > 0)");
  cmd_scan->add_option("--out", out_path,
                       "output path (standard output when absent)");
  cmd_scan->add_option("--expr", expr_text,
                       "expression s(u) for --family custom");

  auto* cmd_check = app.add_subcommand(
      "check-scale", "verify strict parameter monotonicity of a family");
  cmd_check->add_option("--family", family, "mean family")
      ->required()
      ->check(CLI::IsMember(families));
  cmd_check->add_option("--a", a, "first point")->required();
  cmd_check->add_option("--b", b, "second point")->required();
  cmd_check->add_option("--samples", samples, "grid size, at least 8")
      ->capture_default_str();
  cmd_check->add_option("--expr", expr_text,
                        "expression s(u) for --family custom");

  auto* cmd_dual = app.add_subcommand(
      "dual", "check primal/dual mean consistency for a convex potential");
  cmd_dual->add_option("--potential", potential_name, "convex potential")
      ->required()
      ->check(CLI::IsMember({"exp", "quadratic", "custom"}));
  cmd_dual->add_option("--a", a, "first theta point")->required();
  cmd_dual->add_option("--b", b, "second theta point")->required();
  cmd_dual->add_option("--expr", expr_text,
                       "expression f(u) for --potential custom");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_eval->parsed()) {
      const meanscale::Generator gen = eval_generator(family, alpha, expr_text);
      std::cout << fmt(gen.mean(x, y)) << "\n";
      return 0;
    }

    if (cmd_solve->parsed()) {
      const meanscale::ScaleFamily fam = family_from(family, expr_text);
      const meanscale::SolveReport rep =
          meanscale::solve_parameter(fam, a, b, c, tol);
      std::cout << "alpha " << fmt(rep.alpha) << "\n"
                << "mean " << fmt(rep.achieved_mean) << "\n"
                << "residual " << fmt(rep.residual) << "\n"
                << "iterations " << rep.iterations << "\n";
      return 0;
    }

    if (cmd_scan->parsed()) {
      if (steps < 2) throw meanscale::Error("scan needs --steps >= 2");
      if (!(alpha_min < alpha_max))
        throw meanscale::Error("scan needs --alpha-min < --alpha-max");
      if (log_spacing && !(alpha_min > 0.0))
        throw meanscale::Error("--log spacing needs --alpha-min > 0");
      const meanscale::ScaleFamily fam = family_from(family, expr_text);

      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file)
          throw meanscale::Error("cannot open output file " + out_path);
      }
      std::ostream& os = out_path.empty() ? std::cout : file;

      os << "alpha,mean\n";
      for (int i = 0; i < steps; ++i) {
        const double w = static_cast<double>(i) / (steps - 1);
        double al;
        if (i == steps - 1) {
          al = alpha_max;
        } else if (log_spacing) {
          al = std::exp(std::log(alpha_min) +
                        w * (std::log(alpha_max) - std::log(alpha_min)));
        } else {
          al = alpha_min + w * (alpha_max - alpha_min);
        }
        os << fmt(al) << ',' << fmt(fam.make(al).mean(a, b)) << "\n";
      }
      if (!out_path.empty() && !file)
        throw meanscale::Error("write to " + out_path + " failed");
      return 0;
    }

    if (cmd_check->parsed()) {
      const meanscale::ScaleFamily fam = family_from(family, expr_text);
      const meanscale::ScaleCheckReport rep =
          meanscale::check_scale(fam, a, b, samples);
      std::cout << "observed " << direction_name(rep.observed) << "\n"
                << "declared "
                << (rep.declared ? direction_name(*rep.declared) : "none")
                << "\n"
                << "monotone " << (rep.monotone ? "yes" : "no") << "\n"
                << "samples " << rep.samples << "\n"
                << "mean_min " << fmt(rep.mean_min) << "\n"
                << "mean_max " << fmt(rep.mean_max) << "\n";
      if (rep.violation) {
        std::cout << "violation alpha [" << fmt(rep.violation->alpha_lo)
                  << ", " << fmt(rep.violation->alpha_hi) << "] mean ["
                  << fmt(rep.violation->mean_lo) << ", "
                  << fmt(rep.violation->mean_hi) << "]\n";
      }
      return rep.ok() ? 0 : 4;
    }

    if (cmd_dual->parsed()) {
      const meanscale::ConvexPotential pot =
          make_potential(potential_name, expr_text);
      const meanscale::DualMeanReport rep =
          meanscale::dual_mean_check(pot, a, b);
      std::cout << "theta_mean " << fmt(rep.theta_mean) << "\n"
                << "eta_mean " << fmt(rep.eta_mean) << "\n"
                << "transported_eta " << fmt(rep.transported_eta) << "\n"
                << "eta_residual " << fmt(rep.eta_residual) << "\n"
                << "arc_residual " << fmt(rep.arc_residual) << "\n";
      return rep.consistent() ? 0 : 5;
    }
  } catch (const meanscale::BracketExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

// mlqsl: command-line front end for the Margolus-Levitin speed-limit
// library. Subcommands: alpha, table, saturate, verify, bench.
//
// Exit codes: 0 success, 1 non-convergence or bound violations,
// 2 invalid input or usage error.

#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mlqsl/alpha.hpp"
#include "mlqsl/oracle.hpp"
#include "mlqsl/report.hpp"
#include "mlqsl/saturate.hpp"

namespace {

struct OutputSpec {
  std::string format = "pretty";
  std::string path;
  int precision = 12;
};

void add_output_flags(CLI::App& cmd, OutputSpec& spec) {
  cmd.add_option("--format", spec.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "pretty"}))
      ->capture_default_str();
  cmd.add_option("--output", spec.path, "Write to this file instead of stdout");
  cmd.add_option("--precision", spec.precision, "Significant digits (csv and pretty)")
      ->check(CLI::Range(4, 17))
      ->capture_default_str();
}

int emit(const OutputSpec& spec, const std::string& text) {
  if (spec.path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream out(spec.path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open '%s' for writing\n", spec.path.c_str());
    return 2;
  }
  out << text;
  return out.good() ? 0 : 2;
}

mlqsl::MethodSet parse_methods(const std::string& csv) {
  mlqsl::MethodSet set;
  size_t pos = 0;
  while (pos <= csv.size()) {
    const size_t comma = csv.find(',', pos);
    const std::string name =
        csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (name == "lower") {
      set.lower = true;
    } else if (name == "upper") {
      set.upper = true;
    } else if (name == "newton") {
      set.newton = true;
    } else if (name == "glm") {
      set.glm = true;
    } else {
      throw std::invalid_argument("unknown method '" + name +
                                  "' (expected lower, upper, newton, glm)");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return set;
}

std::vector<double> linear_grid(double start, double stop, int steps) {
  if (!(start <= stop)) throw std::invalid_argument("table: need start <= stop");
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(steps));
  if (steps == 1) {
    grid.push_back(start);
    return grid;
  }
  for (int i = 0; i < steps; ++i) {
    grid.push_back(start + (stop - start) * static_cast<double>(i) /
                               static_cast<double>(steps - 1));
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Margolus-Levitin quantum-speed-limit toolkit"};
  app.require_subcommand(1);

  mlqsl::RootConfig root_cfg;

  // alpha
  double a_eps = 0.0;
  std::string a_method = "newton";
  double a_glm_p = 0.5;
  OutputSpec a_spec;
  CLI::App* alpha_cmd = app.add_subcommand("alpha", "Evaluate alpha(epsilon) by one backend");
  alpha_cmd->add_option("--epsilon", a_eps, "Squared overlap in [0,1]")->required();
  alpha_cmd->add_option("--method", a_method, "Backend")
      ->check(CLI::IsMember({"lower", "upper", "newton", "glm"}))
      ->capture_default_str();
  CLI::Option* glm_p_opt = alpha_cmd->add_option(
      "--glm-p", a_glm_p,
      "Use the Newton variant of the glm backend, seeded at p*s + (1-p)/2");
  alpha_cmd->add_option("--abs-tol", root_cfg.abs_tol, "Residual tolerance")
      ->capture_default_str();
  alpha_cmd->add_option("--rel-tol", root_cfg.rel_tol, "Step or width tolerance")
      ->capture_default_str();
  alpha_cmd->add_option("--max-iter", root_cfg.max_iter, "Iteration cap")
      ->capture_default_str();
  add_output_flags(*alpha_cmd, a_spec);

  // table
  double t_start = 0.0, t_stop = 1.0;
  int t_steps = 11;
  std::string t_methods = "lower,upper,newton,glm";
  OutputSpec t_spec;
  CLI::App* table_cmd = app.add_subcommand("table", "Tabulate alpha over an epsilon grid");
  table_cmd->add_option("--start", t_start, "First epsilon")->capture_default_str();
  table_cmd->add_option("--stop", t_stop, "Last epsilon")->capture_default_str();
  table_cmd->add_option("--steps", t_steps, "Grid size")
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  table_cmd->add_option("--methods", t_methods, "Comma-separated backend list")
      ->capture_default_str();
  add_output_flags(*table_cmd, t_spec);

  // saturate
  double s_eps = 0.0;
  OutputSpec s_spec;
  CLI::App* saturate_cmd =
      app.add_subcommand("saturate", "Construct the bound-saturating two-level state");
  saturate_cmd->add_option("--epsilon", s_eps, "Squared overlap in [0,1)")->required();
  add_output_flags(*saturate_cmd, s_spec);

  // verify
  mlqsl::OracleConfig oracle_cfg;
  OutputSpec v_spec;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Check the bound against random finite systems");
  verify_cmd->add_option("--seed", oracle_cfg.seed, "Random stream seed")
      ->capture_default_str();
  verify_cmd->add_option("--samples", oracle_cfg.samples, "Number of random systems")
      ->capture_default_str();
  verify_cmd->add_option("--levels", oracle_cfg.max_levels, "Largest level count")
      ->capture_default_str();
  verify_cmd->add_option("--scale", oracle_cfg.energy_scale, "Energy scale")
      ->capture_default_str();
  verify_cmd->add_option("--eps", oracle_cfg.eps_grid, "Epsilon grid")
      ->expected(-1);
  add_output_flags(*verify_cmd, v_spec);

  // bench
  std::vector<double> b_grid;
  int b_reps = 15;
  OutputSpec b_spec;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time the four backends");
  bench_cmd->add_option("--eps", b_grid, "Epsilon grid (default 0.05..0.95)")
      ->expected(-1);
  bench_cmd->add_option("--reps", b_reps, "Repetition sweeps per backend")
      ->capture_default_str();
  add_output_flags(*bench_cmd, b_spec);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(alpha_cmd)) {
      if (glm_p_opt->count() > 0 && a_method != "glm") {
        std::fprintf(stderr, "error: --glm-p requires --method glm\n");
        return 2;
      }
      const mlqsl::Fidelity eps(a_eps);
      mlqsl::AlphaResult result;
      if (a_method == "lower") {
        result = mlqsl::alpha_lower(eps, root_cfg);
      } else if (a_method == "upper") {
        result = mlqsl::alpha_upper(eps, root_cfg);
      } else if (a_method == "newton") {
        result = mlqsl::alpha_newton(eps, root_cfg);
      } else {
        const mlqsl::GlmRootMethod how = glm_p_opt->count() > 0
                                             ? mlqsl::GlmRootMethod::newton_guess(a_glm_p)
                                             : mlqsl::GlmRootMethod::brent();
        result = mlqsl::alpha_glm_legacy(eps, how, root_cfg);
      }
      std::string text;
      if (a_spec.format == "csv") {
        text = mlqsl::alpha_result_csv(result, a_spec.precision);
      } else if (a_spec.format == "json") {
        text = mlqsl::alpha_result_json(result);
      } else {
        text = mlqsl::alpha_result_pretty(result, a_spec.precision);
      }
      const int rc = emit(a_spec, text);
      if (rc != 0) return rc;
      if (!result.converged()) {
        std::fprintf(stderr, "alpha: %s did not converge (status %s after %d iterations)\n",
                     mlqsl::to_string(result.method), mlqsl::to_string(result.status),
                     result.iterations);
        return 1;
      }
      return 0;
    }

    if (app.got_subcommand(table_cmd)) {
      const mlqsl::MethodSet methods = parse_methods(t_methods);
      const std::vector<double> grid = linear_grid(t_start, t_stop, t_steps);
      const std::vector<mlqsl::AlphaRow> rows = mlqsl::alpha_table(grid, methods, root_cfg);
      std::string text;
      if (t_spec.format == "csv") {
        text = mlqsl::table_csv(rows, t_spec.precision);
      } else if (t_spec.format == "json") {
        text = mlqsl::table_json(rows);
      } else {
        text = mlqsl::table_pretty(rows, t_spec.precision);
      }
      const int rc = emit(t_spec, text);
      if (rc != 0) return rc;
      for (const mlqsl::AlphaRow& row : rows) {
        if (!row.ok) return 1;
      }
      return 0;
    }

    if (app.got_subcommand(saturate_cmd)) {
      const mlqsl::SaturationReport rep =
          mlqsl::saturation_report(mlqsl::Fidelity(s_eps), root_cfg);
      std::string text;
      if (s_spec.format == "csv") {
        text = mlqsl::saturation_csv(rep, s_spec.precision);
      } else if (s_spec.format == "json") {
        text = mlqsl::saturation_json(rep);
      } else {
        text = mlqsl::saturation_pretty(rep, s_spec.precision);
      }
      return emit(s_spec, text);
    }

    if (app.got_subcommand(verify_cmd)) {
      const mlqsl::OracleReport report = mlqsl::verify_bound(oracle_cfg);
      std::string text;
      if (v_spec.format == "csv") {
        text = mlqsl::oracle_csv(report, v_spec.precision);
      } else if (v_spec.format == "json") {
        text = mlqsl::oracle_json(report);
      } else {
        text = mlqsl::oracle_pretty(report, v_spec.precision);
      }
      const int rc = emit(v_spec, text);
      if (rc != 0) return rc;
      if (report.violations > 0) {
        std::fprintf(stderr, "verify: %d bound violations\n", report.violations);
        return 1;
      }
      return 0;
    }

    // bench
    const std::vector<double> grid = b_grid.empty() ? mlqsl::default_bench_grid() : b_grid;
    const std::vector<mlqsl::BenchRow> rows = mlqsl::run_bench(grid, b_reps);
    std::string text;
    if (b_spec.format == "csv") {
      text = mlqsl::bench_csv(rows, b_spec.precision);
    } else if (b_spec.format == "json") {
      text = mlqsl::bench_json(rows);
    } else {
      text = mlqsl::bench_pretty(rows, b_spec.precision);
    }
    return emit(b_spec, text);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

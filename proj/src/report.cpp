#include "mlqsl/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace mlqsl {

namespace {

using ordered_json = nlohmann::ordered_json;

// Non-finite doubles have no JSON representation; fixed literal strings
// keep the output parseable and byte-deterministic.
ordered_json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  return v;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string render_aligned(const std::vector<std::vector<std::string>>& cells) {
  std::vector<size_t> width;
  for (const auto& row : cells) {
    if (row.size() > width.size()) width.resize(row.size(), 0);
    for (size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
  }
  std::string out;
  for (const auto& row : cells) {
    for (size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out += "  ";
      out += row[j];
      if (j + 1 < row.size()) out.append(width[j] - row[j].size(), ' ');
    }
    out += '\n';
  }
  return out;
}

void kv(std::string& out, const char* key, const std::string& value) {
  constexpr size_t kPad = 12;
  std::string line = key;
  if (line.size() < kPad) line.append(kPad - line.size(), ' ');
  out += line;
  out += "= ";
  out += value;
  out += '\n';
}

}  // namespace

std::string format_double(double value, int precision) {
  if (precision < 4 || precision > 17) {
    throw std::invalid_argument("format_double: precision must be in [4, 17]");
  }
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0.0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

std::string table_csv(const std::vector<AlphaRow>& rows, int precision) {
  std::string out = kTableCsvHeader;
  out += '\n';
  for (const AlphaRow& r : rows) {
    out += format_double(r.epsilon, precision);
    for (const double v : {r.alpha_lower, r.alpha_upper, r.alpha_newton, r.alpha_glm}) {
      out += ',';
      if (!std::isnan(v)) out += format_double(v, precision);
    }
    out += ',';
    out += format_double(r.max_rel_diff, precision);
    out += ',';
    out += std::to_string(r.iters_newton);
    out += ',';
    out += r.status;
    out += '\n';
  }
  return out;
}

std::string table_json(const std::vector<AlphaRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const AlphaRow& r : rows) {
    ordered_json j;
    j["epsilon"] = json_number(r.epsilon);
    j["alpha_lower"] = json_number(r.alpha_lower);
    j["alpha_upper"] = json_number(r.alpha_upper);
    j["alpha_newton"] = json_number(r.alpha_newton);
    j["alpha_glm"] = json_number(r.alpha_glm);
    j["max_rel_diff"] = json_number(r.max_rel_diff);
    j["iters_newton"] = r.iters_newton;
    j["status"] = r.status;
    arr.push_back(std::move(j));
  }
  return dump(arr);
}

std::string table_pretty(const std::vector<AlphaRow>& rows, int precision) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"epsilon", "alpha_lower", "alpha_upper", "alpha_newton", "alpha_glm",
                   "max_rel_diff", "iters_newton", "status"});
  for (const AlphaRow& r : rows) {
    std::vector<std::string> row;
    row.push_back(format_double(r.epsilon, precision));
    for (const double v : {r.alpha_lower, r.alpha_upper, r.alpha_newton, r.alpha_glm}) {
      row.push_back(std::isnan(v) ? "-" : format_double(v, precision));
    }
    row.push_back(format_double(r.max_rel_diff, precision));
    row.push_back(std::to_string(r.iters_newton));
    row.push_back(r.status);
    cells.push_back(std::move(row));
  }
  return render_aligned(cells);
}

std::string alpha_result_csv(const AlphaResult& r, int precision) {
  std::string out = "epsilon,method,alpha,argopt,iterations,residual,status\n";
  out += format_double(r.epsilon, precision);
  out += ',';
  out += to_string(r.method);
  out += ',';
  out += format_double(r.alpha, precision);
  out += ',';
  out += format_double(r.argopt, precision);
  out += ',';
  out += std::to_string(r.iterations);
  out += ',';
  out += format_double(r.residual, precision);
  out += ',';
  out += to_string(r.status);
  out += '\n';
  return out;
}

std::string alpha_result_json(const AlphaResult& r) {
  ordered_json j;
  j["epsilon"] = json_number(r.epsilon);
  j["method"] = to_string(r.method);
  j["alpha"] = json_number(r.alpha);
  j["argopt"] = json_number(r.argopt);
  j["iterations"] = r.iterations;
  j["residual"] = json_number(r.residual);
  j["status"] = to_string(r.status);
  return dump(j);
}

std::string alpha_result_pretty(const AlphaResult& r, int precision) {
  std::string out;
  kv(out, "epsilon", format_double(r.epsilon, precision));
  kv(out, "method", to_string(r.method));
  kv(out, "alpha", format_double(r.alpha, precision));
  kv(out, "argopt", format_double(r.argopt, precision));
  kv(out, "iterations", std::to_string(r.iterations));
  kv(out, "residual", format_double(r.residual, precision));
  kv(out, "status", to_string(r.status));
  return out;
}

SaturationReport saturation_report(Fidelity eps, const RootConfig& cfg) {
  SaturationReport rep;
  rep.state = saturating_state(eps, cfg);
  const FiniteSystem system = embed_two_level(rep.state);
  rep.bound = ml_bound(system, eps, false, 1e-15, cfg);
  // The passage happens at gap_time; the window only needs headroom.
  const double t_max = 1.5 * rep.state.gap_time + 0.5;
  const auto passage = first_passage_time(system, eps, t_max);
  rep.passage = passage.value_or(std::numeric_limits<double>::quiet_NaN());
  rep.residual = passage.has_value() && rep.bound > 0.0
                     ? std::fabs(rep.passage - rep.bound) / rep.bound
                     : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

std::string saturation_csv(const SaturationReport& r, int precision) {
  std::string out = "epsilon,a1_sq,theta_opt,phi_opt,gap_time,bound,passage,residual\n";
  const double values[] = {r.state.epsilon, r.state.a1_sq,   r.state.theta_opt,
                           r.state.phi_opt, r.state.gap_time, r.bound,
                           r.passage,       r.residual};
  for (size_t i = 0; i < std::size(values); ++i) {
    if (i > 0) out += ',';
    out += format_double(values[i], precision);
  }
  out += '\n';
  return out;
}

std::string saturation_json(const SaturationReport& r) {
  ordered_json j;
  j["epsilon"] = json_number(r.state.epsilon);
  j["a1_sq"] = json_number(r.state.a1_sq);
  j["theta_opt"] = json_number(r.state.theta_opt);
  j["phi_opt"] = json_number(r.state.phi_opt);
  j["gap_time"] = json_number(r.state.gap_time);
  j["bound"] = json_number(r.bound);
  j["passage"] = json_number(r.passage);
  j["residual"] = json_number(r.residual);
  return dump(j);
}

std::string saturation_pretty(const SaturationReport& r, int precision) {
  std::string out;
  kv(out, "epsilon", format_double(r.state.epsilon, precision));
  kv(out, "a1_sq", format_double(r.state.a1_sq, precision));
  kv(out, "theta_opt", format_double(r.state.theta_opt, precision));
  kv(out, "phi_opt", format_double(r.state.phi_opt, precision));
  kv(out, "gap_time", format_double(r.state.gap_time, precision));
  kv(out, "bound", format_double(r.bound, precision));
  kv(out, "passage", format_double(r.passage, precision));
  kv(out, "residual", format_double(r.residual, precision));
  return out;
}

std::string oracle_csv(const OracleReport& r, int precision) {
  std::string out =
      "sample,levels,epsilon,bound_standard,bound_strengthened,passage,margin,skipped,"
      "violation\n";
  for (const OracleRecord& rec : r.records) {
    out += std::to_string(rec.sample);
    out += ',';
    out += std::to_string(rec.levels);
    out += ',';
    out += format_double(rec.epsilon, precision);
    out += ',';
    out += format_double(rec.bound_standard, precision);
    out += ',';
    out += format_double(rec.bound_strengthened, precision);
    out += ',';
    out += format_double(rec.passage, precision);
    out += ',';
    out += format_double(rec.margin, precision);
    out += ',';
    out += rec.skipped ? '1' : '0';
    out += ',';
    out += rec.violation ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string oracle_json(const OracleReport& r) {
  ordered_json j;
  j["config"]["seed"] = r.config.seed;
  j["config"]["samples"] = r.config.samples;
  j["config"]["max_levels"] = r.config.max_levels;
  j["config"]["energy_scale"] = json_number(r.config.energy_scale);
  j["config"]["eps_grid"] = r.config.eps_grid;
  j["summary"]["records"] = static_cast<int>(r.records.size());
  j["summary"]["violations"] = r.violations;
  j["summary"]["skipped"] = r.skipped;
  j["summary"]["min_margin"] = json_number(r.min_margin);
  ordered_json arr = ordered_json::array();
  for (const OracleRecord& rec : r.records) {
    ordered_json e;
    e["sample"] = rec.sample;
    e["levels"] = rec.levels;
    e["epsilon"] = json_number(rec.epsilon);
    e["bound_standard"] = json_number(rec.bound_standard);
    e["bound_strengthened"] = json_number(rec.bound_strengthened);
    e["passage"] = json_number(rec.passage);
    e["margin"] = json_number(rec.margin);
    e["skipped"] = rec.skipped;
    e["violation"] = rec.violation;
    arr.push_back(std::move(e));
  }
  j["records"] = std::move(arr);
  return dump(j);
}

std::string oracle_pretty(const OracleReport& r, int precision) {
  std::string out;
  kv(out, "seed", std::to_string(r.config.seed));
  kv(out, "samples", std::to_string(r.config.samples));
  kv(out, "records", std::to_string(r.records.size()));
  kv(out, "violations", std::to_string(r.violations));
  kv(out, "skipped", std::to_string(r.skipped));
  kv(out, "min_margin", format_double(r.min_margin, precision));
  return out;
}

std::vector<double> default_bench_grid() {
  std::vector<double> grid;
  grid.reserve(19);
  for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * static_cast<double>(i));
  return grid;
}

std::vector<BenchRow> run_bench(const std::vector<double>& grid, int repetitions) {
  if (grid.empty()) throw std::invalid_argument("run_bench: grid must be nonempty");
  if (repetitions < 1) throw std::invalid_argument("run_bench: repetitions must be >= 1");
  for (const double e : grid) {
    const Fidelity check(e);
    (void)check;
  }

  struct Backend {
    AlphaMethod method;
    std::function<double(double)> eval;
  };
  const std::vector<Backend> backends = {
      {AlphaMethod::Lower, [](double e) { return alpha_lower(Fidelity(e)).alpha; }},
      {AlphaMethod::Upper, [](double e) { return alpha_upper(Fidelity(e)).alpha; }},
      {AlphaMethod::Newton, [](double e) { return alpha_newton(Fidelity(e)).alpha; }},
      {AlphaMethod::GlmLegacy,
       [](double e) { return alpha_glm_legacy(Fidelity(e), GlmRootMethod::brent()).alpha; }},
  };

  std::vector<BenchRow> rows;
  volatile double sink = 0.0;  // keeps the optimizer from dropping the sweeps
  for (const Backend& b : backends) {
    for (const double e : grid) sink = sink + b.eval(e);
    std::vector<double> per_eval;
    per_eval.reserve(static_cast<size_t>(repetitions));
    double total = 0.0;
    for (int rep = 0; rep < repetitions; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      for (const double e : grid) sink = sink + b.eval(e);
      const auto t1 = std::chrono::steady_clock::now();
      const double us = std::chrono::duration<double, std::micro>(t1 - t0).count() /
                        static_cast<double>(grid.size());
      per_eval.push_back(us);
      total += us;
    }
    std::sort(per_eval.begin(), per_eval.end());
    const size_t mid = per_eval.size() / 2;
    const double median = per_eval.size() % 2 == 1
                              ? per_eval[mid]
                              : 0.5 * (per_eval[mid - 1] + per_eval[mid]);
    rows.push_back({b.method, median, total / static_cast<double>(repetitions),
                    static_cast<int>(grid.size()) * repetitions});
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows, int precision) {
  std::string out = "method,median_us,mean_us,evaluations\n";
  for (const BenchRow& r : rows) {
    out += to_string(r.method);
    out += ',';
    out += format_double(r.median_us, precision);
    out += ',';
    out += format_double(r.mean_us, precision);
    out += ',';
    out += std::to_string(r.evaluations);
    out += '\n';
  }
  return out;
}

std::string bench_json(const std::vector<BenchRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const BenchRow& r : rows) {
    ordered_json j;
    j["method"] = to_string(r.method);
    j["median_us"] = json_number(r.median_us);
    j["mean_us"] = json_number(r.mean_us);
    j["evaluations"] = r.evaluations;
    arr.push_back(std::move(j));
  }
  return dump(arr);
}

std::string bench_pretty(const std::vector<BenchRow>& rows, int precision) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"method", "median_us", "mean_us", "evaluations"});
  for (const BenchRow& r : rows) {
    cells.push_back({to_string(r.method), format_double(r.median_us, precision),
                     format_double(r.mean_us, precision), std::to_string(r.evaluations)});
  }
  return render_aligned(cells);
}

}  // namespace mlqsl

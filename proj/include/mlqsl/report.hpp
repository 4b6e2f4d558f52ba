#pragma once

// Serialization of results to CSV, JSON, and aligned text, plus the
// timing harness behind the bench subcommand. All formatting is
// locale-independent; golden-file tests pin the exact bytes.

#include <string>
#include <vector>

#include "mlqsl/alpha.hpp"
#include "mlqsl/oracle.hpp"
#include "mlqsl/saturate.hpp"

namespace mlqsl {

// Column order is a contract; regression tooling parses it verbatim.
inline constexpr const char* kTableCsvHeader =
    "epsilon,alpha_lower,alpha_upper,alpha_newton,alpha_glm,max_rel_diff,iters_newton,status";

// %.{precision}g with non-finite values spelled inf, -inf, nan.
// Throws std::invalid_argument unless precision is in [4, 17].
std::string format_double(double value, int precision);

// CSV/JSON/pretty renderings of an alpha_table result. NaN method cells
// (not requested, or did not converge; the status column tells which)
// are empty in CSV and "-" in pretty. JSON spells every non-finite
// number as the strings "inf", "-inf", "nan".
std::string table_csv(const std::vector<AlphaRow>& rows, int precision);
std::string table_json(const std::vector<AlphaRow>& rows);
std::string table_pretty(const std::vector<AlphaRow>& rows, int precision);

std::string alpha_result_csv(const AlphaResult& r, int precision);
std::string alpha_result_json(const AlphaResult& r);
std::string alpha_result_pretty(const AlphaResult& r, int precision);

// Saturating-state report: the constructed state, the bound it should
// saturate, and the measured first passage of its own fidelity.
struct SaturationReport {
  SaturatingState state;
  double bound = 0.0;
  double passage = 0.0;
  // |passage - bound| / bound; the construction makes this solver-noise.
  double residual = 0.0;
};

SaturationReport saturation_report(Fidelity eps, const RootConfig& cfg = {});

std::string saturation_csv(const SaturationReport& r, int precision);
std::string saturation_json(const SaturationReport& r);
std::string saturation_pretty(const SaturationReport& r, int precision);

// verify output. JSON is byte-deterministic for a fixed config: key
// order is fixed and doubles serialize by shortest round trip.
std::string oracle_csv(const OracleReport& r, int precision);
std::string oracle_json(const OracleReport& r);
std::string oracle_pretty(const OracleReport& r, int precision);

struct BenchRow {
  AlphaMethod method = AlphaMethod::Upper;
  // Per-evaluation wall time, median and mean over repetition sweeps.
  double median_us = 0.0;
  double mean_us = 0.0;
  int evaluations = 0;
};

// 19 points, 0.05 to 0.95: away from the endpoint shortcuts so every
// backend does real work.
std::vector<double> default_bench_grid();

// Times each backend over the grid, repetitions sweeps each, after one
// untimed warmup sweep. Throws std::invalid_argument for an empty grid
// or repetitions < 1.
std::vector<BenchRow> run_bench(const std::vector<double>& grid, int repetitions);

std::string bench_csv(const std::vector<BenchRow>& rows, int precision);
std::string bench_json(const std::vector<BenchRow>& rows);
std::string bench_pretty(const std::vector<BenchRow>& rows, int precision);

}  // namespace mlqsl

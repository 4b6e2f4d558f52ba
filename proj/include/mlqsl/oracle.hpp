#pragma once

// Brute-force checks that are independent of the polished evaluators:
// a reproducible random-system sweep that tests the Margolus-Levitin
// bound against directly measured first-passage times, and a dense-grid
// minimizer for the speed-limit function itself.

#include <cstdint>
#include <vector>

#include "mlqsl/saturate.hpp"

namespace mlqsl {

// splitmix64 (Steele / Lea / Vigna). Implemented here rather than using
// std::mt19937 so the stream is fixed by this file alone and identical
// across platforms; golden tests freeze the first outputs.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

struct OracleConfig {
  std::uint64_t seed = 42;
  int samples = 200;
  // Level count per sample is drawn uniformly from {2, ..., max_levels}.
  int max_levels = 5;
  double energy_scale = 10.0;
  std::vector<double> eps_grid = {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0};
};

struct OracleRecord {
  int sample = 0;
  int levels = 0;
  double epsilon = 0.0;
  double bound_standard = 0.0;
  double bound_strengthened = 0.0;
  // Measured time at which the fidelity first reaches epsilon; NaN when
  // the scan window ended before the crossing (skipped = true).
  double passage = 0.0;
  double margin = 0.0;
  bool skipped = false;
  bool violation = false;
};

struct OracleReport {
  OracleConfig config;
  std::vector<OracleRecord> records;
  int violations = 0;
  int skipped = 0;
  // Smallest passage - bound_standard over evaluated records; +inf when
  // every record was skipped.
  double min_margin = 0.0;
};

// Evaluates one prepared system against every epsilon in eps_grid using
// a single fidelity scan. Exposed so tests can inject known states.
std::vector<OracleRecord> evaluate_sample(const FiniteSystem& system, int sample_index,
                                          const std::vector<double>& eps_grid);

// Draws cfg.samples random finite systems (every third one with the
// lowest level depopulated, which separates the two bound variants) and
// checks passage >= bound up to 1e-9 relative slack. Deterministic for
// a fixed config.
OracleReport verify_bound(const OracleConfig& cfg = {});

// Dense-grid minimization of the y-form objective; agrees with the
// evaluators to roughly (interval / points)^2 near the flat minimum.
// Throws std::invalid_argument for points < 1000.
double grid_alpha_oracle(double eps, long long points);

}  // namespace mlqsl

#include "mlqsl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mlqsl/alpha.hpp"

namespace mlqsl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Relative slack when comparing a measured passage against a bound;
// absorbs the 1e-12 refinement tolerance of the scan.
constexpr double kBoundSlack = 1e-9;

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<OracleRecord> evaluate_sample(const FiniteSystem& system, int sample_index,
                                          const std::vector<double>& eps_grid) {
  const double denom = system.mean_energy() - system.min_energy();
  const double span = system.max_populated_energy() - system.min_populated_energy();

  std::vector<std::optional<double>> passages(eps_grid.size());
  if (span > 0.0) {
    // Window: enough for passages up to 100x the tightest finite bound,
    // capped so the scan stays bounded for tiny populated spans.
    const double t_max =
        std::min(denom > 0.0 ? 100.0 * kPi / denom : kInf, 1000.0 * kPi / span);
    const long long n = std::llround(std::clamp(100.0 * span * t_max, 2000.0, 200000.0));
    passages = first_passage_times(system, eps_grid, t_max, n);
  }

  std::vector<OracleRecord> records;
  records.reserve(eps_grid.size());
  for (size_t j = 0; j < eps_grid.size(); ++j) {
    OracleRecord rec;
    rec.sample = sample_index;
    rec.levels = static_cast<int>(system.levels().size());
    rec.epsilon = eps_grid[j];
    rec.bound_standard = ml_bound(system, Fidelity(eps_grid[j]), false);
    rec.bound_strengthened = ml_bound(system, Fidelity(eps_grid[j]), true);
    if (passages[j].has_value()) {
      rec.passage = *passages[j];
      rec.margin = rec.passage - rec.bound_standard;
      rec.violation = rec.passage < rec.bound_standard * (1.0 - kBoundSlack) ||
                      rec.passage < rec.bound_strengthened * (1.0 - kBoundSlack);
    } else {
      rec.passage = kNaN;
      rec.margin = kNaN;
      rec.skipped = true;
    }
    records.push_back(rec);
  }
  return records;
}

OracleReport verify_bound(const OracleConfig& cfg) {
  if (cfg.samples < 1) {
    throw std::invalid_argument("verify_bound: samples must be >= 1");
  }
  if (cfg.max_levels < 2) {
    throw std::invalid_argument("verify_bound: max_levels must be >= 2");
  }
  if (!std::isfinite(cfg.energy_scale) || !(cfg.energy_scale > 0.0)) {
    throw std::invalid_argument("verify_bound: energy_scale must be positive and finite");
  }
  for (const double e : cfg.eps_grid) {
    const Fidelity check(e);
    (void)check;
  }

  SplitMix64 rng(cfg.seed);
  OracleReport report;
  report.config = cfg;
  report.min_margin = kInf;

  for (int i = 0; i < cfg.samples; ++i) {
    const int count =
        2 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(cfg.max_levels - 1));
    std::vector<Level> levels(count);
    for (Level& l : levels) l.energy = rng.uniform() * cfg.energy_scale;
    for (Level& l : levels) l.population = rng.uniform();
    for (Level& l : levels) l.phase = rng.uniform() * 2.0 * kPi;
    if (i % 3 == 2) {
      // Depopulate the lowest level so the strengthened reference energy
      // genuinely differs from the spectrum minimum.
      auto lowest = std::min_element(
          levels.begin(), levels.end(),
          [](const Level& a, const Level& b) { return a.energy < b.energy; });
      lowest->population = 0.0;
    }
    double sum = 0.0;
    for (const Level& l : levels) sum += l.population;
    if (sum <= 0.0) {
      levels.front().population = 1.0;
      sum = 1.0;
    }
    for (Level& l : levels) l.population /= sum;

    const FiniteSystem system(std::move(levels));
    for (const OracleRecord& rec : evaluate_sample(system, i, cfg.eps_grid)) {
      if (rec.skipped) {
        ++report.skipped;
      } else {
        if (rec.violation) ++report.violations;
        report.min_margin = std::min(report.min_margin, rec.margin);
      }
      report.records.push_back(rec);
    }
  }
  return report;
}

double grid_alpha_oracle(double eps, long long points) {
  const Fidelity check(eps);
  (void)check;
  if (points < 1000) {
    throw std::invalid_argument("grid_alpha_oracle: points must be >= 1000");
  }
  if (eps == 1.0) return 0.0;
  const double y_lo = std::asin(std::sqrt(1.0 - eps));
  if (y_lo >= kHalfPi) return upper_objective(eps, kHalfPi);
  double best = kInf;
  for (long long j = 0; j < points; ++j) {
    const double y =
        y_lo + (kHalfPi - y_lo) * static_cast<double>(j) / static_cast<double>(points - 1);
    best = std::min(best, upper_objective(eps, y));
  }
  return best;
}

}  // namespace mlqsl

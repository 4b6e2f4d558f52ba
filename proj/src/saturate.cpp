#include "mlqsl/saturate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace mlqsl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Passage-scan tolerances. A grid-local minimum within kCandidateMargin
// of a pending target is refined (grid quantization of a valley floor
// can hide about (span * dt)^2 / 8 of depth); a refined minimum within
// kTouchTol of the target counts as a tangential touch.
constexpr double kTouchTol = 1e-12;
constexpr double kCandidateMargin = 1e-4;
constexpr double kRefineTol = 1e-12;

}  // namespace

FiniteSystem::FiniteSystem(std::vector<Level> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) {
    throw std::invalid_argument("FiniteSystem: at least one level required");
  }
  double sum = 0.0;
  for (const Level& l : levels_) {
    if (!std::isfinite(l.energy) || !std::isfinite(l.population) ||
        !std::isfinite(l.phase)) {
      throw std::invalid_argument("FiniteSystem: level entries must be finite");
    }
    if (l.population < 0.0) {
      throw std::invalid_argument("FiniteSystem: populations must be nonnegative");
    }
    sum += l.population;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("FiniteSystem: populations must sum to 1 within 1e-12");
  }
}

double FiniteSystem::min_energy() const {
  double m = kInf;
  for (const Level& l : levels_) m = std::min(m, l.energy);
  return m;
}

double FiniteSystem::min_populated_energy(double population_threshold) const {
  double m = kInf;
  for (const Level& l : levels_) {
    if (l.population > population_threshold) m = std::min(m, l.energy);
  }
  return std::isfinite(m) ? m : min_energy();
}

double FiniteSystem::max_populated_energy(double population_threshold) const {
  double m = -kInf;
  for (const Level& l : levels_) {
    if (l.population > population_threshold) m = std::max(m, l.energy);
  }
  return std::isfinite(m) ? m : min_energy();
}

double FiniteSystem::mean_energy() const {
  double m = 0.0;
  for (const Level& l : levels_) m += l.population * l.energy;
  return m;
}

double FiniteSystem::fidelity_at(double t) const {
  double re = 0.0, im = 0.0;
  for (const Level& l : levels_) {
    re += l.population * std::cos(l.energy * t);
    im -= l.population * std::sin(l.energy * t);
  }
  return re * re + im * im;
}

SaturatingState saturating_state(Fidelity eps, const RootConfig& cfg) {
  const double e = eps.value();
  if (e >= 1.0) {
    throw std::domain_error(
        "saturating_state: eps = 1 is degenerate (every state saturates a zero bound)");
  }
  const LowerOptimum o = lower_optimum(e, cfg);
  const double gap = o.phi_opt - o.theta_opt;
  const double a1 = std::sin(-o.theta_opt) /
                    (2.0 * std::sin(0.5 * gap) * std::cos(0.5 * (o.phi_opt + o.theta_opt)));
  // The closed form can overshoot 1/2 by an ulp at eps = 0.
  return {e, std::min(a1, 0.5), o.theta_opt, o.phi_opt, gap};
}

double fidelity_two_level(double a1_sq, double gap_time) {
  if (!(a1_sq >= 0.0 && a1_sq <= 1.0) || !(gap_time >= 0.0)) {
    throw std::domain_error("fidelity_two_level: need a1_sq in [0,1] and gap_time >= 0");
  }
  const double s = std::sin(0.5 * gap_time);
  return 1.0 - 4.0 * a1_sq * (1.0 - a1_sq) * s * s;
}

double a1_sq_tan_form(double theta_opt, double gap_time) {
  const double tt = std::tan(theta_opt);
  return tt / (tt * (1.0 - std::cos(gap_time)) - std::sin(gap_time));
}

FiniteSystem embed_two_level(const SaturatingState& s, double e0, double e1) {
  return FiniteSystem({{e0, 1.0 - s.a1_sq, 0.0}, {e1, s.a1_sq, 0.0}});
}

double ml_bound(const FiniteSystem& system, Fidelity eps, bool strengthened,
                double population_threshold, const RootConfig& cfg) {
  const double e_ref = strengthened ? system.min_populated_energy(population_threshold)
                                    : system.min_energy();
  const double denom = system.mean_energy() - e_ref;
  if (!(denom > 0.0)) {
    // Frozen state relative to the reference: no evolution requirement.
    return eps.value() == 1.0 ? 0.0 : kInf;
  }
  return kPi * lower_optimum(eps.value(), cfg).alpha / (2.0 * denom);
}

std::optional<double> first_passage_time(const FiniteSystem& system, Fidelity eps,
                                         double t_max, long long resolution) {
  return first_passage_times(system, {eps.value()}, t_max, resolution)[0];
}

std::vector<std::optional<double>> first_passage_times(const FiniteSystem& system,
                                                       const std::vector<double>& eps,
                                                       double t_max,
                                                       long long resolution) {
  for (const double e : eps) {
    const Fidelity check(e);
    (void)check;
  }
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw std::invalid_argument("first_passage_times: t_max must be finite and nonnegative");
  }
  if (resolution < 0 || resolution == 1) {
    throw std::invalid_argument(
        "first_passage_times: resolution must be >= 2 (0 selects the automatic density)");
  }

  std::vector<std::optional<double>> out(eps.size());
  std::vector<size_t> order(eps.size());
  std::iota(order.begin(), order.end(), size_t{0});
  // Largest targets are crossed first while the fidelity falls from 1.
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return eps[a] > eps[b]; });

  size_t k = 0;
  while (k < order.size() && eps[order[k]] >= 1.0) out[order[k++]] = 0.0;
  if (k == order.size() || t_max == 0.0) return out;

  long long n = resolution;
  if (n == 0) {
    const double span = system.max_populated_energy() - system.min_populated_energy();
    n = std::llround(std::clamp(1e5 * span * t_max, 1000.0, 2e7));
  }

  auto fid = [&](double t) { return system.fidelity_at(t); };

  // Transversal refinement: fid(lo) > e >= fid(hi).
  auto bisect = [&](double lo, double hi, double e) {
    while (hi - lo > kRefineTol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (fid(mid) <= e) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  };

  const double dt = t_max / static_cast<double>(n);
  double f_pp = 1.0, f_p = 1.0;
  double t_pp = 0.0, t_p = 0.0;
  for (long long i = 1; i <= n && k < order.size(); ++i) {
    const double t = dt * static_cast<double>(i);
    const double f = fid(t);
    while (k < order.size() && f <= eps[order[k]]) {
      out[order[k]] = bisect(t_p, t, eps[order[k]]);
      ++k;
    }
    // A grid-local minimum near a pending target: the valley floor may
    // dip below the target (or touch it) between samples.
    if (k < order.size() && i >= 2 && f_p < f_pp && f_p <= f &&
        f_p <= eps[order[k]] + kCandidateMargin) {
      const MinimizeOutcome m = golden_minimize(fid, t_pp, t, {});
      while (k < order.size() && m.min <= eps[order[k]] + kTouchTol) {
        const double e = eps[order[k]];
        out[order[k]] = (m.min <= e) ? bisect(t_pp, m.argmin, e) : m.argmin;
        ++k;
      }
    }
    f_pp = f_p;
    f_p = f;
    t_pp = t_p;
    t_p = t;
  }
  return out;
}

}  // namespace mlqsl

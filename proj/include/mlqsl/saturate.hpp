#pragma once

#include <optional>
#include <vector>

#include "mlqsl/alpha.hpp"

// Explicit two-level states that attain the Margolus-Levitin bound, the
// bound itself for arbitrary finite-level systems, and the first-passage
// machinery used to confirm attainment by direct time evolution.

namespace mlqsl {

struct SaturatingState {
  double epsilon;
  double a1_sq;      // excited-level population, in [(1-sqrt(eps))/2, 1/2]
  double theta_opt;  // maximizer shared with alpha_lower, in [-acos(sqrt(eps)), 0]
  double phi_opt;    // tangency abscissa at theta_opt
  double gap_time;   // (E1 - E0) tau / hbar = phi_opt - theta_opt, positive
};

struct Level {
  double energy;
  double population;  // |a_j|^2
  double phase;       // arg(a_j); irrelevant to fidelity, kept for completeness
};

// A pure state sum_j a_j |E_j> of a finite-level Hamiltonian. Populations
// must be nonnegative and sum to 1 within 1e-12; all entries finite.
class FiniteSystem {
 public:
  explicit FiniteSystem(std::vector<Level> levels);

  const std::vector<Level>& levels() const { return levels_; }
  double min_energy() const;
  // Lowest energy whose population exceeds the threshold; this is the
  // reference of the strengthened bound.
  double min_populated_energy(double population_threshold = 1e-15) const;
  double max_populated_energy(double population_threshold = 1e-15) const;
  double mean_energy() const;
  // |<psi(0)|psi(t)>|^2 = |sum_j p_j e^{-i E_j t}|^2 (amplitude phases cancel)
  double fidelity_at(double t) const;

 private:
  std::vector<Level> levels_;
};

// Constructs the bound-saturating state for eps in [0, 1): finds the
// shared maximizer theta_opt, sets the level gap so that
// (E1 - E0) tau = phi_opt - theta_opt, and fixes the excited population
// by the closed form sin|theta| / (2 sin(g/2) cos((phi+theta)/2)) with
// g the gap-time product. Rejects eps = 1, where every state trivially
// saturates a zero bound.
SaturatingState saturating_state(Fidelity eps, const RootConfig& cfg = {});

// eps = 1 - 4 a1_sq (1 - a1_sq) sin^2(gap_time / 2)
double fidelity_two_level(double a1_sq, double gap_time);

// Alternative population form tan(theta) / (tan(theta)(1 - cos g) - sin g),
// used as a cross-check where its denominator is away from zero.
double a1_sq_tan_form(double theta_opt, double gap_time);

// Two-level FiniteSystem realizing a saturating state, zero phases,
// energies e0 and e1. With e1 - e0 = 1 the first passage to eps occurs
// at t = gap_time.
FiniteSystem embed_two_level(const SaturatingState& s, double e0 = 0.0, double e1 = 1.0);

// pi alpha(eps) / (2 <E - E_ref>) where E_ref is the ground energy, or
// the lowest populated energy when strengthened. A vanishing reference
// expectation means a frozen state: the bound is 0 for eps = 1 and +inf
// otherwise.
double ml_bound(const FiniteSystem& system, Fidelity eps, bool strengthened = false,
                double population_threshold = 1e-15, const RootConfig& cfg = {});

// Earliest t in [0, t_max] with fidelity(t) <= eps, refined to 1e-12.
// Transversal crossings are bisected; a local fidelity minimum that only
// touches eps (within 1e-12) is located by golden section, which limits
// its accuracy to roughly sqrt(machine epsilon) in time. resolution is
// the scan grid size; resolution = 0 picks 1e5 points per unit of
// (populated energy spread) * t_max, clamped to [1000, 2e7]. Returns
// nothing if eps is never reached.
std::optional<double> first_passage_time(const FiniteSystem& system, Fidelity eps,
                                         double t_max, long long resolution = 0);

// Batch variant sharing a single forward scan across all eps values;
// results are in input order.
std::vector<std::optional<double>> first_passage_times(const FiniteSystem& system,
                                                       const std::vector<double>& eps,
                                                       double t_max,
                                                       long long resolution = 0);

}  // namespace mlqsl

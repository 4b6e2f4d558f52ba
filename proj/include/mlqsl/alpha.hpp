#pragma once

#include <string>
#include <vector>

#include "mlqsl/rootfind.hpp"

// Four independent backends for the function alpha(eps) appearing in the
// Margolus-Levitin quantum speed limit tau/hbar >= pi alpha(eps) / (2<E - E0>):
//
//   lower   maximizes (cos theta - sqrt(eps)) / sin(phi(theta)) over
//           theta in [-acos(sqrt(eps)), 0] (times 2/pi),
//   upper   minimizes the two-level objective (2y/pi)(1 - sqrt(1 - (1-eps) csc^2 y))
//           over y in [asin(sqrt(1-eps)), pi/2],
//   newton  solves the stationarity condition of that same objective by
//           Newton iteration from the midpoint of the interval,
//   glm     solves the original constraint of the historical bound for a
//           level weight z and substitutes it into an arccos formula; kept
//           deliberately fragile as a reproduction of that method's known
//           instability near eps = 1.
//
// The first three agree to near machine precision; the library's test
// suite verifies the lower and upper forms coincide, which is the
// nontrivial mathematical fact this code exists to check.

namespace mlqsl {

// Squared-overlap fidelity |<psi(0)|psi(t)>|^2. Validated to [0, 1] at
// construction; all public entry points take eps, never sqrt(eps).
class Fidelity {
 public:
  explicit Fidelity(double eps);
  double value() const { return eps_; }

 private:
  double eps_;
};

enum class AlphaMethod { Lower, Upper, Newton, GlmLegacy };

const char* to_string(AlphaMethod m);

struct AlphaResult {
  double epsilon = 0.0;
  double alpha = 0.0;  // in [0, 1] whenever status is Converged
  AlphaMethod method = AlphaMethod::Upper;
  int iterations = 0;
  double residual = 0.0;
  RootStatus status = RootStatus::Converged;
  // Optimizer location: theta for lower, y for upper/newton, z for glm.
  // On a non-Converged glm outcome this is the escaping iterate and
  // alpha is NaN.
  double argopt = 0.0;

  bool converged() const { return status == RootStatus::Converged; }
};

// Root stage selector for the legacy backend. Brent over a shrunk
// bracket is the reliable reference; Newton with the historical initial
// guess p*(1-sqrt(eps))/2 + (1-p)/2 reproduces the documented failures.
struct GlmRootMethod {
  enum class Kind { Newton, Brent };
  Kind kind = Kind::Brent;
  double p = 0.5;

  static GlmRootMethod newton_guess(double p) { return {Kind::Newton, p}; }
  static GlmRootMethod brent() { return {Kind::Brent, 0.0}; }
};

AlphaResult alpha_lower(Fidelity eps, const RootConfig& cfg = {});
AlphaResult alpha_upper(Fidelity eps, const RootConfig& cfg = {});
AlphaResult alpha_newton(Fidelity eps, const RootConfig& cfg = {});
AlphaResult alpha_glm_legacy(Fidelity eps, const GlmRootMethod& method = {},
                             const RootConfig& cfg = {});

// The y-form objective of the upper construction. The radicand
// 1 - (1-eps) csc^2 y is clamped to [0, 1] (it can stray a few ulps
// outside at the left endpoint), and 1 - sqrt(1-x) is evaluated as
// x / (1 + sqrt(1-x)) to avoid cancellation for eps near 1.
double upper_objective(double eps, double y);

// Stationarity function whose root in [asin(sqrt(1-eps)), pi/2] is the
// y-form minimizer, rearranged as
//   G(y) = y cot y - D / (1 + D),   D = sqrt(1 - (1-eps) csc^2 y).
// The raw ratio form N/D = 1 has a ~1e-14 cancellation floor near its
// root for small eps, which stalls a 1e-14 residual test; G has the
// same roots (N - D = (1-eps) csc^2(y) * G) without the cancellation.
double newton_stationarity(double eps, double y);
double newton_stationarity_derivative(double eps, double y);

// Legacy z-constraint: arccos(1 - (1-eps)/(2z(1-z))) minus the algebraic
// branch, with a singular endpoint at z = (1-sqrt(eps))/2 where the root
// bracket opens.
double glm_constraint(double eps, double z);

// Diagnostic: number of sign changes of the legacy constraint on an
// n-point grid over its z interval. The interval is believed to contain
// exactly one root; this reports rather than assumes it.
int glm_sign_changes(double eps, int n = 10000);

// Parameters (q, m) mapping the tangent-line construction at anchor
// theta onto the historical inequality cos x + q sin x >= 1 - m x:
// q = -tan(theta), m = sin(phi(theta)) / cos(theta). Requires
// |theta| < pi/2.
struct GlmParams {
  double q;
  double m;
};
GlmParams glm_parameters(double theta, const RootConfig& cfg = {});

// Shared maximizer for alpha_lower and the saturating-state
// construction: 64-point grid seed, golden-section refinement, then a
// bracketed root polish on the analytic stationarity function (the
// golden step alone localizes the flat maximum only to ~1e-8).
//
// Accuracy caveat: for 1 - eps below ~1e-12 the numerator
// cos(theta) - sqrt(eps) loses digits to cancellation; the upper/newton
// backends are the accurate route there. eps = 1 itself is exact
// (degenerate interval, alpha = 0).
struct LowerOptimum {
  double theta_opt;
  double phi_opt;
  double alpha;
  int iterations;
  double residual;  // stationarity value at theta_opt
};
LowerOptimum lower_optimum(double eps, const RootConfig& cfg = {});

struct AlphaRow {
  double epsilon = 0.0;
  // NaN marks a method that was not requested for this row.
  double alpha_lower;
  double alpha_upper;
  double alpha_newton;
  double alpha_glm;
  double max_rel_diff = 0.0;  // pairwise, over requested converged values
  int iters_newton = 0;
  std::string status;  // "ok" or semicolon-joined method=status tags
  bool ok = true;
};

struct MethodSet {
  bool lower = false;
  bool upper = false;
  bool newton = false;
  bool glm = false;  // evaluated via the Brent reference root
};

// One row per grid value, in input order. Rows never abort the table:
// a non-converged backend is recorded in the row's status field.
std::vector<AlphaRow> alpha_table(const std::vector<double>& eps_grid,
                                  const MethodSet& methods, const RootConfig& cfg = {});

}  // namespace mlqsl

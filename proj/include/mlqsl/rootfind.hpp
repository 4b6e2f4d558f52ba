#pragma once

#include <functional>

namespace mlqsl {

struct RootConfig {
  double abs_tol = 1e-14;  // residual threshold
  double rel_tol = 1e-14;  // step / interval-width threshold
  int max_iter = 100;
};

enum class RootStatus {
  Converged,
  MaxIterExceeded,
  LeftBracket,
  DerivativeVanished,
};

const char* to_string(RootStatus s);

struct RootOutcome {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  RootStatus status = RootStatus::MaxIterExceeded;

  bool converged() const { return status == RootStatus::Converged; }
};

using Fn = std::function<double(double)>;

// Undamped Newton iteration. Converged is only ever reported with
// |residual| <= abs_tol. The bracketed overload never clamps: an iterate
// that leaves [lo, hi] is reported as-is with status LeftBracket, because
// callers reproducing divergence behavior need to observe the escape.
RootOutcome newton(const Fn& f, const Fn& df, double x0, const RootConfig& cfg = {});
RootOutcome newton(const Fn& f, const Fn& df, double x0, double lo, double hi,
                   const RootConfig& cfg = {});

// Brent's inverse-quadratic/secant/bisection hybrid. Requires a sign
// change: f(lo) * f(hi) <= 0. Converged means |residual| <= abs_tol or the
// bracket has shrunk below rel_tol * max(|lo|, |hi|); the interpolation
// steps fall back to bisection when they stall, so convergence is
// guaranteed even with a singularity just outside the bracket.
RootOutcome brent(const Fn& f, double lo, double hi, const RootConfig& cfg = {});

struct MinimizeOutcome {
  double argmin = 0.0;
  double min = 0.0;
  int iterations = 0;
};

// Golden-section search over [lo, hi]. Returns the best point actually
// evaluated (endpoints included), so a monotone objective yields its
// boundary minimum. Degenerate intervals (lo == hi) return that point
// exactly. Unimodality is the caller's responsibility.
MinimizeOutcome golden_minimize(const Fn& f, double lo, double hi,
                                const RootConfig& cfg = {});

}  // namespace mlqsl

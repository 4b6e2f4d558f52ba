#include "mlqsl/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mlqsl {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_config(const RootConfig& cfg) {
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0) || cfg.max_iter < 1) {
    throw std::invalid_argument("rootfind: RootConfig requires abs_tol > 0, rel_tol > 0, max_iter >= 1");
  }
}

}  // namespace

const char* to_string(RootStatus s) {
  switch (s) {
    case RootStatus::Converged: return "converged";
    case RootStatus::MaxIterExceeded: return "max_iter_exceeded";
    case RootStatus::LeftBracket: return "left_bracket";
    case RootStatus::DerivativeVanished: return "derivative_vanished";
  }
  return "unknown";
}

RootOutcome newton(const Fn& f, const Fn& df, double x0, const RootConfig& cfg) {
  const double inf = std::numeric_limits<double>::infinity();
  return newton(f, df, x0, -inf, inf, cfg);
}

RootOutcome newton(const Fn& f, const Fn& df, double x0, double lo, double hi,
                   const RootConfig& cfg) {
  check_config(cfg);
  if (!(lo <= x0 && x0 <= hi)) {
    throw std::invalid_argument("newton: x0 outside bracket");
  }
  double x = x0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double fx = f(x);
    if (!std::isfinite(fx)) return {x, fx, it, RootStatus::MaxIterExceeded};
    if (std::fabs(fx) <= cfg.abs_tol) return {x, fx, it, RootStatus::Converged};
    const double dfx = df(x);
    // Negated comparison so a NaN derivative also lands here.
    if (!(std::fabs(dfx) > kEps * std::max(1.0, std::fabs(fx)))) {
      return {x, fx, it, RootStatus::DerivativeVanished};
    }
    const double xn = x - fx / dfx;
    if (xn < lo || xn > hi) return {xn, fx, it, RootStatus::LeftBracket};
    if (std::fabs(xn - x) <= cfg.rel_tol * std::max(1.0, std::fabs(xn))) {
      // Tiny step: accept only if the residual is genuinely small.
      const double fxn = f(xn);
      if (std::fabs(fxn) <= cfg.abs_tol) return {xn, fxn, it + 1, RootStatus::Converged};
    }
    x = xn;
  }
  return {x, f(x), cfg.max_iter, RootStatus::MaxIterExceeded};
}

RootOutcome brent(const Fn& f, double lo, double hi, const RootConfig& cfg) {
  check_config(cfg);
  if (!(lo <= hi)) throw std::invalid_argument("brent: empty interval");
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (std::fabs(fa) <= cfg.abs_tol) return {a, fa, 0, RootStatus::Converged};
  if (std::fabs(fb) <= cfg.abs_tol) return {b, fb, 0, RootStatus::Converged};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw std::invalid_argument("brent: root not bracketed (no sign change)");
  }
  const double xtol = 0.5 * cfg.rel_tol * std::max(std::fabs(lo), std::fabs(hi));
  double c = b, fc = fb;
  double d = b - a, e = b - a;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::fabs(b) + xtol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || std::fabs(fb) <= cfg.abs_tol) {
      return {b, fb, it, RootStatus::Converged};
    }
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;  // interpolation rejected, bisect
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    if (std::fabs(d) > tol1) {
      b += d;
    } else {
      b += (xm >= 0.0 ? tol1 : -tol1);
    }
    fb = f(b);
  }
  return {b, fb, cfg.max_iter, RootStatus::MaxIterExceeded};
}

MinimizeOutcome golden_minimize(const Fn& f, double lo, double hi, const RootConfig& cfg) {
  check_config(cfg);
  if (!(lo <= hi)) throw std::invalid_argument("golden_minimize: lo > hi");
  if (lo == hi) return {lo, f(lo), 0};
  static const double kInvPhi = 0.5 * (std::sqrt(5.0) - 1.0);

  double best_x = lo, best_f = f(lo);
  auto consider = [&](double x, double fx) {
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }
  };
  consider(hi, f(hi));

  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  consider(c, fc);
  consider(d, fd);

  int it = 0;
  while (it < cfg.max_iter &&
         (b - a) > cfg.rel_tol * std::max(1.0, std::fabs(a) + std::fabs(b))) {
    ++it;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return {best_x, best_f, it};
}

}  // namespace mlqsl

#include "mlqsl/alpha.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mlqsl/tangency.hpp"

namespace mlqsl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Below this distance from eps = 1 the upper/newton backends switch to
// the leading-order form alpha = (1 - eps) * y_c / (pi sin^2 y_c); see
// critical_y(). The y-form objective is already stable much closer to 1
// than this, but the stationarity landscape flattens into noise.
constexpr double kNearOneCrossover = 1e-14;

// Limit of the y-form minimizer as eps -> 1: the root of y cot y = 1/2
// (equivalently tan y = 2y) in (pi/2 - 1, pi/2). Solved once.
double critical_y() {
  static const double yc = [] {
    auto g = [](double y) { return y * std::cos(y) / std::sin(y) - 0.5; };
    return brent(g, 1.0, 1.5, {}).root;
  }();
  return yc;
}

AlphaResult near_one_result(double eps, AlphaMethod method) {
  const double yc = critical_y();
  const double s = std::sin(yc);
  const double a = (1.0 - eps) * yc / (kPi * s * s);
  return {eps, a, method, 0, 0.0, RootStatus::Converged, yc};
}

// Objective of the lower construction, without the 2/pi factor.
double lower_objective(double theta, double overlap, const RootConfig& cfg) {
  const TangencyPoint tp = phi_of_theta(theta, cfg);
  return (std::cos(theta) - overlap) / tp.slope;
}

// Derivative numerator of the lower objective. Using
// d(phi)/d(theta) * cos(phi) = (sin phi - sin theta)/(phi - theta)
// removes the cos(phi) denominator, so this stays finite everywhere on
// the search interval:
//   S(theta) = -sin(theta) sin(phi) - (cos theta - overlap) (sin phi - sin theta)/(phi - theta)
// A stationary point of the objective is a root of S.
double lower_stationarity(double theta, double overlap, const RootConfig& cfg) {
  const TangencyPoint tp = phi_of_theta(theta, cfg);
  const double st = std::sin(theta);
  return -st * tp.slope -
         (std::cos(theta) - overlap) * (tp.slope - st) / (tp.phi - theta);
}

struct GlmPieces {
  double a;  // arccos argument 1 - (1-eps)/(2z(1-z))
  double w;  // 4z(1-z) - (1-eps); vanishes at the singular endpoint
  double b;  // algebraic branch ((1-2z)/(1-z)) sqrt((1-eps)/w)
};

GlmPieces glm_pieces(double eps, double z) {
  const double u = 1.0 - eps;
  const double zz = z * (1.0 - z);
  const double w = 4.0 * zz - u;
  const double b = (1.0 - 2.0 * z) / (1.0 - z) * std::sqrt(u / w);
  return {1.0 - u / (2.0 * zz), w, b};
}

double glm_constraint_derivative(double eps, double z) {
  const double u = 1.0 - eps;
  const double zz = z * (1.0 - z);
  const double w = 4.0 * zz - u;
  const double da = 0.5 * u * (1.0 - 2.0 * z) / (zz * zz);
  // sqrt(1 - a^2) = sqrt(u w) / (2 z (1 - z)) for z in the bracket
  const double root = std::sqrt(u * w);
  const double darccos = -da * (2.0 * zz) / root;
  const double sw = std::sqrt(w);
  const double one_mz = 1.0 - z;
  const double db = -std::sqrt(u) * (1.0 / (one_mz * one_mz * sw) +
                                     2.0 * (1.0 - 2.0 * z) * (1.0 - 2.0 * z) /
                                         (one_mz * w * sw));
  return darccos - db;
}

double finite_alpha_from_z(double eps, double z) {
  const GlmPieces p = glm_pieces(eps, z);
  return (2.0 * z / kPi) * std::acos(std::clamp(p.a, -1.0, 1.0));
}

}  // namespace

Fidelity::Fidelity(double eps) : eps_(eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::domain_error("Fidelity: eps must lie in [0, 1]");
  }
}

const char* to_string(AlphaMethod m) {
  switch (m) {
    case AlphaMethod::Lower: return "lower";
    case AlphaMethod::Upper: return "upper";
    case AlphaMethod::Newton: return "newton";
    case AlphaMethod::GlmLegacy: return "glm";
  }
  return "unknown";
}

double upper_objective(double eps, double y) {
  const double u = 1.0 - eps;
  const double s = std::sin(y);
  double x = u / (s * s);
  x = std::clamp(x, 0.0, 1.0);
  // 1 - sqrt(1 - x), cancellation-free
  const double frac = x / (1.0 + std::sqrt(1.0 - x));
  return (2.0 * y / kPi) * frac;
}

double newton_stationarity(double eps, double y) {
  const double u = 1.0 - eps;
  const double s = std::sin(y);
  const double csc2 = 1.0 / (s * s);
  const double d = std::sqrt(std::max(0.0, 1.0 - u * csc2));
  return y * (std::cos(y) / s) - d / (1.0 + d);
}

double newton_stationarity_derivative(double eps, double y) {
  const double u = 1.0 - eps;
  const double s = std::sin(y);
  const double c = std::cos(y);
  const double cot = c / s;
  const double csc2 = 1.0 / (s * s);
  const double d = std::sqrt(std::max(0.0, 1.0 - u * csc2));
  return cot - y * csc2 - u * csc2 * cot / (d * (1.0 + d) * (1.0 + d));
}

LowerOptimum lower_optimum(double eps, const RootConfig& cfg) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::domain_error("lower_optimum: eps must lie in [0, 1]");
  }
  if (eps == 1.0) {
    // The search interval collapses to {0} and the numerator vanishes.
    const TangencyPoint tp = phi_of_theta(0.0, cfg);
    return {0.0, tp.phi, 0.0, 0, 0.0};
  }
  const double overlap = std::sqrt(eps);

  if (eps == 0.0) {
    // Closed form: the maximizer satisfies tan(theta) = -2/pi with
    // phi = theta + pi, giving alpha = 1 exactly.
    const double th = -std::atan(2.0 / kPi);
    const TangencyPoint tp = phi_of_theta(th, cfg);
    const double alpha =
        std::clamp((2.0 / kPi) * (std::cos(th) - overlap) / tp.slope, 0.0, 1.0);
    return {th, tp.phi, alpha, 0, lower_stationarity(th, overlap, cfg)};
  }

  const double theta_lo = -std::acos(overlap);
  auto neg_obj = [&](double th) { return -lower_objective(th, overlap, cfg); };

  // Seed: 64-point grid keeps the per-evaluation root-find budget small.
  constexpr int kGrid = 64;
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  double nodes[kGrid];
  for (int i = 0; i < kGrid; ++i) {
    nodes[i] = theta_lo + (0.0 - theta_lo) * static_cast<double>(i) / (kGrid - 1);
    const double v = neg_obj(nodes[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double g_lo = nodes[std::max(0, best - 1)];
  const double g_hi = nodes[std::min(kGrid - 1, best + 1)];
  const MinimizeOutcome m = golden_minimize(neg_obj, g_lo, g_hi, cfg);

  // Polish: the maximum is flat (quadratic), so golden section leaves
  // ~1e-8 of slack in theta. A bracketed root-find on the stationarity
  // function recovers it to solver precision. S > 0 at the interval's
  // left end and S < 0 at theta = 0, so the fallback bracket always
  // holds a sign change.
  auto S = [&](double th) { return lower_stationarity(th, overlap, cfg); };
  double lo = m.argmin, hi = m.argmin;
  double s_lo = S(lo), s_hi = s_lo;
  for (double w = 1e-6 * std::max(1.0, std::fabs(m.argmin)); lo > theta_lo || hi < 0.0;
       w *= 8.0) {
    lo = std::max(theta_lo, m.argmin - w);
    hi = std::min(0.0, m.argmin + w);
    s_lo = S(lo);
    s_hi = S(hi);
    if ((s_lo > 0.0) != (s_hi > 0.0)) break;
  }
  double theta_opt = m.argmin;
  int polish_iters = 0;
  double residual = S(theta_opt);
  if ((s_lo > 0.0) != (s_hi > 0.0)) {
    const RootOutcome r = brent(S, lo, hi, cfg);
    theta_opt = std::clamp(r.root, theta_lo, 0.0);
    polish_iters = r.iterations;
    residual = r.residual;
  }

  const TangencyPoint tp = phi_of_theta(theta_opt, cfg);
  const double alpha =
      std::clamp((2.0 / kPi) * (std::cos(theta_opt) - overlap) / tp.slope, 0.0, 1.0);
  return {theta_opt, tp.phi, alpha, m.iterations + polish_iters, residual};
}

AlphaResult alpha_lower(Fidelity eps, const RootConfig& cfg) {
  const LowerOptimum o = lower_optimum(eps.value(), cfg);
  return {eps.value(), o.alpha,    AlphaMethod::Lower,   o.iterations,
          o.residual,  RootStatus::Converged, o.theta_opt};
}

AlphaResult alpha_upper(Fidelity eps, const RootConfig& cfg) {
  const double e = eps.value();
  if (1.0 - e < kNearOneCrossover) return near_one_result(e, AlphaMethod::Upper);
  const double y_lo = std::asin(std::sqrt(1.0 - e));
  // At eps = 0 the interval degenerates to {pi/2} and the objective
  // evaluates to 1 exactly.
  auto obj = [e](double y) { return upper_objective(e, y); };
  const MinimizeOutcome m = golden_minimize(obj, y_lo, kHalfPi, cfg);
  return {e, m.min, AlphaMethod::Upper, m.iterations, 0.0, RootStatus::Converged, m.argmin};
}

AlphaResult alpha_newton(Fidelity eps, const RootConfig& cfg) {
  const double e = eps.value();
  if (1.0 - e < kNearOneCrossover) return near_one_result(e, AlphaMethod::Newton);
  if (e == 0.0) {
    // y is pinned at pi/2; nothing to solve.
    return {e, 1.0, AlphaMethod::Newton, 0, 0.0, RootStatus::Converged, kHalfPi};
  }
  const double y_lo = std::asin(std::sqrt(1.0 - e));
  const double y0 = 0.5 * (y_lo + kHalfPi);
  auto g = [e](double y) { return newton_stationarity(e, y); };
  auto dg = [e](double y) { return newton_stationarity_derivative(e, y); };
  const RootOutcome r = newton(g, dg, y0, y_lo, kHalfPi, cfg);
  const double a = r.converged() ? upper_objective(e, r.root) : kNaN;
  return {e, a, AlphaMethod::Newton, r.iterations, r.residual, r.status, r.root};
}

double glm_constraint(double eps, double z) {
  const GlmPieces p = glm_pieces(eps, z);
  return std::acos(std::clamp(p.a, -1.0, 1.0)) - p.b;
}

int glm_sign_changes(double eps, int n) {
  if (n < 2) throw std::invalid_argument("glm_sign_changes: need n >= 2");
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("glm_sign_changes: interior eps only");
  }
  const double s = 0.5 * (1.0 - std::sqrt(eps));
  // Stay off the singular endpoint where the constraint is -inf.
  const double lo = s + 1e-9 * (0.5 - s);
  int changes = 0;
  double prev = glm_constraint(eps, lo);
  for (int i = 1; i < n; ++i) {
    const double z = lo + (0.5 - lo) * static_cast<double>(i) / (n - 1);
    const double cur = glm_constraint(eps, z);
    if ((prev < 0.0 && cur >= 0.0) || (prev >= 0.0 && cur < 0.0)) ++changes;
    prev = cur;
  }
  return changes;
}

GlmParams glm_parameters(double theta, const RootConfig& cfg) {
  if (!(std::fabs(theta) < kHalfPi)) {
    throw std::domain_error("glm_parameters: |theta| must be below pi/2");
  }
  const TangencyPoint tp = phi_of_theta(theta, cfg);
  return {-std::tan(theta), tp.slope / std::cos(theta)};
}

AlphaResult alpha_glm_legacy(Fidelity eps, const GlmRootMethod& method,
                             const RootConfig& cfg) {
  const double e = eps.value();
  if (e == 1.0) {
    // The constraint is identically satisfied and the arccos factor is
    // zero for every z; alpha = 0 with z reported at the interval top.
    return {e, 0.0, AlphaMethod::GlmLegacy, 0, 0.0, RootStatus::Converged, 0.5};
  }
  if (e == 0.0) {
    // z is pinned at 1/2 where the arccos argument is -1: alpha = 1.
    return {e, 1.0, AlphaMethod::GlmLegacy, 0, 0.0, RootStatus::Converged, 0.5};
  }
  const double s = 0.5 * (1.0 - std::sqrt(e));
  auto c = [e](double z) { return glm_constraint(e, z); };

  RootOutcome out;
  if (method.kind == GlmRootMethod::Kind::Newton) {
    auto dc = [e](double z) { return glm_constraint_derivative(e, z); };
    const double z0 = method.p * s + (1.0 - method.p) * 0.5;
    out = newton(c, dc, z0, s, 0.5, cfg);
  } else {
    // The constraint dives to -inf at z = s; walk the left edge inward
    // until it evaluates finite and negative, then hand Brent a genuine
    // bracket (c(1/2) = arccos(2 eps - 1) > 0).
    double lo = 0.5;
    for (double k : {1e-12, 1e-9, 1e-6, 1e-3}) {
      const double cand = s + k * (0.5 - s);
      const double v = c(cand);
      if (std::isfinite(v) && v < 0.0) {
        lo = cand;
        break;
      }
    }
    out = brent(c, lo, 0.5, cfg);
  }

  if (!out.converged()) {
    return {e, kNaN, AlphaMethod::GlmLegacy, out.iterations, out.residual, out.status,
            out.root};
  }
  return {e,
          finite_alpha_from_z(e, out.root),
          AlphaMethod::GlmLegacy,
          out.iterations,
          out.residual,
          out.status,
          out.root};
}

std::vector<AlphaRow> alpha_table(const std::vector<double>& eps_grid,
                                  const MethodSet& methods, const RootConfig& cfg) {
  std::vector<AlphaRow> rows;
  rows.reserve(eps_grid.size());
  for (const double e : eps_grid) {
    AlphaRow row;
    row.epsilon = Fidelity(e).value();
    row.alpha_lower = row.alpha_upper = row.alpha_newton = row.alpha_glm = kNaN;
    std::vector<double> vals;
    std::string bad;
    auto record = [&](const AlphaResult& r, double& slot) {
      slot = r.alpha;
      if (r.converged()) {
        vals.push_back(r.alpha);
      } else {
        if (!bad.empty()) bad += ';';
        bad += std::string(to_string(r.method)) + "=" + to_string(r.status);
      }
    };
    if (methods.lower) record(alpha_lower(Fidelity(e), cfg), row.alpha_lower);
    if (methods.upper) record(alpha_upper(Fidelity(e), cfg), row.alpha_upper);
    if (methods.newton) {
      const AlphaResult r = alpha_newton(Fidelity(e), cfg);
      row.iters_newton = r.iterations;
      record(r, row.alpha_newton);
    }
    if (methods.glm) record(alpha_glm_legacy(Fidelity(e), GlmRootMethod::brent(), cfg),
                            row.alpha_glm);
    double max_rel = 0.0;
    for (size_t i = 0; i < vals.size(); ++i) {
      for (size_t j = i + 1; j < vals.size(); ++j) {
        const double scale = std::max(std::fabs(vals[i]), std::fabs(vals[j]));
        if (scale > 0.0) max_rel = std::max(max_rel, std::fabs(vals[i] - vals[j]) / scale);
      }
    }
    row.max_rel_diff = max_rel;
    row.ok = bad.empty();
    row.status = bad.empty() ? "ok" : bad;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mlqsl

#include "mlqsl/tangency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mlqsl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

}  // namespace

bool theta_in_domain(double theta) {
  return std::isfinite(theta) && theta > -kPi + kThetaMargin && theta < kPi - kThetaMargin;
}

double tangency_residual(double theta, double x) {
  return std::cos(theta) - std::cos(x) - (x - theta) * std::sin(x);
}

TangencyPoint phi_of_theta(double theta, const RootConfig& cfg) {
  if (!theta_in_domain(theta)) {
    throw std::domain_error("phi_of_theta: theta outside supported open interval (-pi, pi)");
  }
  if (theta >= kHalfPi) {
    // The bounding line is tangent at the anchor itself.
    return {theta, theta, std::sin(theta)};
  }
  const double lo = std::max(kHalfPi, std::fabs(theta));
  // h(lo) < 0 analytically, but it decays cubically as theta -> pi/2 and
  // roundoff can flip its sign there; widen by two ulps and treat a
  // nonnegative value as the root collapsing onto the endpoint.
  const double lo_w = lo - 2.0 * std::numeric_limits<double>::epsilon() * lo;
  auto h = [theta](double x) { return tangency_residual(theta, x); };
  if (h(lo_w) >= 0.0) {
    return {theta, lo, std::sin(lo)};
  }
  // h(pi) = cos(theta) + 1 > 0 on the supported range, so [lo_w, pi]
  // brackets. Within ~1e-7 of theta = -pi the margin cos(theta) + 1
  // shrinks below the sin(pi) rounding of the last term and h(pi) can
  // evaluate negative; the root then sits within an ulp of pi.
  if (h(kPi) <= 0.0) {
    return {theta, kPi, std::sin(kPi)};
  }
  const RootOutcome r = brent(h, lo_w, kPi, cfg);
  const double phi = std::clamp(r.root, lo, kPi);
  return {theta, phi, std::sin(phi)};
}

double a_theta(double theta, const RootConfig& cfg) {
  return phi_of_theta(theta, cfg).slope;
}

double f_theta(const TangencyPoint& tp, double x) {
  return std::cos(x) - std::cos(tp.theta) + (x - tp.theta) * tp.slope;
}

double f_theta(double theta, double x, const RootConfig& cfg) {
  return f_theta(phi_of_theta(theta, cfg), x);
}

double dphi_dtheta(double theta, bool strict, const RootConfig& cfg) {
  if (!theta_in_domain(theta)) {
    throw std::domain_error("dphi_dtheta: theta outside supported open interval (-pi, pi)");
  }
  if (theta >= kHalfPi) {
    if (strict) {
      throw std::domain_error("dphi_dtheta: closed form requires theta < pi/2");
    }
    return 1.0;
  }
  const TangencyPoint tp = phi_of_theta(theta, cfg);
  return (tp.slope - std::sin(theta)) / ((tp.phi - theta) * std::cos(tp.phi));
}

}  // namespace mlqsl

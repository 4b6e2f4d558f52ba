#pragma once

#include "mlqsl/rootfind.hpp"

// Tangent-line construction on the cosine curve: for an anchor angle
// theta, the steepest line through (theta, cos theta) that stays below
// cos x for all x >= theta touches the curve tangentially at an abscissa
// phi(theta) in [max(pi/2, |theta|), pi]. Its slope is -sin(phi). These
// functions compute phi, the slope magnitude A = sin(phi), the gap
// between curve and line, and the closed-form derivative d(phi)/d(theta).

namespace mlqsl {

// Supported anchor range. The construction is defined on the open
// interval (-pi, pi); a 1e-9 sliver is shaved off both ends, where
// phi approaches the wraparound at pi and the root becomes degenerate.
inline constexpr double kThetaMargin = 1e-9;

bool theta_in_domain(double theta);

struct TangencyPoint {
  double theta;
  double phi;    // in [max(pi/2, |theta|), pi]; equals theta once theta >= pi/2
  double slope;  // sin(phi)
};

// Residual whose unique root in [max(pi/2, |theta|), pi] is phi(theta):
//   h(x) = cos(theta) - cos(x) - (x - theta) sin(x)
// (the chord slope from theta to x equals the curve slope at x).
double tangency_residual(double theta, double x);

TangencyPoint phi_of_theta(double theta, const RootConfig& cfg = {});

// sin(phi(theta)): the supremum of (cos theta - cos x)/(x - theta) over
// x > theta, i.e. the optimal bounding-line slope.
double a_theta(double theta, const RootConfig& cfg = {});

// Gap function f_theta(x) = cos x - cos theta + (x - theta) sin(phi).
// Nonnegative for all x >= theta, with a simple zero at theta and a
// double zero at phi. The second overload avoids re-solving for phi.
double f_theta(double theta, double x, const RootConfig& cfg = {});
double f_theta(const TangencyPoint& tp, double x);

// d(phi)/d(theta) = (sin phi - sin theta) / ((phi - theta) cos phi),
// valid for theta < pi/2 where it lies in [-1, 0]. Past pi/2 phi equals
// theta, so the derivative is 1; pass strict = true to reject that
// branch instead of returning the identity derivative.
double dphi_dtheta(double theta, bool strict = false, const RootConfig& cfg = {});

}  // namespace mlqsl

#pragma once

#include <vector>

namespace wingwrap {

inline constexpr double kStandardGravity = 9.80665;  // m/s^2

/// Static squeeze on the pole after a perch: the settled trial's residual
/// contact normal forces plus the friction and weight they must support.
/// Gravity acts along the pole axis, out of the wrap plane.
struct GripState {
  std::vector<double> normal_forces;  // N, each >= 0
  double total_wrap_angle = 0.0;      // rad, both wings combined
  double friction_mu = 0.0;
  double vehicle_mass = 0.0;          // kg
};

struct HoldReport {
  double capacity = 0.0;  // N of axial friction available
  double required = 0.0;  // N = m * g
  bool holds = false;
  double margin = 0.0;    // capacity / required; +infinity when required is 0
};

/// Minimum total normal force N_total with friction_mu * N_total = m * g.
/// Throws ValidationError when friction_mu <= 0 (frictionless hold is
/// impossible) or vehicle_mass < 0.
double required_normal_force(double vehicle_mass, double friction_mu);

/// Classical capstan relation e^(mu * theta): tension amplification of a
/// flexible member wrapped theta radians around a cylinder.
/// Throws ValidationError for negative theta or friction_mu.
double capstan_tension_ratio(double theta, double friction_mu);

/// capacity = mu * sum(normal forces); holds iff capacity >= m * g.
/// Throws ValidationError on negative entries.
HoldReport slide_check(const GripState& grip);

}  // namespace wingwrap

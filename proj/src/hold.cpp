#include "wingwrap/hold.hpp"

#include <cmath>
#include <limits>

#include "wingwrap/errors.hpp"

namespace wingwrap {

double required_normal_force(double vehicle_mass, double friction_mu) {
  if (vehicle_mass < 0.0) throw ValidationError("vehicle_mass must be >= 0");
  if (!(friction_mu > 0.0)) {
    throw ValidationError("frictionless hold impossible: friction_mu must be > 0");
  }
  return vehicle_mass * kStandardGravity / friction_mu;
}

double capstan_tension_ratio(double theta, double friction_mu) {
  if (theta < 0.0) throw ValidationError("capstan angle must be >= 0");
  if (friction_mu < 0.0) throw ValidationError("friction_mu must be >= 0");
  return std::exp(friction_mu * theta);
}

HoldReport slide_check(const GripState& grip) {
  if (grip.friction_mu < 0.0) throw ValidationError("friction_mu must be >= 0");
  if (grip.vehicle_mass < 0.0) throw ValidationError("vehicle_mass must be >= 0");
  if (grip.total_wrap_angle < 0.0) throw ValidationError("total_wrap_angle must be >= 0");

  double total_normal = 0.0;
  for (double f : grip.normal_forces) {
    if (f < 0.0) throw ValidationError("normal forces must be >= 0");
    total_normal += f;
  }

  HoldReport report;
  report.capacity = grip.friction_mu * total_normal;
  report.required = grip.vehicle_mass * kStandardGravity;
  report.holds = report.capacity >= report.required;
  report.margin = report.required > 0.0 ? report.capacity / report.required
                                        : std::numeric_limits<double>::infinity();
  return report;
}

}  // namespace wingwrap

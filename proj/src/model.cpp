#include "wingwrap/model.hpp"

#include <algorithm>

#include "wingwrap/errors.hpp"

namespace wingwrap {

namespace {

std::vector<BodyDef> build_chain(const WingSpec& wing, double tip_mass) {
  std::vector<BodyDef> chain;
  chain.reserve(wing.segments.size());
  for (std::size_t i = 0; i < wing.segments.size(); ++i) {
    const SegmentSpec& s = wing.segments[i];
    BodyDef b;
    b.length = s.length;
    b.half_thickness = s.half_thickness;
    const bool is_tip = (i + 1 == wing.segments.size());
    const double added = is_tip ? tip_mass : 0.0;
    b.mass = s.mass + added;
    b.com_offset = (s.mass * 0.5 * s.length + added * s.length) / b.mass;
    const double rod_center = 0.5 * s.length;
    b.inertia = s.mass * s.length * s.length / 12.0 +
                s.mass * (b.com_offset - rod_center) * (b.com_offset - rod_center) +
                added * (s.length - b.com_offset) * (s.length - b.com_offset);
    chain.push_back(b);
  }
  return chain;
}

std::vector<JointDef> build_joints(const WingSpec& wing, int* next_dof) {
  std::vector<JointDef> joints;
  joints.reserve(wing.hinges.size());
  for (std::size_t i = 0; i < wing.hinges.size(); ++i) {
    JointDef j;
    j.hinge = wing.hinges[i];
    j.welded = (i == 0 && wing.root_rigid);
    j.dof = j.welded ? -1 : (*next_dof)++;
    joints.push_back(j);
  }
  return joints;
}

}  // namespace

bool ArticulatedModel::symmetric_layout() const {
  if (segment_count(Side::Left) != segment_count(Side::Right)) return false;
  const auto& l = side_joints(Side::Left);
  const auto& r = side_joints(Side::Right);
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i].welded != r[i].welded) return false;
  }
  return true;
}

double ArticulatedModel::half_span() const {
  double span = spec.fuselage_half_width;
  double left = 0.0, right = 0.0;
  for (const BodyDef& b : segments(Side::Left)) left += b.length;
  for (const BodyDef& b : segments(Side::Right)) right += b.length;
  return span + std::max(left, right);
}

ArticulatedModel build_model(const VehicleSpec& vehicle) {
  const std::vector<ValidationIssue> issues = validate_vehicle(vehicle);
  if (!issues.empty()) {
    throw ValidationError("invalid vehicle spec: " + format_issues(issues));
  }

  ArticulatedModel m;
  m.spec = vehicle;

  m.baseline_mass = vehicle.fuselage_mass;
  for (const SegmentSpec& s : vehicle.left_wing.segments) m.baseline_mass += s.mass;
  for (const SegmentSpec& s : vehicle.right_wing.segments) m.baseline_mass += s.mass;
  m.tip_mass_per_wing = 0.5 * vehicle.tip_mass_fraction * m.baseline_mass;
  m.total_mass = m.baseline_mass + 2.0 * m.tip_mass_per_wing;

  m.fuselage.mass = vehicle.fuselage_mass;
  m.fuselage.half_thickness = vehicle.fuselage_half_width;
  // Solid disc of the collision half-width; the wings dominate the vehicle's
  // rotational inertia so the disc approximation is benign.
  m.fuselage.inertia = 0.5 * vehicle.fuselage_mass * vehicle.fuselage_half_width *
                       vehicle.fuselage_half_width;

  m.chain[0] = build_chain(vehicle.left_wing, m.tip_mass_per_wing);
  m.chain[1] = build_chain(vehicle.right_wing, m.tip_mass_per_wing);

  int next_dof = 3;
  m.joints[0] = build_joints(vehicle.left_wing, &next_dof);
  m.joints[1] = build_joints(vehicle.right_wing, &next_dof);
  m.ndof = next_dof;
  return m;
}

}  // namespace wingwrap

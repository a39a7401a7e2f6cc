#pragma once

#include <vector>

#include "wingwrap/geometry.hpp"
#include "wingwrap/kinematics.hpp"
#include "wingwrap/model.hpp"
#include "wingwrap/state.hpp"

namespace wingwrap {

/// One body-vs-pole contact. `normal` is the unit direction from the pole
/// surface toward the body axis, so positive normal force pushes the body
/// off the pole. `point` lies on the body surface facing the pole.
struct Contact {
  int body_id = 0;
  Vec2 point = Vec2::Zero();
  Vec2 normal = Vec2::Zero();
  double penetration = 0.0;          // >= 0
  Vec2 relative_velocity = Vec2::Zero();  // body material point; pole is fixed
};

/// Capsule-axis-vs-circle test shared by every body.
/// penetration = (pole_radius + half_thickness) - |closest axis point|,
/// negative when separated. A zero-length axis (p0 == p1) is a disc.
struct CirclePenetration {
  double penetration;
  Vec2 axis_point;
  Vec2 normal;
};
CirclePenetration circle_capsule_penetration(const Vec2& p0, const Vec2& p1,
                                             double half_thickness, const Vec2& pole_center,
                                             double pole_radius);

/// At most one contact per body (deepest axis point), bodies in flat-id
/// order. Touching counts: penetration 0 is included, separation is not.
std::vector<Contact> detect_contacts(const ArticulatedModel& model, const State& s,
                                     const PoleSpec& pole);
std::vector<Contact> detect_contacts(const ArticulatedModel& model, const Kinematics& kin,
                                     const PoleSpec& pole);

/// Penalty normal force plus regularized Coulomb friction, in world frame.
/// The normal component never pulls: max(0, kn*pen + cn*approach_speed).
Vec2 contact_force(const Contact& c, const MaterialParams& material);

/// Normal-force magnitude alone (the clamped penalty term); feeds both the
/// force vector and the residual-grip reporting.
double contact_normal_magnitude(const Contact& c, const MaterialParams& material);

}  // namespace wingwrap

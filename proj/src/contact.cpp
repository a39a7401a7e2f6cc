#include "wingwrap/contact.hpp"

#include <algorithm>
#include <cmath>

namespace wingwrap {

CirclePenetration circle_capsule_penetration(const Vec2& p0, const Vec2& p1,
                                             double half_thickness, const Vec2& pole_center,
                                             double pole_radius) {
  CirclePenetration r;
  r.axis_point = closest_point_on_segment(p0, p1, pole_center);
  const Vec2 d = r.axis_point - pole_center;
  const double dist = d.norm();
  r.penetration = (pole_radius + half_thickness) - dist;
  if (dist > 1e-12) {
    r.normal = d / dist;
  } else {
    // Axis point at the pole center: direction is degenerate. Push along the
    // axis normal (or +x for a disc) so the resolution stays deterministic.
    const Vec2 axis = p1 - p0;
    r.normal = axis.squaredNorm() > 1e-24 ? perp(axis.normalized()) : Vec2(1.0, 0.0);
  }
  return r;
}

std::vector<Contact> detect_contacts(const ArticulatedModel& model, const Kinematics& kin,
                                     const PoleSpec& pole) {
  std::vector<Contact> contacts;
  const Vec2 center = Vec2::Zero();

  auto consider = [&](int body_id, const Vec2& p0, const Vec2& p1, double half_thickness) {
    const CirclePenetration pen =
        circle_capsule_penetration(p0, p1, half_thickness, center, pole.radius);
    if (pen.penetration < 0.0) return;
    Contact c;
    c.body_id = body_id;
    c.normal = pen.normal;
    c.penetration = pen.penetration;
    c.point = pen.axis_point - half_thickness * pen.normal;
    c.relative_velocity = kin.point_velocity(model, body_id, c.point);
    contacts.push_back(c);
  };

  consider(0, kin.fuselage.com, kin.fuselage.com, model.fuselage.half_thickness);
  for (Side side : {Side::Left, Side::Right}) {
    const auto& segs = model.segments(side);
    const auto& ck = kin.chain[static_cast<int>(side)];
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const Vec2 p0 = ck[k].inboard;
      const Vec2 p1 = p0 + segs[k].length * ck[k].u;
      consider(model.body_id(side, static_cast<int>(k)), p0, p1, segs[k].half_thickness);
    }
  }
  return contacts;
}

std::vector<Contact> detect_contacts(const ArticulatedModel& model, const State& s,
                                     const PoleSpec& pole) {
  Kinematics kin;
  compute_kinematics(model, s, &kin);
  return detect_contacts(model, kin, pole);
}

double contact_normal_magnitude(const Contact& c, const MaterialParams& material) {
  const double approach = -c.relative_velocity.dot(c.normal);
  return std::max(0.0, material.normal_stiffness * c.penetration +
                           material.normal_damping * approach);
}

Vec2 contact_force(const Contact& c, const MaterialParams& material) {
  const double n_mag = contact_normal_magnitude(c, material);
  const Vec2 tangent = perp(c.normal);
  const double slip = c.relative_velocity.dot(tangent);
  const double sat =
      std::clamp(slip / material.slip_regularization_velocity, -1.0, 1.0);
  const double f_t = -material.friction_mu * n_mag * sat;
  return n_mag * c.normal + f_t * tangent;
}

}  // namespace wingwrap

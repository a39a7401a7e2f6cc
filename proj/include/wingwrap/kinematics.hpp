#pragma once

#include <array>
#include <vector>

#include "wingwrap/geometry.hpp"
#include "wingwrap/model.hpp"
#include "wingwrap/state.hpp"

namespace wingwrap {

/// World placement and velocity of one body.
struct BodyKin {
  Vec2 inboard;   // inboard joint position (fuselage: base position)
  double angle;   // world axis angle
  Vec2 u;         // unit_from_angle(angle)
  double omega;   // world angular rate
  Vec2 com;
  Vec2 com_vel;
};

struct Kinematics {
  BodyKin fuselage;
  std::array<std::vector<BodyKin>, 2> chain;

  const BodyKin& body(const ArticulatedModel& m, int body_id) const {
    if (body_id == 0) return fuselage;
    const int n_left = static_cast<int>(chain[0].size());
    (void)m;
    return body_id <= n_left ? chain[0][body_id - 1] : chain[1][body_id - 1 - n_left];
  }

  /// Velocity of a material point of body `body_id` at world position p.
  Vec2 point_velocity(const ArticulatedModel& m, int body_id, const Vec2& p) const {
    const BodyKin& b = body(m, body_id);
    return b.com_vel + b.omega * perp(p - b.com);
  }

  /// Outboard end of a chain's last segment.
  Vec2 tip_position(const ArticulatedModel& m, Side s) const {
    const auto& c = chain[static_cast<int>(s)];
    const BodyDef& def = m.segments(s).back();
    return c.back().inboard + def.length * c.back().u;
  }

  Vec2 tip_velocity(const ArticulatedModel& m, Side s) const {
    return point_velocity(m, m.body_id(s, m.segment_count(s) - 1), tip_position(m, s));
  }
};

/// Forward pass over both chains. Left and right are computed independently,
/// so mirrored states produce exactly mirrored placements.
void compute_kinematics(const ArticulatedModel& model, const State& s, Kinematics* out);

inline Kinematics compute_kinematics(const ArticulatedModel& model, const State& s) {
  Kinematics k;
  compute_kinematics(model, s, &k);
  return k;
}

}  // namespace wingwrap

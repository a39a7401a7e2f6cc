#pragma once

#include <Eigen/Dense>

#include "wingwrap/geometry.hpp"
#include "wingwrap/model.hpp"

namespace wingwrap {

/// Instantaneous configuration in minimal coordinates.
/// q = [base x, base y, heading, fold angles...] matching the model's dof
/// layout; v holds the matching rates; t is simulation time in seconds.
struct State {
  Eigen::VectorXd q;
  Eigen::VectorXd v;
  double t = 0.0;

  Vec2 base_position() const { return Vec2(q[0], q[1]); }
  Vec2 base_velocity() const { return Vec2(v[0], v[1]); }
  double heading() const { return q[2]; }
  double heading_rate() const { return v[2]; }

  bool all_finite() const { return q.allFinite() && v.allFinite() && std::isfinite(t); }
};

/// Straight-wing state: base at `position` with `heading`, moving at `speed`
/// along the heading, all fold angles and rates zero.
State make_launch_state(const ArticulatedModel& model, const Vec2& position, double heading,
                        double speed);

/// Fold angle of a joint; zero for a welded root.
double fold_angle(const ArticulatedModel& model, const State& s, Side side, int joint_index);
double fold_rate(const ArticulatedModel& model, const State& s, Side side, int joint_index);

}  // namespace wingwrap

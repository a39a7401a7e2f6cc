#include "wingwrap/kinematics.hpp"

namespace wingwrap {

namespace {

void compute_chain(const ArticulatedModel& m, const State& s, Side side,
                   std::vector<BodyKin>* out) {
  const auto& segs = m.segments(side);
  const auto& joints = m.side_joints(side);
  out->resize(segs.size());

  const double theta = s.heading();
  const double theta_dot = s.heading_rate();
  const double sigma = side_fold_sign(side);
  const double w = m.spec.fuselage_half_width;

  const Vec2 attach_dir = unit_from_angle(theta + side_base_angle(side));
  Vec2 p = s.base_position() + w * attach_dir;
  Vec2 p_vel = s.base_velocity() + theta_dot * w * perp(attach_dir);

  double angle = theta + side_base_angle(side);
  double omega = theta_dot;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    if (!joints[k].welded) {
      angle += sigma * s.q[joints[k].dof];
      omega += sigma * s.v[joints[k].dof];
    }
    BodyKin& b = (*out)[k];
    b.inboard = p;
    b.angle = angle;
    b.u = unit_from_angle(angle);
    b.omega = omega;
    b.com = p + segs[k].com_offset * b.u;
    b.com_vel = p_vel + omega * segs[k].com_offset * perp(b.u);
    p = p + segs[k].length * b.u;
    p_vel = p_vel + omega * segs[k].length * perp(b.u);
  }
}

}  // namespace

void compute_kinematics(const ArticulatedModel& model, const State& s, Kinematics* out) {
  out->fuselage.inboard = s.base_position();
  out->fuselage.angle = s.heading();
  out->fuselage.u = unit_from_angle(s.heading());
  out->fuselage.omega = s.heading_rate();
  out->fuselage.com = s.base_position();
  out->fuselage.com_vel = s.base_velocity();
  compute_chain(model, s, Side::Left, &out->chain[0]);
  compute_chain(model, s, Side::Right, &out->chain[1]);
}

State make_launch_state(const ArticulatedModel& model, const Vec2& position, double heading,
                        double speed) {
  State s;
  s.q = Eigen::VectorXd::Zero(model.ndof);
  s.v = Eigen::VectorXd::Zero(model.ndof);
  s.q[0] = position.x();
  s.q[1] = position.y();
  s.q[2] = heading;
  const Vec2 vel = speed * unit_from_angle(heading);
  s.v[0] = vel.x();
  s.v[1] = vel.y();
  return s;
}

double fold_angle(const ArticulatedModel& model, const State& s, Side side, int joint_index) {
  const JointDef& j = model.side_joints(side)[joint_index];
  return j.welded ? 0.0 : s.q[j.dof];
}

double fold_rate(const ArticulatedModel& model, const State& s, Side side, int joint_index) {
  const JointDef& j = model.side_joints(side)[joint_index];
  return j.welded ? 0.0 : s.v[j.dof];
}

}  // namespace wingwrap

#include "wingwrap/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "wingwrap/errors.hpp"

namespace wingwrap {

namespace {

/// Suffix mass sums and mass-weighted COM sums along one chain, outboard of
/// each joint. Lets the COM-offset Jacobian be built in O(n):
/// sum_k m_k * perp(com_k - P_j) = perp(S_j - M_j * P_j).
struct ChainSuffix {
  std::vector<double> mass;
  std::vector<Vec2> moment;

  void compute(const std::vector<BodyDef>& segs, const std::vector<BodyKin>& kin) {
    const std::size_t n = segs.size();
    mass.resize(n);
    moment.resize(n);
    double m_acc = 0.0;
    Vec2 s_acc = Vec2::Zero();
    for (std::size_t r = n; r-- > 0;) {
      m_acc += segs[r].mass;
      s_acc += segs[r].mass * kin[r].com;
      mass[r] = m_acc;
      moment[r] = s_acc;
    }
  }
};

}  // namespace

double joint_torque(const HingeSpec& hinge, double fold_angle, double fold_rate) {
  double tau = -hinge.free_stiffness * fold_angle - hinge.free_damping * fold_rate;
  if (fold_angle < 0.0) {
    tau -= hinge.block_stiffness * fold_angle;
  } else if (fold_angle > hinge.max_fold_angle) {
    tau -= hinge.block_stiffness * (fold_angle - hinge.max_fold_angle);
  }
  return tau;
}

Simulator::Simulator(const ArticulatedModel& model, const PoleSpec& pole,
                     const MaterialParams& material)
    : model_(model), pole_(pole), material_(material) {
  paired_ = model_.symmetric_layout();
  nw_ = 1 + model_.joint_dof_count();

  for (Side side : {Side::Left, Side::Right}) {
    const auto& joints = model_.side_joints(side);
    auto& maps = colmap_[static_cast<int>(side)];
    maps.resize(joints.size());
    int ordinal = 0;
    for (std::size_t k = 0; k < joints.size(); ++k) {
      if (joints[k].welded) continue;
      if (paired_) {
        maps[k].col_a = 1 + 2 * ordinal;
        maps[k].col_b = 2 + 2 * ordinal;
        maps[k].sign_b = (side == Side::Left) ? 1.0 : -1.0;
      } else {
        maps[k].col_a = 1 + (joints[k].dof - 3);
        maps[k].col_b = -1;
      }
      ++ordinal;
    }
  }

  const int nb = model_.body_count();
  jshape_.assign(nb, Eigen::Matrix2Xd::Zero(2, nw_));
  jomega_.assign(nb, Eigen::RowVectorXd::Zero(nw_));
  abias_.assign(nb, Vec2::Zero());

  Mt_.setZero(nw_, nw_);
  tmpA_.setZero(nw_, nw_);
  tmpB_.setZero(nw_, nw_);
  jdelta_.setZero(2, nw_);
  tmpJ_.setZero(2, nw_);
  bt_.setZero(nw_);
  qshape_fus_.setZero(nw_);
  qshape_side_[0].setZero(nw_);
  qshape_side_[1].setZero(nw_);
  qt_.setZero(nw_);
  rhs_.setZero(nw_);
  wt_vel_.setZero(nw_);
  wt_acc_.setZero(nw_);
  tmpw_.setZero(nw_);
  llt_ = Eigen::LLT<Eigen::MatrixXd>(nw_);
}

void Simulator::rates_to_internal(const Eigen::VectorXd& v, Eigen::VectorXd* wt) const {
  (*wt)[0] = v[2];
  if (!paired_) {
    for (int g = 0; g < model_.joint_dof_count(); ++g) (*wt)[1 + g] = v[3 + g];
    return;
  }
  const auto& jl = model_.side_joints(Side::Left);
  const auto& jr = model_.side_joints(Side::Right);
  const auto& maps = colmap_[0];
  for (std::size_t k = 0; k < jl.size(); ++k) {
    if (jl[k].welded) continue;
    const double a = v[jl[k].dof];
    const double b = v[jr[k].dof];
    (*wt)[maps[k].col_a] = (a + b) * 0.5;
    (*wt)[maps[k].col_b] = (a - b) * 0.5;
  }
}

void Simulator::rates_from_internal(const Eigen::VectorXd& wt, Eigen::VectorXd* v) const {
  (*v)[2] = wt[0];
  if (!paired_) {
    for (int g = 0; g < model_.joint_dof_count(); ++g) (*v)[3 + g] = wt[1 + g];
    return;
  }
  const auto& jl = model_.side_joints(Side::Left);
  const auto& jr = model_.side_joints(Side::Right);
  const auto& maps = colmap_[0];
  for (std::size_t k = 0; k < jl.size(); ++k) {
    if (jl[k].welded) continue;
    const double s = wt[maps[k].col_a];
    const double d = wt[maps[k].col_b];
    (*v)[jl[k].dof] = s + d;
    (*v)[jr[k].dof] = s - d;
  }
}

void Simulator::compute_delta_and_jacobian(const Kinematics& kin) {
  static thread_local ChainSuffix suffix[2];
  const Vec2 base = kin.fuselage.com;

  jdelta_.setZero();
  for (Side side : {Side::Left, Side::Right}) {
    const int si = static_cast<int>(side);
    suffix[si].compute(model_.segments(side), kin.chain[si]);
  }

  // Joint columns: sum over this side's outboard bodies of m*perp(com - P_j).
  for (std::size_t k = 0; k < colmap_[0].size() || k < colmap_[1].size(); ++k) {
    Vec2 val[2] = {Vec2::Zero(), Vec2::Zero()};
    bool have[2] = {false, false};
    for (Side side : {Side::Left, Side::Right}) {
      const int si = static_cast<int>(side);
      if (k >= colmap_[si].size() || colmap_[si][k].col_a < 0) continue;
      const Vec2 lever = suffix[si].moment[k] - suffix[si].mass[k] * kin.chain[si][k].inboard;
      val[si] = side_fold_sign(side) * perp(lever);
      have[si] = true;
    }
    if (paired_ && have[0] && have[1]) {
      const ColumnMap& cm = colmap_[0][k];
      jdelta_.col(cm.col_a) = val[0] + val[1];
      jdelta_.col(cm.col_b) = val[0] - val[1];
    } else {
      for (int si = 0; si < 2; ++si) {
        if (have[si]) jdelta_.col(colmap_[si][k].col_a) = val[si];
      }
    }
  }

  const Vec2 moment_sum = suffix[0].moment[0] + suffix[1].moment[0];
  const double chain_mass = suffix[0].mass[0] + suffix[1].mass[0];
  const Vec2 weighted_offset = moment_sum - chain_mass * base;
  jdelta_.col(0) = perp(weighted_offset);
  jdelta_ /= model_.total_mass;
  delta_ = weighted_offset / model_.total_mass;
}

void Simulator::assemble(const State& s) {
  compute_kinematics(model_, s, &kin_);

  // Fuselage: COM coincides with the base, so only its spin inertia enters.
  jshape_[0].setZero();
  jomega_[0].setZero();
  jomega_[0](0) = 1.0;
  abias_[0] = Vec2::Zero();

  const Vec2 base = s.base_position();
  const double theta_dot = s.heading_rate();

  for (Side side : {Side::Left, Side::Right}) {
    const int si = static_cast<int>(side);
    const auto& segs = model_.segments(side);
    const auto& ck = kin_.chain[si];
    const auto& maps = colmap_[si];
    const double sigma = side_fold_sign(side);

    const Vec2 attach_dir = unit_from_angle(s.heading() + side_base_angle(side));
    Vec2 ab = -model_.spec.fuselage_half_width * theta_dot * theta_dot * attach_dir;

    for (std::size_t k = 0; k < segs.size(); ++k) {
      const int id = model_.body_id(side, static_cast<int>(k));
      Eigen::Matrix2Xd& js = jshape_[id];
      Eigen::RowVectorXd& jw = jomega_[id];
      js.setZero();
      jw.setZero();
      js.col(0) = perp(ck[k].com - base);
      jw(0) = 1.0;
      for (std::size_t j = 0; j <= k; ++j) {
        if (maps[j].col_a < 0) continue;
        const Vec2 raw = sigma * perp(ck[k].com - ck[j].inboard);
        js.col(maps[j].col_a) = raw;
        jw(maps[j].col_a) = sigma;
        if (maps[j].col_b >= 0) {
          js.col(maps[j].col_b) = maps[j].sign_b * raw;
          jw(maps[j].col_b) = maps[j].sign_b * sigma;
        }
      }
      const double w2 = ck[k].omega * ck[k].omega;
      abias_[id] = ab - segs[k].com_offset * w2 * ck[k].u;
      ab -= segs[k].length * w2 * ck[k].u;
    }
  }

  compute_delta_and_jacobian(kin_);

  // abias_delta: mass-weighted mean of the body bias accelerations, summed
  // per side first so mirrored states stay bitwise mirrored.
  Vec2 ab_side[2] = {Vec2::Zero(), Vec2::Zero()};
  for (Side side : {Side::Left, Side::Right}) {
    const int si = static_cast<int>(side);
    const auto& segs = model_.segments(side);
    for (std::size_t k = 0; k < segs.size(); ++k) {
      ab_side[si] += segs[k].mass * abias_[model_.body_id(side, static_cast<int>(k))];
    }
  }
  abias_delta_ = (ab_side[0] + ab_side[1]) / model_.total_mass;

  // Reduced rotational mass matrix and bias: generalized parallel-axis form
  // M = sum_b (m J^T J + I Jw^T Jw) - m_total Jd^T Jd, accumulated as
  // fuselage + (left_k + right_k) pairs.
  Mt_.setZero();
  Mt_(0, 0) += model_.fuselage.inertia;
  bt_.setZero();

  const int n_left = model_.segment_count(Side::Left);
  const int n_right = model_.segment_count(Side::Right);
  const int n_pair = std::max(n_left, n_right);
  for (int k = 0; k < n_pair; ++k) {
    tmpA_.setZero();
    tmpB_.setZero();
    tmpw_.setZero();
    if (k < n_left) {
      const int id = model_.body_id(Side::Left, k);
      const BodyDef& b = model_.segments(Side::Left)[k];
      tmpA_.noalias() = b.mass * (jshape_[id].transpose() * jshape_[id]);
      tmpA_.noalias() += b.inertia * (jomega_[id].transpose() * jomega_[id]);
      tmpw_.noalias() = b.mass * (jshape_[id].transpose() * abias_[id]);
    }
    if (k < n_right) {
      const int id = model_.body_id(Side::Right, k);
      const BodyDef& b = model_.segments(Side::Right)[k];
      tmpB_.noalias() = b.mass * (jshape_[id].transpose() * jshape_[id]);
      tmpB_.noalias() += b.inertia * (jomega_[id].transpose() * jomega_[id]);
      tmpw_.noalias() += b.mass * (jshape_[id].transpose() * abias_[id]);
    }
    tmpA_ += tmpB_;
    Mt_ += tmpA_;
    bt_ += tmpw_;
  }
  tmpA_.noalias() = model_.total_mass * (jdelta_.transpose() * jdelta_);
  Mt_ -= tmpA_;
  tmpw_.noalias() = model_.total_mass * (jdelta_.transpose() * abias_delta_);
  bt_ -= tmpw_;

  rates_to_internal(s.v, &wt_vel_);
  vcom_pre_ = s.base_velocity() + jdelta_ * wt_vel_;
  rcom_pre_ = s.base_position() + delta_;
  tmpw_.noalias() = Mt_ * wt_vel_;
  ke_pre_ = 0.5 * model_.total_mass * vcom_pre_.squaredNorm() + 0.5 * wt_vel_.dot(tmpw_);
}

void Simulator::add_point_load(int body_id, const Vec2& point, const Vec2& force) {
  const Vec2 base = kin_.fuselage.com;
  if (body_id == 0) {
    qshape_fus_[0] += force.dot(perp(point - base));
    fnet_fus_ += force;
    return;
  }
  const int n_left = model_.segment_count(Side::Left);
  const Side side = body_id <= n_left ? Side::Left : Side::Right;
  const int si = static_cast<int>(side);
  const int k = body_id - 1 - (side == Side::Right ? n_left : 0);
  const auto& maps = colmap_[si];
  const double sigma = side_fold_sign(side);

  Eigen::VectorXd& buf = qshape_side_[si];
  buf[0] += force.dot(perp(point - base));
  for (int j = 0; j <= k; ++j) {
    if (maps[j].col_a < 0) continue;
    const double raw = sigma * force.dot(perp(point - kin_.chain[si][j].inboard));
    buf[maps[j].col_a] += raw;
    if (maps[j].col_b >= 0) buf[maps[j].col_b] += maps[j].sign_b * raw;
  }
  fnet_side_[si] += force;
}

void Simulator::combine_generalized_forces() {
  tmpw_ = qshape_side_[0] + qshape_side_[1];
  qt_ = qshape_fus_ + tmpw_;
  const Vec2 pair = fnet_side_[0] + fnet_side_[1];
  fnet_ = fnet_fus_ + pair;
}

void Simulator::add_hinge_torques(const State& s) {
  const auto& jl = model_.side_joints(Side::Left);
  const auto& jr = model_.side_joints(Side::Right);
  if (paired_) {
    for (std::size_t k = 0; k < jl.size(); ++k) {
      if (jl[k].welded) continue;
      const double tl = joint_torque(jl[k].hinge, s.q[jl[k].dof], s.v[jl[k].dof]);
      const double tr = joint_torque(jr[k].hinge, s.q[jr[k].dof], s.v[jr[k].dof]);
      qt_[colmap_[0][k].col_a] += tl + tr;
      qt_[colmap_[0][k].col_b] += tl - tr;
    }
    return;
  }
  for (Side side : {Side::Left, Side::Right}) {
    const int si = static_cast<int>(side);
    const auto& joints = model_.side_joints(side);
    for (std::size_t k = 0; k < joints.size(); ++k) {
      if (joints[k].welded) continue;
      qt_[colmap_[si][k].col_a] +=
          joint_torque(joints[k].hinge, s.q[joints[k].dof], s.v[joints[k].dof]);
    }
  }
}

void Simulator::add_external(const ExternalLoads& external) {
  if (external.joint_torques.size() != 0 &&
      external.joint_torques.size() != static_cast<Eigen::Index>(model_.joint_dof_count())) {
    throw SimulationError("external joint_torques must be empty or one per hinged joint");
  }
  if (external.joint_torques.size() == 0) return;
  const auto& tor = external.joint_torques;
  const auto& jl = model_.side_joints(Side::Left);
  const auto& jr = model_.side_joints(Side::Right);
  if (paired_) {
    for (std::size_t k = 0; k < jl.size(); ++k) {
      if (jl[k].welded) continue;
      const double tl = tor[jl[k].dof - 3];
      const double tr = tor[jr[k].dof - 3];
      qt_[colmap_[0][k].col_a] += tl + tr;
      qt_[colmap_[0][k].col_b] += tl - tr;
    }
    return;
  }
  for (Side side : {Side::Left, Side::Right}) {
    const int si = static_cast<int>(side);
    const auto& joints = model_.side_joints(side);
    for (std::size_t k = 0; k < joints.size(); ++k) {
      if (joints[k].welded) continue;
      qt_[colmap_[si][k].col_a] += tor[joints[k].dof - 3];
    }
  }
}

void Simulator::solve_rotational() {
  tmpw_.noalias() = jdelta_.transpose() * fnet_;
  qt_ -= tmpw_;
  rhs_ = qt_ - bt_;
  llt_.compute(Mt_);
  if (llt_.info() != Eigen::Success) {
    throw SimulationError(
        "reduced mass matrix is not positive definite; the model is corrupt");
  }
  wt_acc_ = llt_.solve(rhs_);
  com_acc_ = fnet_ / model_.total_mass;
}

Eigen::VectorXd Simulator::accelerations(const State& s, const ExternalLoads& external) {
  if (!s.all_finite()) throw SimulationError("state contains non-finite values");
  assemble(s);
  qshape_fus_.setZero();
  qshape_side_[0].setZero();
  qshape_side_[1].setZero();
  fnet_fus_ = Vec2::Zero();
  fnet_side_[0] = Vec2::Zero();
  fnet_side_[1] = Vec2::Zero();
  for (const PointForce& f : external.forces) {
    if (f.body_id < 0 || f.body_id >= model_.body_count()) {
      throw SimulationError("external force references an unknown body id");
    }
    add_point_load(f.body_id, f.point, f.force);
  }
  combine_generalized_forces();
  add_external(external);
  solve_rotational();

  Eigen::VectorXd a(model_.ndof);
  rates_from_internal(wt_acc_, &a);
  const Vec2 base_acc = com_acc_ - jdelta_ * wt_acc_ - abias_delta_;
  a[0] = base_acc.x();
  a[1] = base_acc.y();
  return a;
}

void Simulator::step_inplace(State& s, double dt) {
  if (!s.all_finite()) throw SimulationError("state contains non-finite values");
  if (!(dt > 0.0)) throw SimulationError("dt must be > 0");

  assemble(s);
  qshape_fus_.setZero();
  qshape_side_[0].setZero();
  qshape_side_[1].setZero();
  fnet_fus_ = Vec2::Zero();
  fnet_side_[0] = Vec2::Zero();
  fnet_side_[1] = Vec2::Zero();
  contacts_ = detect_contacts(model_, kin_, pole_);
  for (const Contact& c : contacts_) {
    add_point_load(c.body_id, c.point, contact_force(c, material_));
  }
  combine_generalized_forces();
  add_hinge_torques(s);
  solve_rotational();

  // Velocity update in COM + joint coordinates, then positions from the new
  // velocities, then base pose reconstructed at the new joint angles.
  Vec2 vcom = vcom_pre_ + dt * com_acc_;
  wt_vel_ += dt * wt_acc_;
  const Vec2 rcom = rcom_pre_ + dt * vcom;

  rates_from_internal(wt_vel_, &s.v);
  s.q[2] += dt * s.v[2];
  for (int g = 0; g < model_.joint_dof_count(); ++g) s.q[3 + g] += dt * s.v[3 + g];

  compute_kinematics(model_, s, &kin_post_);
  compute_delta_and_jacobian(kin_post_);
  s.q[0] = rcom.x() - delta_.x();
  s.q[1] = rcom.y() - delta_.y();
  const Vec2 vbase = vcom - jdelta_ * wt_vel_;
  s.v[0] = vbase.x();
  s.v[1] = vbase.y();
  s.t += dt;

  if (!s.all_finite()) {
    std::ostringstream msg;
    msg << "integration diverged to a non-finite state at t=" << s.t
        << "; reduce dt or contact stiffness";
    throw SimulationError(msg.str());
  }
}

State step(const ArticulatedModel& model, const State& s, double dt, const PoleSpec& pole,
           const MaterialParams& material) {
  Simulator sim(model, pole, material);
  State out = s;
  sim.step_inplace(out, dt);
  return out;
}

Eigen::VectorXd forward_dynamics(const ArticulatedModel& model, const State& s,
                                 const ExternalLoads& external) {
  Simulator sim(model, PoleSpec{}, MaterialParams{});
  return sim.accelerations(s, external);
}

Eigen::MatrixXd mass_matrix(const ArticulatedModel& model, const State& s) {
  Kinematics kin;
  compute_kinematics(model, s, &kin);
  const int n = model.ndof;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);

  Eigen::Matrix2Xd jv(2, n);
  Eigen::RowVectorXd jw(n);
  const Vec2 base = s.base_position();

  auto add_body = [&](const BodyKin& bk, double mass, double inertia, Side side, int k,
                      bool is_fuselage) {
    jv.setZero();
    jw.setZero();
    jv(0, 0) = 1.0;
    jv(1, 1) = 1.0;
    jv.col(2) = perp(bk.com - base);
    jw(2) = 1.0;
    if (!is_fuselage) {
      const auto& joints = model.side_joints(side);
      const auto& ck = kin.chain[static_cast<int>(side)];
      const double sigma = side_fold_sign(side);
      for (int j = 0; j <= k; ++j) {
        if (joints[j].welded) continue;
        jv.col(joints[j].dof) = sigma * perp(bk.com - ck[j].inboard);
        jw(joints[j].dof) = sigma;
      }
    }
    M.noalias() += mass * (jv.transpose() * jv);
    M.noalias() += inertia * (jw.transpose() * jw);
  };

  add_body(kin.fuselage, model.fuselage.mass, model.fuselage.inertia, Side::Left, -1, true);
  for (Side side : {Side::Left, Side::Right}) {
    const auto& segs = model.segments(side);
    for (int k = 0; k < static_cast<int>(segs.size()); ++k) {
      add_body(kin.chain[static_cast<int>(side)][k], segs[k].mass, segs[k].inertia, side, k,
               false);
    }
  }
  return M;
}

double kinetic_energy(const ArticulatedModel& model, const State& s) {
  Kinematics kin;
  compute_kinematics(model, s, &kin);
  double ke = 0.5 * model.fuselage.mass * kin.fuselage.com_vel.squaredNorm() +
              0.5 * model.fuselage.inertia * kin.fuselage.omega * kin.fuselage.omega;
  for (Side side : {Side::Left, Side::Right}) {
    const auto& segs = model.segments(side);
    const auto& ck = kin.chain[static_cast<int>(side)];
    for (std::size_t k = 0; k < segs.size(); ++k) {
      ke += 0.5 * segs[k].mass * ck[k].com_vel.squaredNorm() +
            0.5 * segs[k].inertia * ck[k].omega * ck[k].omega;
    }
  }
  return ke;
}

double total_energy(const ArticulatedModel& model, const State& s, const PoleSpec& pole,
                    const MaterialParams& material) {
  double e = kinetic_energy(model, s);

  for (Side side : {Side::Left, Side::Right}) {
    const auto& joints = model.side_joints(side);
    for (std::size_t k = 0; k < joints.size(); ++k) {
      if (joints[k].welded) continue;
      const double phi = s.q[joints[k].dof];
      const HingeSpec& h = joints[k].hinge;
      e += 0.5 * h.free_stiffness * phi * phi;
      if (phi < 0.0) {
        e += 0.5 * h.block_stiffness * phi * phi;
      } else if (phi > h.max_fold_angle) {
        const double ex = phi - h.max_fold_angle;
        e += 0.5 * h.block_stiffness * ex * ex;
      }
    }
  }

  for (const Contact& c : detect_contacts(model, s, pole)) {
    e += 0.5 * material.normal_stiffness * c.penetration * c.penetration;
  }
  return e;
}

}  // namespace wingwrap

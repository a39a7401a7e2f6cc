#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wingwrap/contact.hpp"
#include "wingwrap/kinematics.hpp"
#include "wingwrap/model.hpp"
#include "wingwrap/state.hpp"

namespace wingwrap {

struct PointForce {
  int body_id = 0;
  Vec2 point = Vec2::Zero();  // world application point on the body
  Vec2 force = Vec2::Zero();  // world frame
};

/// External input to forward_dynamics. joint_torques is indexed by hinged
/// dof ordinal (q index minus 3); empty means zero.
struct ExternalLoads {
  std::vector<PointForce> forces;
  Eigen::VectorXd joint_torques;
};

/// One-way hinge law. Free side: spring toward flat plus damping. Blocked
/// side (fold_angle < 0) and past the fold limit: block_stiffness engages
/// additively as a stiff stop.
double joint_torque(const HingeSpec& hinge, double fold_angle, double fold_rate);

/// Full mass matrix in the public coordinates [x, y, heading, folds...].
/// Symmetric positive definite for every valid model.
Eigen::MatrixXd mass_matrix(const ArticulatedModel& model, const State& s);

/// Generalized accelerations solving M(q) a = f(q, v, external).
/// Pure function of its inputs: hinge springs and pole contact are not
/// applied here (step composes them).
Eigen::VectorXd forward_dynamics(const ArticulatedModel& model, const State& s,
                                 const ExternalLoads& external);

/// Kinetic + hinge elastic + contact penalty energy. The penalty term uses
/// material.normal_stiffness, matching contact_force.
double total_energy(const ArticulatedModel& model, const State& s, const PoleSpec& pole,
                    const MaterialParams& material);

double kinetic_energy(const ArticulatedModel& model, const State& s);

/// Reusable stepping context: owns all solver workspace so repeated stepping
/// performs no allocation. Free-function step() wraps a fresh instance and
/// produces identical arithmetic.
///
/// Internally velocities are advanced in center-of-mass translation
/// coordinates plus a symmetric/antisymmetric joint basis. Two consequences
/// the tests rely on: COM momentum obeys Newton's second law exactly (the
/// discrete update cannot leak momentum through the joints), and mirroring
/// a state of a left/right symmetric model flips only signs in every
/// arithmetic step, so mirrored trajectories match bit for bit.
class Simulator {
 public:
  Simulator(const ArticulatedModel& model, const PoleSpec& pole, const MaterialParams& material);

  /// One semi-implicit Euler step with pole contact and hinge torques:
  /// velocities from forces at (q_t, v_t), then positions from the new
  /// velocities. Throws SimulationError on non-finite results.
  void step_inplace(State& s, double dt);

  /// Accelerations under explicit external loads only (no contact, no hinge
  /// springs); backs the forward_dynamics free function.
  Eigen::VectorXd accelerations(const State& s, const ExternalLoads& external);

  const ArticulatedModel& model() const { return model_; }

  /// Observations of the state the last step started from (contact set used
  /// by that step, kinematics, COM velocity, kinetic energy). run_trial uses
  /// these to avoid a second kinematics pass per step.
  const std::vector<Contact>& last_contacts() const { return contacts_; }
  const Kinematics& pre_step_kinematics() const { return kin_; }
  Vec2 pre_step_com_velocity() const { return vcom_pre_; }
  Vec2 pre_step_com_position() const { return rcom_pre_; }
  double pre_step_kinetic_energy() const { return ke_pre_; }

 private:
  struct ColumnMap {
    int col_a = -1;      // symmetric-sum column (or the lone raw column)
    int col_b = -1;      // difference column, -1 when the basis is raw
    double sign_b = 1.0; // sign of this side's contribution to col_b
  };

  void assemble(const State& s);
  void add_point_load(int body_id, const Vec2& point, const Vec2& force);
  void combine_generalized_forces();
  void add_hinge_torques(const State& s);
  void add_external(const ExternalLoads& external);
  void solve_rotational();
  void rates_to_internal(const Eigen::VectorXd& v, Eigen::VectorXd* wt) const;
  void rates_from_internal(const Eigen::VectorXd& wt, Eigen::VectorXd* v) const;
  void compute_delta_and_jacobian(const Kinematics& kin);

  ArticulatedModel model_;
  PoleSpec pole_;
  MaterialParams material_;

  int nw_ = 1;          // rotational dims: heading + hinged joints
  bool paired_ = false; // symmetric layout: sum/difference joint basis
  std::array<std::vector<ColumnMap>, 2> colmap_;  // per side, per chain joint

  // Per-body workspace, flat body order.
  std::vector<Eigen::Matrix2Xd> jshape_;
  std::vector<Eigen::RowVectorXd> jomega_;
  std::vector<Vec2> abias_;

  Eigen::MatrixXd Mt_, tmpA_, tmpB_;
  Eigen::Matrix2Xd jdelta_, tmpJ_;
  Eigen::VectorXd bt_, qshape_fus_, qshape_side_[2], qt_, rhs_, wt_vel_, wt_acc_, tmpw_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Vec2 delta_, abias_delta_;
  Vec2 fnet_, fnet_fus_, fnet_side_[2];
  Vec2 com_acc_;

  Kinematics kin_, kin_post_;
  std::vector<Contact> contacts_;
  Vec2 vcom_pre_ = Vec2::Zero(), rcom_pre_ = Vec2::Zero();
  double ke_pre_ = 0.0;
};

/// Convenience wrapper over Simulator for one-off steps.
State step(const ArticulatedModel& model, const State& s, double dt, const PoleSpec& pole,
           const MaterialParams& material);

}  // namespace wingwrap

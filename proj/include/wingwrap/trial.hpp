#pragma once

#include <cstdint>
#include <vector>

#include "wingwrap/dynamics.hpp"
#include "wingwrap/model.hpp"
#include "wingwrap/state.hpp"
#include "wingwrap/vehicle_spec.hpp"

namespace wingwrap {

/// Integration and classification parameters for perch trials.
struct SimParams {
  double dt = 2e-5;                      // s; stable for the default stiffnesses
  double settle_kinetic_energy = 1e-4;   // J; below this the vehicle counts as still
  double settle_hold_time = 0.2;         // s the threshold must hold
  double timeout = 3.0;                  // simulated s
  double wrap_success_threshold = 2.0;   // rad per wing
  double tip_collision_distance = 0.02;  // m tip-tip proximity for a collide event
  double tip_closing_speed = 0.05;       // m/s closing rate for a collide event
  double overlap_epsilon = 0.05;         // rad of combined wrap past a full turn
  double contact_margin = 0.01;          // m wrap-measurement proximity gate
  bool early_exit = true;                // stop once the vehicle recedes past start
  bool record_trajectory = false;
  int trajectory_stride = 50;            // steps between recorded frames
};

std::vector<ValidationIssue> validate_sim_params(const SimParams& p);

/// One toss's initial conditions. The base starts start_distance from the
/// pole center along the reversed approach direction, displaced by
/// lateral_offset perpendicular to it, moving at impact_speed along the
/// heading (= approach_angle; zero points straight at the pole).
struct TrialConditions {
  double impact_speed = 2.5;    // m/s commanded; measured speed is re-read at contact
  double lateral_offset = 0.0;  // m perpendicular miss distance of the centerline
  double approach_angle = 0.0;  // rad heading error
  double start_distance = 0.8;  // m from pole center
  std::uint64_t seed = 0;       // echoed through for bookkeeping
};

enum class Outcome {
  Miss,
  Bounce,
  PartialWrap,
  SuccessTipCollide,
  SuccessTipOverlap,
};

/// Stable token used in CSV output and the CLI.
const char* outcome_name(Outcome o);
bool is_success(Outcome o);

struct TrajectoryFrame {
  double t = 0.0;
  Eigen::VectorXd q;
};

struct TrialResult {
  Outcome outcome = Outcome::Miss;
  bool settled = false;
  bool contact_ever = false;
  bool tip_contact_event = false;
  double measured_impact_speed = 0.0;  // m/s COM speed entering the first contact step
  double wrap_angle_left = 0.0;        // rad at end of trial
  double wrap_angle_right = 0.0;
  double azimuth_overlap = 0.0;        // rad combined wrap past a full turn, >= 0
  double settle_time = 0.0;            // s when the trial ended (settle, exit, or timeout)
  double impact_energy = 0.0;          // J entering the first contact step
  double settle_energy = 0.0;          // J at end of trial
  std::vector<double> residual_normal_forces;  // N, one per contact at end
  TrialConditions conditions;
  std::vector<TrajectoryFrame> trajectory;  // filled only when requested
};

/// Arc subtended at the pole center from the fuselage azimuth to the wingtip
/// azimuth, accumulated link by link so angles past pi stay unwrapped, then
/// clamped to [0, 2*pi). Zero when no part of that wing's chain is within
/// contact_margin of the pole surface, and zero when the chain bends away
/// from its wrap direction.
double wrap_angle(const ArticulatedModel& model, const State& s, Side side,
                  const PoleSpec& pole, double contact_margin);

/// End-of-trial observations feeding the outcome rules.
struct ClassificationEvidence {
  bool contact_ever = false;
  bool tip_contact_event = false;
  double wrap_angle_left = 0.0;
  double wrap_angle_right = 0.0;
  double azimuth_overlap = 0.0;  // rad
  double com_distance = 0.0;     // m from pole center at end
  bool com_receding = false;     // at end
  double start_distance = 0.0;   // m
};

/// Total classification: Miss without any contact; Success when both wraps
/// reach the threshold (collide beats overlap when evidence conflicts, and a
/// success with neither tip event nor overlap counts as collide); Bounce when
/// the vehicle is receding beyond half the start distance; else PartialWrap.
Outcome classify_outcome(const ClassificationEvidence& e, const SimParams& p);

/// Integrate one toss until settle (kinetic energy below the threshold for
/// settle_hold_time), early exit (receding past start_distance), or timeout,
/// then classify. Deterministic: identical inputs give identical results.
/// Throws ValidationError on out-of-range conditions or params.
TrialResult run_trial(const ArticulatedModel& model, const PoleSpec& pole,
                      const MaterialParams& material, const TrialConditions& conditions,
                      const SimParams& params);

}  // namespace wingwrap

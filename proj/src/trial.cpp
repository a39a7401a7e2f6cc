#include "wingwrap/trial.hpp"

#include <cmath>

#include "wingwrap/contact.hpp"
#include "wingwrap/errors.hpp"
#include "wingwrap/geometry.hpp"
#include "wingwrap/kinematics.hpp"

namespace wingwrap {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check(std::vector<ValidationIssue>* issues, bool ok, const char* path, const char* rule) {
  if (!ok) issues->push_back({path, rule});
}

Vec2 mass_weighted_com(const ArticulatedModel& model, const Kinematics& kin, bool velocity) {
  Vec2 acc = model.fuselage.mass * (velocity ? kin.fuselage.com_vel : kin.fuselage.com);
  for (Side side : {Side::Left, Side::Right}) {
    const auto& segs = model.segments(side);
    const auto& ck = kin.chain[static_cast<int>(side)];
    for (std::size_t k = 0; k < segs.size(); ++k) {
      acc += segs[k].mass * (velocity ? ck[k].com_vel : ck[k].com);
    }
  }
  return acc / model.total_mass;
}

}  // namespace

std::vector<ValidationIssue> validate_sim_params(const SimParams& p) {
  std::vector<ValidationIssue> issues;
  check(&issues, p.dt > 0.0, "sim.dt", "must be > 0");
  check(&issues, p.settle_kinetic_energy > 0.0, "sim.settle_kinetic_energy", "must be > 0");
  check(&issues, p.settle_hold_time >= 0.0, "sim.settle_hold_time", "must be >= 0");
  check(&issues, p.timeout > 0.0, "sim.timeout", "must be > 0");
  check(&issues, p.wrap_success_threshold > 0.0 && p.wrap_success_threshold < kTwoPi,
        "sim.wrap_success_threshold", "must be in (0, 2*pi)");
  check(&issues, p.tip_collision_distance >= 0.0, "sim.tip_collision_distance", "must be >= 0");
  check(&issues, p.tip_closing_speed >= 0.0, "sim.tip_closing_speed", "must be >= 0");
  check(&issues, p.overlap_epsilon >= 0.0, "sim.overlap_epsilon", "must be >= 0");
  check(&issues, p.contact_margin >= 0.0, "sim.contact_margin", "must be >= 0");
  check(&issues, p.trajectory_stride >= 1, "sim.trajectory_stride", "must be >= 1");
  return issues;
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Miss: return "Miss";
    case Outcome::Bounce: return "Bounce";
    case Outcome::PartialWrap: return "PartialWrap";
    case Outcome::SuccessTipCollide: return "SuccessTipCollide";
    case Outcome::SuccessTipOverlap: return "SuccessTipOverlap";
  }
  return "Unknown";
}

bool is_success(Outcome o) {
  return o == Outcome::SuccessTipCollide || o == Outcome::SuccessTipOverlap;
}

double wrap_angle(const ArticulatedModel& model, const State& s, Side side,
                  const PoleSpec& pole, double contact_margin) {
  Kinematics kin;
  compute_kinematics(model, s, &kin);

  const auto& segs = model.segments(side);
  const auto& ck = kin.chain[static_cast<int>(side)];
  const Vec2 center = Vec2::Zero();

  bool near = false;
  for (std::size_t k = 0; k < segs.size() && !near; ++k) {
    const Vec2 p0 = ck[k].inboard;
    const Vec2 p1 = ck[k].inboard + segs[k].length * ck[k].u;
    const CirclePenetration cp =
        circle_capsule_penetration(p0, p1, segs[k].half_thickness, center, pole.radius);
    near = cp.penetration >= -contact_margin;
  }
  if (!near) return 0.0;

  // Unwrapped azimuth sweep from the fuselage through each joint to the tip.
  double prev = std::atan2(kin.fuselage.com.y(), kin.fuselage.com.x());
  double sum = 0.0;
  for (std::size_t k = 0; k < ck.size(); ++k) {
    const double a = std::atan2(ck[k].inboard.y(), ck[k].inboard.x());
    sum += wrap_to_pi(a - prev);
    prev = a;
  }
  const Vec2 tip = ck.back().inboard + segs.back().length * ck.back().u;
  sum += wrap_to_pi(std::atan2(tip.y(), tip.x()) - prev);

  const double oriented = (side == Side::Left ? -sum : sum);
  if (oriented <= 0.0) return 0.0;
  return std::min(oriented, std::nextafter(kTwoPi, 0.0));
}

Outcome classify_outcome(const ClassificationEvidence& e, const SimParams& p) {
  if (!e.contact_ever) return Outcome::Miss;
  if (e.wrap_angle_left >= p.wrap_success_threshold &&
      e.wrap_angle_right >= p.wrap_success_threshold) {
    if (e.tip_contact_event) return Outcome::SuccessTipCollide;
    if (e.azimuth_overlap > p.overlap_epsilon) return Outcome::SuccessTipOverlap;
    return Outcome::SuccessTipCollide;  // tips face each other short of touching
  }
  if (e.com_receding && e.com_distance > 0.5 * e.start_distance) return Outcome::Bounce;
  return Outcome::PartialWrap;
}

TrialResult run_trial(const ArticulatedModel& model, const PoleSpec& pole,
                      const MaterialParams& material, const TrialConditions& conditions,
                      const SimParams& params) {
  {
    std::vector<ValidationIssue> issues = validate_sim_params(params);
    check(&issues, conditions.impact_speed > 0.0, "conditions.impact_speed", "must be > 0");
    check(&issues, conditions.start_distance > pole.radius + model.half_span(),
          "conditions.start_distance", "must exceed pole radius + half wingspan");
    if (!issues.empty()) throw ValidationError(format_issues(issues));
  }

  const Vec2 dir = unit_from_angle(conditions.approach_angle);
  const Vec2 start = -conditions.start_distance * dir + conditions.lateral_offset * perp(dir);
  State s = make_launch_state(model, start, conditions.approach_angle,
                              conditions.impact_speed);

  TrialResult r;
  r.conditions = conditions;
  if (params.record_trajectory) r.trajectory.push_back({s.t, s.q});

  Simulator sim(model, pole, material);
  const double start_sq = conditions.start_distance * conditions.start_distance;
  double below_time = 0.0;
  long step_index = 0;

  while (true) {
    sim.step_inplace(s, params.dt);
    ++step_index;
    const Kinematics& kin = sim.pre_step_kinematics();

    if (!r.contact_ever && !sim.last_contacts().empty()) {
      r.contact_ever = true;
      r.measured_impact_speed = sim.pre_step_com_velocity().norm();
      double elastic = 0.0;
      for (const Contact& c : sim.last_contacts()) {
        elastic += 0.5 * material.normal_stiffness * c.penetration * c.penetration;
      }
      r.impact_energy = sim.pre_step_kinetic_energy() + elastic;
    }

    if (!r.tip_contact_event) {
      const Vec2 gap = kin.tip_position(model, Side::Left) - kin.tip_position(model, Side::Right);
      const double dist = gap.norm();
      if (dist < params.tip_collision_distance) {
        const Vec2 rel = kin.tip_velocity(model, Side::Left) - kin.tip_velocity(model, Side::Right);
        const double closing = -gap.dot(rel) / std::max(dist, 1e-12);
        if (closing > params.tip_closing_speed) r.tip_contact_event = true;
      }
    }

    if (params.record_trajectory && step_index % params.trajectory_stride == 0) {
      r.trajectory.push_back({s.t, s.q});
    }

    if (sim.pre_step_kinetic_energy() < params.settle_kinetic_energy) {
      below_time += params.dt;
      if (below_time >= params.settle_hold_time) {
        r.settled = true;
        break;
      }
    } else {
      below_time = 0.0;
    }

    if (params.early_exit) {
      const Vec2 rc = sim.pre_step_com_position();
      if (rc.dot(sim.pre_step_com_velocity()) > 0.0 && rc.squaredNorm() > start_sq) break;
    }

    if (s.t >= params.timeout - 0.5 * params.dt) break;
  }

  r.settle_time = s.t;
  r.wrap_angle_left = wrap_angle(model, s, Side::Left, pole, params.contact_margin);
  r.wrap_angle_right = wrap_angle(model, s, Side::Right, pole, params.contact_margin);
  r.azimuth_overlap = std::max(0.0, r.wrap_angle_left + r.wrap_angle_right - kTwoPi);
  r.settle_energy = total_energy(model, s, pole, material);

  for (const Contact& c : detect_contacts(model, s, pole)) {
    r.residual_normal_forces.push_back(contact_normal_magnitude(c, material));
  }

  Kinematics kin;
  compute_kinematics(model, s, &kin);
  const Vec2 com = mass_weighted_com(model, kin, false);
  const Vec2 com_vel = mass_weighted_com(model, kin, true);

  ClassificationEvidence e;
  e.contact_ever = r.contact_ever;
  e.tip_contact_event = r.tip_contact_event;
  e.wrap_angle_left = r.wrap_angle_left;
  e.wrap_angle_right = r.wrap_angle_right;
  e.azimuth_overlap = r.azimuth_overlap;
  e.com_distance = com.norm();
  e.com_receding = com.dot(com_vel) > 0.0;
  e.start_distance = conditions.start_distance;
  r.outcome = classify_outcome(e, params);
  return r;
}

}  // namespace wingwrap

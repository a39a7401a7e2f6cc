#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <string>

#include "wingwrap/errors.hpp"
#include "wingwrap/model.hpp"
#include "wingwrap/trial.hpp"

using namespace wingwrap;

namespace {

// Two-segment vehicle whose right wing can be posed as an exact inscribed
// polyline: joints on a circle of radius r around the pole, every chord of
// segment length L stepping the azimuth by psi = 2 asin(L / 2r).
VehicleSpec two_segment_vehicle() {
  VehicleSpec v = default_vehicle(0.0);
  v.left_wing = uniform_wing(2, SegmentSpec{}, HingeSpec{});
  v.right_wing = uniform_wing(2, SegmentSpec{}, HingeSpec{});
  return v;
}

State posed_state(const ArticulatedModel& model, const Vec2& base, double heading,
                  std::initializer_list<double> left_folds,
                  std::initializer_list<double> right_folds) {
  State s = make_launch_state(model, base, heading, 0.0);
  int d = 3;
  for (double f : left_folds) s.q[d++] = f;
  for (double f : right_folds) s.q[d++] = f;
  return s;
}

}  // namespace

TEST_CASE("wrap angle of an inscribed polyline") {
  const ArticulatedModel model = build_model(two_segment_vehicle());
  const PoleSpec pole = default_pole();

  const double r = 0.09;                            // joint circle radius
  const double psi = 2.0 * std::asin(0.15 / (2.0 * r));
  const Vec2 attach(-r, 0.0);                       // first joint at azimuth pi
  const Vec2 base = attach + Vec2(0.0, 0.04);       // so base + w*u(-pi/2) = attach

  // Right wing, heading 0: world chord angle is -pi/2 + sum of folds. Fold
  // ordinals psi/2 then psi place both joints and the tip on the circle.
  const State s = posed_state(model, base, 0.0, {0.0, 0.0}, {psi / 2.0, psi});

  const double az_base = std::atan2(base.y(), base.x());
  const double expected = (M_PI - az_base) + 2.0 * psi;  // base->attach plus two chords
  CHECK(wrap_angle(model, s, Side::Right, pole, 0.01) ==
        doctest::Approx(expected).epsilon(1e-9));
  // The straight left wing points away from the pole entirely.
  CHECK(wrap_angle(model, s, Side::Left, pole, 0.01) == 0.0);
}

TEST_CASE("mirrored pose wraps the left wing by the same angle") {
  const ArticulatedModel model = build_model(two_segment_vehicle());
  const PoleSpec pole = default_pole();
  const double psi = 2.0 * std::asin(0.15 / 0.18);

  const State right = posed_state(model, Vec2(-0.09, 0.04), 0.0, {0.0, 0.0}, {psi / 2, psi});
  const State left = posed_state(model, Vec2(-0.09, -0.04), 0.0, {psi / 2, psi}, {0.0, 0.0});

  const double wr = wrap_angle(model, right, Side::Right, pole, 0.01);
  const double wl = wrap_angle(model, left, Side::Left, pole, 0.01);
  CHECK(wr > 4.0);
  CHECK(wl == doctest::Approx(wr).epsilon(1e-12));
}

TEST_CASE("a chain bending against its wrap direction measures zero") {
  const ArticulatedModel model = build_model(two_segment_vehicle());
  const PoleSpec pole = default_pole();
  const double psi = 2.0 * std::asin(0.15 / 0.18);

  // Same base, same proximity, but the chords step the azimuth clockwise:
  // the right wing curls away from its positive fold direction.
  const State s = posed_state(model, Vec2(-0.09, 0.04), 0.0, {0.0, 0.0},
                              {M_PI - psi / 2.0, -psi});
  CHECK(wrap_angle(model, s, Side::Right, pole, 0.01) == 0.0);
}

TEST_CASE("wrap angle is zero without pole proximity") {
  const ArticulatedModel model = build_model(default_vehicle(0.0));
  const PoleSpec pole = default_pole();
  // Straight wings half a meter away: nothing within the margin.
  const State s = make_launch_state(model, Vec2(-0.5, 0.0), 0.0, 2.5);
  CHECK(wrap_angle(model, s, Side::Left, pole, 0.01) == 0.0);
  CHECK(wrap_angle(model, s, Side::Right, pole, 0.01) == 0.0);
}

TEST_CASE("wrap angle clamps below a full turn") {
  const ArticulatedModel model = build_model(default_vehicle(0.0));  // four segments
  const PoleSpec pole = default_pole();
  const double psi = 2.0 * std::asin(0.15 / 0.18);
  const State s = posed_state(model, Vec2(-0.09, 0.04), 0.0, {0, 0, 0, 0},
                              {psi / 2, psi, psi, psi});
  // Raw sweep exceeds 2 pi; the reported angle stays a hair below it.
  const double w = wrap_angle(model, s, Side::Right, pole, 0.01);
  CHECK(w == std::nextafter(2.0 * M_PI, 0.0));
}

TEST_CASE("outcome rules") {
  SimParams p;
  ClassificationEvidence e;
  e.contact_ever = false;
  CHECK(classify_outcome(e, p) == Outcome::Miss);

  // Both wings past the threshold with a tip collision.
  e.contact_ever = true;
  e.wrap_angle_left = 2.4;
  e.wrap_angle_right = 2.3;
  e.tip_contact_event = true;
  e.azimuth_overlap = 0.4;
  CHECK(classify_outcome(e, p) == Outcome::SuccessTipCollide);  // collide beats overlap

  e.tip_contact_event = false;
  CHECK(classify_outcome(e, p) == Outcome::SuccessTipOverlap);

  e.azimuth_overlap = 0.04;  // below overlap_epsilon
  CHECK(classify_outcome(e, p) == Outcome::SuccessTipCollide);

  // One short wing cannot succeed.
  e.wrap_angle_left = 1.2;
  e.com_distance = 0.1;
  e.com_receding = false;
  e.start_distance = 0.8;
  CHECK(classify_outcome(e, p) == Outcome::PartialWrap);

  // Receding past half the start distance is a bounce.
  e.com_receding = true;
  e.com_distance = 0.41;
  CHECK(classify_outcome(e, p) == Outcome::Bounce);

  e.com_distance = 0.39;
  CHECK(classify_outcome(e, p) == Outcome::PartialWrap);
}

TEST_CASE("sim params are validated with field paths") {
  SimParams p;
  p.dt = 0.0;
  auto issues = validate_sim_params(p);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].path == "sim.dt");

  p = SimParams{};
  p.wrap_success_threshold = 7.0;  // past 2 pi
  issues = validate_sim_params(p);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].path == "sim.wrap_success_threshold");

  p = SimParams{};
  p.trajectory_stride = 0;
  issues = validate_sim_params(p);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].path == "sim.trajectory_stride");
}

TEST_CASE("run_trial rejects impossible launches") {
  const ArticulatedModel model = build_model(default_vehicle(0.0));
  const PoleSpec pole = default_pole();
  const MaterialParams material = default_material();
  SimParams params;

  TrialConditions c;
  c.impact_speed = 0.0;
  CHECK_THROWS_AS(run_trial(model, pole, material, c, params), ValidationError);

  c = TrialConditions{};
  c.start_distance = 0.3;  // inside pole radius + half span
  CHECK_THROWS_AS(run_trial(model, pole, material, c, params), ValidationError);

  c = TrialConditions{};
  params.dt = -1.0;
  CHECK_THROWS_AS(run_trial(model, pole, material, c, params), ValidationError);
}

TEST_CASE("a wide lateral offset misses and exits early") {
  const ArticulatedModel model = build_model(default_vehicle(0.0));
  const PoleSpec pole = default_pole();
  const MaterialParams material = default_material();
  SimParams params;
  params.dt = 5e-5;

  TrialConditions c;
  c.impact_speed = 2.5;
  c.lateral_offset = 0.75;  // beyond half span + pole radius
  const TrialResult r = run_trial(model, pole, material, c, params);
  CHECK(r.outcome == Outcome::Miss);
  CHECK_FALSE(r.contact_ever);
  CHECK(r.measured_impact_speed == 0.0);
  CHECK(r.wrap_angle_left == 0.0);
  CHECK(r.wrap_angle_right == 0.0);
  CHECK(r.settle_time < params.timeout);  // early exit, not timeout
  CHECK_FALSE(r.settled);
}

TEST_CASE("trajectory recording follows the stride") {
  const ArticulatedModel model = build_model(default_vehicle(0.0));
  const PoleSpec pole = default_pole();
  const MaterialParams material = default_material();
  SimParams params;
  params.dt = 1e-4;
  params.timeout = 0.01;
  params.record_trajectory = true;
  params.trajectory_stride = 10;
  params.early_exit = false;

  TrialConditions c;
  const TrialResult r = run_trial(model, pole, material, c, params);
  REQUIRE(r.trajectory.size() == 11);  // t = 0 plus every 10th of 100 steps
  CHECK(r.trajectory.front().t == 0.0);
  CHECK(r.trajectory.front().q[0] == doctest::Approx(-0.8).epsilon(1e-15));
  CHECK(r.trajectory.back().t == doctest::Approx(0.01).epsilon(1e-9));
  // Free flight before any contact: folds identically zero.
  for (const TrajectoryFrame& f : r.trajectory) {
    for (int d = 3; d < model.ndof; ++d) CHECK(f.q[d] == 0.0);
  }
}

TEST_CASE("outcome names are stable tokens") {
  CHECK(std::string(outcome_name(Outcome::Miss)) == "Miss");
  CHECK(std::string(outcome_name(Outcome::Bounce)) == "Bounce");
  CHECK(std::string(outcome_name(Outcome::PartialWrap)) == "PartialWrap");
  CHECK(std::string(outcome_name(Outcome::SuccessTipCollide)) == "SuccessTipCollide");
  CHECK(std::string(outcome_name(Outcome::SuccessTipOverlap)) == "SuccessTipOverlap");
  CHECK(is_success(Outcome::SuccessTipCollide));
  CHECK(is_success(Outcome::SuccessTipOverlap));
  CHECK_FALSE(is_success(Outcome::PartialWrap));
  CHECK_FALSE(is_success(Outcome::Bounce));
  CHECK_FALSE(is_success(Outcome::Miss));
}

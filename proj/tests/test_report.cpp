#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include <json.hpp>

#include "wingwrap/model.hpp"
#include "wingwrap/report.hpp"

using namespace wingwrap;

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

TEST_CASE("format_g9 is stable and trim-free") {
  CHECK(format_g9(0.0) == "0");
  CHECK(format_g9(2.5) == "2.5");
  CHECK(format_g9(0.1) == "0.1");
  CHECK(format_g9(1.0 / 3.0) == "0.333333333");
  CHECK(format_g9(1e-5) == "1e-05");
  CHECK(format_g9(-3.25) == "-3.25");
  CHECK(format_g9(kNaN) == "nan");
}

TEST_CASE("trials csv header and row bytes") {
  const std::string header =
      "trial_id,tip_mass_fraction,commanded_speed_mps,measured_impact_speed_mps,"
      "lateral_offset_m,approach_angle_rad,outcome,wrap_angle_left_rad,"
      "wrap_angle_right_rad,settle_time_s,settled,hold_capacity_N,holds\n";
  CHECK(trials_csv({}) == header);

  TrialResult t;
  t.outcome = Outcome::SuccessTipCollide;
  t.settled = true;
  t.conditions.impact_speed = 2.5;
  t.conditions.lateral_offset = -0.01;
  t.conditions.approach_angle = 0.05;
  t.measured_impact_speed = 2.4375;
  t.wrap_angle_left = 2.25;
  t.wrap_angle_right = 2.5;
  t.settle_time = 1.5;
  t.residual_normal_forces = {5.0, 5.0};

  const TrialRecord rec = make_trial_record(7, 0.25, t, 0.45, 0.6);
  // mu * 10 N of squeeze vs 0.45 kg * g.
  CHECK(rec.hold_capacity == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(rec.holds);

  const std::string expected_row =
      "7,0.25,2.5,2.4375,-0.01,0.05,SuccessTipCollide,2.25,2.5,1.5,1,6,1\n";
  CHECK(trials_csv({rec}) == header + expected_row);

  // Serialization is a pure function: same input, same bytes.
  CHECK(trials_csv({rec}) == trials_csv({rec}));
}

TEST_CASE("sweep csv renders missing values as nan") {
  const std::string header =
      "tip_mass_fraction,n_trials,successes,success_rate,ci_lo,ci_hi,"
      "min_speed_nominal_mps,min_speed_empirical_mps,overlap_share,non_monotone_flag\n";
  CHECK(sweep_csv({}) == header);

  SweepRow r;
  r.tip_mass_fraction = 1.0 / 12.0;
  r.n_trials = 40;
  r.successes = 0;
  r.success_rate = 0.0;
  r.ci_lo = 0.0;
  r.ci_hi = 0.0876216012;
  r.min_speed_found = false;
  r.min_speed_nominal = kNaN;
  r.min_speed_empirical = kNaN;
  r.overlap_share = kNaN;
  r.non_monotone = true;
  CHECK(sweep_csv({r}) ==
        header + "0.0833333333,40,0,0,0,0.0876216012,nan,nan,nan,1\n");
}

TEST_CASE("trajectory csv lists a column per hinged fold") {
  const ArticulatedModel m = build_model(default_vehicle(0.0));
  const std::string csv = trajectory_csv(m, {});
  CHECK(csv ==
        "t_s,x_m,y_m,heading_rad,"
        "fold_left_0_rad,fold_left_1_rad,fold_left_2_rad,fold_left_3_rad,"
        "fold_right_0_rad,fold_right_1_rad,fold_right_2_rad,fold_right_3_rad\n");

  VehicleSpec v = default_vehicle(0.0);
  v.left_wing.root_rigid = true;
  v.right_wing.root_rigid = true;
  const ArticulatedModel welded = build_model(v);
  const std::string csv2 = trajectory_csv(welded, {});
  CHECK(csv2 ==
        "t_s,x_m,y_m,heading_rad,"
        "fold_left_1_rad,fold_left_2_rad,fold_left_3_rad,"
        "fold_right_1_rad,fold_right_2_rad,fold_right_3_rad\n");

  TrajectoryFrame f;
  f.t = 0.25;
  f.q = Eigen::VectorXd::Zero(m.ndof);
  f.q[0] = -0.5;
  f.q[2] = 0.1;
  const std::string with_row = trajectory_csv(m, {f});
  CHECK(with_row.find("\n0.25,-0.5,0,0.1,0,0,0,0,0,0,0,0\n") != std::string::npos);
}

TEST_CASE("summary text carries per-level lines and endpoints") {
  SweepReport rep;
  SweepRow a;
  a.tip_mass_fraction = 0.0;
  a.n_trials = 40;
  a.successes = 18;
  a.success_rate = 0.45;
  a.min_speed_found = true;
  a.min_speed_nominal = 1.64;
  SweepRow b;
  b.tip_mass_fraction = 0.25;
  b.n_trials = 40;
  b.successes = 40;
  b.success_rate = 1.0;
  b.min_speed_found = true;
  b.min_speed_nominal = 1.04;
  rep.rows = {a, b};
  TrialResult collide;
  collide.outcome = Outcome::SuccessTipCollide;
  TrialResult overlap;
  overlap.outcome = Outcome::SuccessTipOverlap;
  rep.cell_trials = {{collide}, {overlap, collide}};

  const std::string text = summary_text(rep);
  CHECK(text.find("mass sweep: 2 tip-mass levels") != std::string::npos);
  CHECK(text.find("fraction 0.25: success_rate 1") != std::string::npos);
  CHECK(text.find("success_rate endpoints: 0.45 -> 1 (delta 0.55") != std::string::npos);
  CHECK(text.find("min_speed endpoints: 1.64 -> 1.04") != std::string::npos);
  CHECK(text.find("pooled successes: 3, overlap share 0.333333333") != std::string::npos);
}

TEST_CASE("manifest json is parseable and complete") {
  const std::string text = manifest_json(
      "a1b2c3d4e5f60718",
      {{"trials.csv", "fnv1a64:0123456789abcdef"}, {"sweep.csv", "fnv1a64:fedcba9876543210"}},
      "2026-08-19T00:00:00Z");
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j.at("config_hash").get<std::string>() == "a1b2c3d4e5f60718");
  CHECK(j.at("created_utc").get<std::string>() == "2026-08-19T00:00:00Z");
  CHECK(j.at("files").at("trials.csv").get<std::string>() == "fnv1a64:0123456789abcdef");
  CHECK(j.at("files").size() == 2);
  CHECK(j.at("artifact_version").get<std::string>() == "0.1.0");
}

TEST_CASE("iso8601 timestamp shape") {
  const std::string ts = iso8601_utc_now();
  REQUIRE(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[7] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts[13] == ':');
  CHECK(ts.back() == 'Z');
}

TEST_CASE("write_text_file creates parent directories") {
  const std::string dir = "report_test_tmp";
  const std::string path = dir + "/nested/out.txt";
  write_text_file(path, "hello\n");
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "hello\n");
  std::filesystem::remove_all(dir);
}

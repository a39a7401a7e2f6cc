#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "wingwrap/errors.hpp"
#include "wingwrap/model.hpp"
#include "wingwrap/vehicle_spec.hpp"

using namespace wingwrap;

namespace {

bool has_issue(const std::vector<ValidationIssue>& issues, const std::string& path_part) {
  return std::any_of(issues.begin(), issues.end(), [&](const ValidationIssue& i) {
    return i.path.find(path_part) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("default vehicle masses") {
  const ArticulatedModel bare = build_model(default_vehicle(0.0));
  // 0.2 fuselage + 8 segments at 0.02 kg.
  CHECK(bare.baseline_mass == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(bare.total_mass == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(bare.tip_mass_per_wing == 0.0);

  const ArticulatedModel loaded = build_model(default_vehicle(0.25));
  CHECK(loaded.baseline_mass == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(loaded.total_mass == doctest::Approx(0.45).epsilon(1e-14));
  // 0.25 * 0.36 split between two tips.
  CHECK(loaded.tip_mass_per_wing == doctest::Approx(0.045).epsilon(1e-14));
}

TEST_CASE("bare segment is a uniform rod") {
  const ArticulatedModel m = build_model(default_vehicle(0.0));
  const BodyDef& seg = m.segments(Side::Left)[1];
  CHECK(seg.mass == 0.02);
  CHECK(seg.length == 0.15);
  CHECK(seg.com_offset == doctest::Approx(0.075).epsilon(1e-14));
  // m L^2 / 12 for a thin rod.
  CHECK(seg.inertia == doctest::Approx(3.75e-5).epsilon(1e-12));
}

TEST_CASE("tip mass merges into the outer segment") {
  const ArticulatedModel m = build_model(default_vehicle(0.25));
  const BodyDef& tip = m.segments(Side::Right).back();
  CHECK(tip.mass == doctest::Approx(0.02 + 0.045).epsilon(1e-14));
  // Combined COM: (0.02*0.075 + 0.045*0.15) / 0.065.
  CHECK(tip.com_offset == doctest::Approx(0.12692307692307692).epsilon(1e-13));
  // Independent route: inertia about the joint (rod mL^2/3 plus point mass at L)
  // shifted back to the combined COM.
  const double about_joint = 0.02 * 0.15 * 0.15 / 3.0 + 0.045 * 0.15 * 0.15;
  const double expected = about_joint - tip.mass * tip.com_offset * tip.com_offset;
  CHECK(tip.inertia == doctest::Approx(expected).epsilon(1e-12));
  CHECK(tip.inertia == doctest::Approx(1.1538461538461529e-4).epsilon(1e-10));
  // Inner segments stay bare rods.
  CHECK(m.segments(Side::Right)[0].inertia == doctest::Approx(3.75e-5).epsilon(1e-12));
}

TEST_CASE("fuselage is a disc of its half width") {
  const ArticulatedModel m = build_model(default_vehicle(0.0));
  CHECK(m.fuselage.mass == 0.2);
  CHECK(m.fuselage.length == 0.0);
  // (1/2) m r^2 with r = half width.
  CHECK(m.fuselage.inertia == doctest::Approx(0.5 * 0.2 * 0.04 * 0.04).epsilon(1e-14));
  CHECK(m.fuselage.com_offset == 0.0);
}

TEST_CASE("dof layout: base then left chain then right chain") {
  const ArticulatedModel m = build_model(default_vehicle(0.0));
  CHECK(m.ndof == 11);
  CHECK(m.joint_dof_count() == 8);
  for (int k = 0; k < 4; ++k) {
    CHECK(m.side_joints(Side::Left)[k].dof == 3 + k);
    CHECK(m.side_joints(Side::Right)[k].dof == 7 + k);
    CHECK_FALSE(m.side_joints(Side::Left)[k].welded);
  }
  CHECK(m.body_count() == 9);
  CHECK(m.body_id(Side::Left, 0) == 1);
  CHECK(m.body_id(Side::Left, 3) == 4);
  CHECK(m.body_id(Side::Right, 0) == 5);
  CHECK(m.body_id(Side::Right, 3) == 8);
  CHECK(m.symmetric_layout());
}

TEST_CASE("rigid roots drop a coordinate per wing") {
  VehicleSpec v = default_vehicle(0.0);
  v.left_wing.root_rigid = true;
  v.right_wing.root_rigid = true;
  const ArticulatedModel m = build_model(v);
  CHECK(m.ndof == 9);
  CHECK(m.side_joints(Side::Left)[0].welded);
  CHECK(m.side_joints(Side::Left)[0].dof == -1);
  CHECK(m.side_joints(Side::Left)[1].dof == 3);
  CHECK(m.side_joints(Side::Right)[1].dof == 6);
  CHECK(m.symmetric_layout());
}

TEST_CASE("half span covers fuselage and straight chain") {
  const ArticulatedModel m = build_model(default_vehicle(0.0));
  CHECK(m.half_span() == doctest::Approx(0.04 + 4 * 0.15).epsilon(1e-14));
}

TEST_CASE("side conventions") {
  CHECK(side_base_angle(Side::Left) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(side_base_angle(Side::Right) == doctest::Approx(-M_PI / 2).epsilon(1e-15));
  CHECK(side_fold_sign(Side::Left) == -1.0);
  CHECK(side_fold_sign(Side::Right) == 1.0);
}

TEST_CASE("validation rejects out-of-range specs with field paths") {
  VehicleSpec v = default_vehicle(0.0);
  v.fuselage_mass = -1.0;
  auto issues = validate_vehicle(v);
  CHECK(has_issue(issues, "vehicle.fuselage_mass"));

  v = default_vehicle(0.0);
  v.left_wing.segments[2].length = 0.0;
  CHECK(has_issue(validate_vehicle(v), "left_wing.segments[2].length"));

  v = default_vehicle(0.0);
  v.left_wing.hinges[0].block_stiffness = 0.1;  // below 100x free_stiffness
  CHECK(has_issue(validate_vehicle(v), "left_wing.hinges[0].block_stiffness"));

  v = default_vehicle(0.0);
  v.right_wing.hinges[1].max_fold_angle = 3.5;  // past pi
  CHECK(has_issue(validate_vehicle(v), "right_wing.hinges[1].max_fold_angle"));

  v = default_vehicle(0.0);
  v.right_wing.segments.pop_back();
  v.right_wing.hinges.pop_back();
  CHECK(has_issue(validate_vehicle(v), "right_wing.segments"));

  v = default_vehicle(0.0);
  v.tip_mass_fraction = -0.1;
  CHECK(has_issue(validate_vehicle(v), "tip_mass_fraction"));

  PoleSpec pole;
  pole.radius = 0.0;
  CHECK(has_issue(validate_pole(pole), "pole.radius"));

  MaterialParams mat;
  mat.friction_mu = -0.5;
  CHECK(has_issue(validate_material(mat), "material.friction_mu"));
}

TEST_CASE("build_model throws on invalid spec") {
  VehicleSpec v = default_vehicle(0.0);
  v.fuselage_mass = 0.0;
  CHECK_THROWS_AS(build_model(v), ValidationError);
}

TEST_CASE("segment count bounds") {
  SegmentSpec seg;
  HingeSpec hinge;
  VehicleSpec v = default_vehicle(0.0);
  v.left_wing = uniform_wing(0, seg, hinge);
  v.right_wing = uniform_wing(0, seg, hinge);
  CHECK(has_issue(validate_vehicle(v), "left_wing.segments"));

  v.left_wing = uniform_wing(17, seg, hinge);
  v.right_wing = uniform_wing(17, seg, hinge);
  CHECK(has_issue(validate_vehicle(v), "left_wing.segments"));

  v.left_wing = uniform_wing(16, seg, hinge);
  v.right_wing = uniform_wing(16, seg, hinge);
  CHECK(validate_vehicle(v).empty());
  CHECK(build_model(v).ndof == 3 + 32);
}

TEST_CASE("with_tip_mass_fraction only changes the fraction") {
  const VehicleSpec base = default_vehicle(0.0);
  const VehicleSpec heavy = with_tip_mass_fraction(base, 0.25);
  CHECK(heavy.tip_mass_fraction == 0.25);
  CHECK(heavy.fuselage_mass == base.fuselage_mass);
  CHECK(heavy.left_wing.segments.size() == base.left_wing.segments.size());
  const ArticulatedModel m = build_model(heavy);
  CHECK(m.total_mass == doctest::Approx(0.45).epsilon(1e-14));
}

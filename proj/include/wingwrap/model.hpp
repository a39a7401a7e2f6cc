#pragma once

#include <array>
#include <vector>

#include "wingwrap/vehicle_spec.hpp"

namespace wingwrap {

enum class Side : int { Left = 0, Right = 1 };

/// Span direction of a wing's first segment relative to the heading.
inline double side_base_angle(Side s) { return s == Side::Left ? 1.5707963267948966 : -1.5707963267948966; }

/// World-angle sign of positive (wrap-direction) fold angles. The left wing
/// wraps clockwise toward the heading, the right wing counterclockwise.
inline double side_fold_sign(Side s) { return s == Side::Left ? -1.0 : 1.0; }

/// Rigid body in the wrap plane. Segments are capsules along their axis;
/// the fuselage is the degenerate zero-length case (a disc).
struct BodyDef {
  double mass = 0.0;
  double inertia = 0.0;      // about the body COM, includes any tip mass
  double com_offset = 0.0;   // m from the inboard joint along the axis
  double length = 0.0;       // m, zero for the fuselage
  double half_thickness = 0.0;
};

struct JointDef {
  HingeSpec hinge;
  bool welded = false;  // true only for a rigid root attachment
  int dof = -1;         // index into q, -1 when welded
};

/// Immutable product of build_model: per-body mass properties and the joint
/// tree over minimal coordinates q = [x, y, heading, fold angles L root..tip,
/// fold angles R root..tip] (welded joints contribute no coordinate).
class ArticulatedModel {
 public:
  VehicleSpec spec;
  BodyDef fuselage;
  std::array<std::vector<BodyDef>, 2> chain;   // segments, root to tip
  std::array<std::vector<JointDef>, 2> joints; // one per segment
  double baseline_mass = 0.0;  // fuselage + bare segments, no tip masses
  double total_mass = 0.0;
  double tip_mass_per_wing = 0.0;
  int ndof = 3;

  const std::vector<BodyDef>& segments(Side s) const { return chain[static_cast<int>(s)]; }
  const std::vector<JointDef>& side_joints(Side s) const { return joints[static_cast<int>(s)]; }
  int segment_count(Side s) const { return static_cast<int>(segments(s).size()); }

  /// Flat body ids: 0 fuselage, then left chain root..tip, then right chain.
  int body_count() const { return 1 + segment_count(Side::Left) + segment_count(Side::Right); }
  int body_id(Side s, int chain_index) const {
    return 1 + (s == Side::Right ? segment_count(Side::Left) : 0) + chain_index;
  }

  int joint_dof_count() const { return ndof - 3; }

  /// True when both wings expose the same hinged-joint pattern, which the
  /// dynamics exploits for a left/right symmetric solve.
  bool symmetric_layout() const;

  /// Straight span from fuselage center to a wingtip, fuselage half-width
  /// included. Used for miss geometry and start-distance checks.
  double half_span() const;
};

/// Validates the specs and assembles the model. Tip masses are merged into
/// the outermost segment bodies (COM shift plus point-mass inertia terms).
/// Throws ValidationError listing every violated bound.
ArticulatedModel build_model(const VehicleSpec& vehicle);

}  // namespace wingwrap

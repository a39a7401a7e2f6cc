#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wingwrap/monte_carlo.hpp"
#include "wingwrap/trial.hpp"
#include "wingwrap/vehicle_spec.hpp"

namespace wingwrap {

/// Both wings of a config-described vehicle share one segment/hinge recipe;
/// asymmetric vehicles are reachable through the library API only.
struct UniformWingRecipe {
  int segment_count = 4;
  SegmentSpec segment;
  HingeSpec hinge;
  bool root_rigid = false;
};

/// Everything a harness run needs, with defaults for every field except
/// master_seed — that one must be written down, so no run is silently
/// nondeterministic. The trial section's start_distance also feeds the
/// sweep distribution, keeping the two paths consistent.
struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  std::string output_dir = "out";

  double fuselage_mass = 0.2;
  double fuselage_half_width = 0.04;
  double tip_mass_fraction = 0.0;
  UniformWingRecipe wing;

  PoleSpec pole;
  double slip_regularization_velocity = 1.0e-3;

  SimParams sim;
  TrialConditions trial;
  SweepPlan plan;

  VehicleSpec make_vehicle() const;
  MaterialParams make_material() const;
};

ExperimentConfig default_config();

/// Strict parse: unknown keys and wrong types raise ConfigError naming the
/// offending path; absent keys take defaults; master_seed is required.
ExperimentConfig config_from_json(const std::string& text);

/// Effective (default-filled) config as canonical JSON: alphabetical keys,
/// so the same logical config hashes identically however it was written.
std::string config_to_json(const ExperimentConfig& c);

/// FNV-1a 64 hash of the canonical JSON, as 16 hex digits.
std::string config_hash_hex(const ExperimentConfig& c);

/// Reads and parses a config file; ConfigError on parse/shape problems,
/// IoError when the file cannot be read.
ExperimentConfig load_config_file(const std::string& path);

/// All spec-level issues in the assembled vehicle/pole/material/sim params.
std::vector<ValidationIssue> validate_config(const ExperimentConfig& c);

}  // namespace wingwrap

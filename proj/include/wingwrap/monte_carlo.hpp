#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wingwrap/speed_search.hpp"
#include "wingwrap/trial.hpp"

namespace wingwrap {

/// Hand-toss scatter: per-trial conditions drawn uniformly from these ranges
/// (speed from [speed_lo, speed_hi], offset and angle symmetric about zero).
struct ConditionDistribution {
  double speed_lo = 2.0;                           // m/s
  double speed_hi = 3.5;                           // m/s
  double lateral_offset_max = 0.02;                // m
  double approach_angle_max = 0.08726646259971647; // rad (5 degrees)
  double start_distance = 0.8;                     // m
};

/// Deterministic conditions for one trial slot. Draw order is fixed (speed,
/// offset, angle) so results never depend on execution interleaving.
TrialConditions sample_conditions(const ConditionDistribution& dist, std::uint64_t seed);

struct RateEstimate {
  int n = 0;
  int successes = 0;
  double rate = 0.0;
  double ci_lo = 0.0;  // Wilson score interval, 95%
  double ci_hi = 1.0;
};

RateEstimate wilson_interval(int successes, int n);

/// n independent Bernoulli outcomes, trial i seeded with
/// derive_seed(master_seed, i); order- and worker-count-independent.
RateEstimate success_rate(const std::function<bool(int, std::uint64_t)>& trial, int n,
                          std::uint64_t master_seed);

/// Full trial results for n jittered tosses, in trial-index order.
std::vector<TrialResult> run_trials(const ArticulatedModel& model, const PoleSpec& pole,
                                    const MaterialParams& material,
                                    const ConditionDistribution& dist, int n,
                                    std::uint64_t master_seed, const SimParams& params);

RateEstimate success_rate(const ArticulatedModel& model, const PoleSpec& pole,
                          const MaterialParams& material, const ConditionDistribution& dist,
                          int n, std::uint64_t master_seed, const SimParams& params);

struct SweepPlan {
  std::vector<double> fractions = {0.0, 1.0 / 12.0, 1.0 / 6.0, 0.25};
  int trials_per_cell = 40;
  ConditionDistribution distribution;
  double min_speed_lo = 1.0;   // m/s, nominal-conditions search range
  double min_speed_hi = 5.0;   // m/s
  double min_speed_tol = 0.05; // m/s
};

struct SweepRow {
  double tip_mass_fraction = 0.0;
  int n_trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  bool min_speed_found = false;
  double min_speed_nominal = 0.0;    // NaN when no bracket was found
  double min_speed_empirical = 0.0;  // lowest measured speed among successes; NaN if none
  double overlap_share = 0.0;        // overlap successes / successes; NaN if none
  bool non_monotone = false;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::vector<std::vector<TrialResult>> cell_trials;  // per row, trial-index order
};

/// One row per tip-mass fraction: Monte Carlo rate over the jitter
/// distribution plus the nominal-conditions minimum perch speed. Trials are
/// seeded per (row, trial) slot, so the report is identical for any worker
/// count. Throws ValidationError on an empty or out-of-range fraction list.
SweepReport mass_sweep(const VehicleSpec& vehicle, const PoleSpec& pole,
                       const MaterialParams& material, const SweepPlan& plan,
                       const SimParams& params, std::uint64_t master_seed);

}  // namespace wingwrap

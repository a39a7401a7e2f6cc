#pragma once

#include <functional>

#include "wingwrap/trial.hpp"

namespace wingwrap {

struct SpeedSearchResult {
  bool found = false;        // a fail->success bracket existed on [v_lo, v_hi]
  double speed = 0.0;        // v*: success at v*, failure at v* - 2*tol
  bool non_monotone = false; // pre-scan saw success followed by failure
  int evaluations = 0;       // predicate calls spent
};

/// Minimum speed at which `success` holds, to tolerance tol: an 8-point
/// pre-scan brackets the lowest fail->success transition (no transition =>
/// found=false, no fabricated speed; any success-then-failure pattern sets
/// non_monotone), bisection narrows it, and the result is walked down while
/// the check at speed - 2*tol still succeeds, so the returned speed always
/// satisfies its own postcondition.
SpeedSearchResult min_perch_speed(const std::function<bool(double)>& success, double v_lo,
                                  double v_hi, double tol);

/// The same search over real trials at nominal (jitter-free) conditions;
/// `nominal.impact_speed` is ignored in favor of the probed speed.
SpeedSearchResult min_perch_speed(const ArticulatedModel& model, const PoleSpec& pole,
                                  const MaterialParams& material, const TrialConditions& nominal,
                                  const SimParams& params, double v_lo, double v_hi, double tol);

}  // namespace wingwrap

#include "wingwrap/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wingwrap/errors.hpp"
#include "wingwrap/model.hpp"
#include "wingwrap/parallel.hpp"
#include "wingwrap/rng.hpp"

namespace wingwrap {

namespace {
constexpr double kZ95 = 1.959963984540054;  // two-sided 95% normal quantile
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

TrialConditions sample_conditions(const ConditionDistribution& dist, std::uint64_t seed) {
  Rng rng(seed);
  TrialConditions c;
  c.impact_speed = rng.uniform(dist.speed_lo, dist.speed_hi);
  c.lateral_offset = rng.uniform(-dist.lateral_offset_max, dist.lateral_offset_max);
  c.approach_angle = rng.uniform(-dist.approach_angle_max, dist.approach_angle_max);
  c.start_distance = dist.start_distance;
  c.seed = seed;
  return c;
}

RateEstimate wilson_interval(int successes, int n) {
  if (n < 1 || successes < 0 || successes > n) {
    throw ValidationError("wilson_interval requires 0 <= successes <= n and n >= 1");
  }
  RateEstimate est;
  est.n = n;
  est.successes = successes;
  est.rate = static_cast<double>(successes) / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double center = (est.rate + z2 / (2.0 * n)) / denom;
  const double half =
      kZ95 * std::sqrt((est.rate * (1.0 - est.rate) + z2 / (4.0 * n)) / n) / denom;
  est.ci_lo = std::max(0.0, center - half);
  est.ci_hi = std::min(1.0, center + half);
  return est;
}

RateEstimate success_rate(const std::function<bool(int, std::uint64_t)>& trial, int n,
                          std::uint64_t master_seed) {
  if (n < 1) throw ValidationError("success_rate requires n >= 1");
  std::vector<char> outcomes(static_cast<std::size_t>(n), 0);
  parallel_for(n, [&](int i) { outcomes[i] = trial(i, derive_seed(master_seed, i)) ? 1 : 0; });
  const int successes =
      static_cast<int>(std::count(outcomes.begin(), outcomes.end(), char{1}));
  return wilson_interval(successes, n);
}

std::vector<TrialResult> run_trials(const ArticulatedModel& model, const PoleSpec& pole,
                                    const MaterialParams& material,
                                    const ConditionDistribution& dist, int n,
                                    std::uint64_t master_seed, const SimParams& params) {
  if (n < 1) throw ValidationError("run_trials requires n >= 1");
  std::vector<TrialResult> results(static_cast<std::size_t>(n));
  parallel_for(n, [&](int i) {
    const TrialConditions c = sample_conditions(dist, derive_seed(master_seed, i));
    results[i] = run_trial(model, pole, material, c, params);
  });
  return results;
}

RateEstimate success_rate(const ArticulatedModel& model, const PoleSpec& pole,
                          const MaterialParams& material, const ConditionDistribution& dist,
                          int n, std::uint64_t master_seed, const SimParams& params) {
  const std::vector<TrialResult> trials =
      run_trials(model, pole, material, dist, n, master_seed, params);
  const int successes = static_cast<int>(
      std::count_if(trials.begin(), trials.end(),
                    [](const TrialResult& t) { return is_success(t.outcome); }));
  return wilson_interval(successes, n);
}

SweepReport mass_sweep(const VehicleSpec& vehicle, const PoleSpec& pole,
                       const MaterialParams& material, const SweepPlan& plan,
                       const SimParams& params, std::uint64_t master_seed) {
  if (plan.fractions.empty()) throw ValidationError("sweep fractions must be non-empty");
  for (double f : plan.fractions) {
    if (!(f >= 0.0 && f < 1.0)) {
      throw ValidationError("sweep fractions must lie in [0, 1)");
    }
  }
  if (plan.trials_per_cell < 1) throw ValidationError("trials_per_cell must be >= 1");

  const int cells = static_cast<int>(plan.fractions.size());
  std::vector<ArticulatedModel> models;
  models.reserve(cells);
  for (double f : plan.fractions) {
    models.push_back(build_model(with_tip_mass_fraction(vehicle, f)));
  }

  SweepReport report;
  report.rows.resize(cells);
  report.cell_trials.resize(cells);

  // All (cell, trial) slots fan out together; seeds depend only on the slot.
  const int n = plan.trials_per_cell;
  for (int cell = 0; cell < cells; ++cell) {
    report.cell_trials[cell].resize(n);
  }
  parallel_for(cells * n, [&](int slot) {
    const int cell = slot / n;
    const int i = slot % n;
    const std::uint64_t cell_seed = derive_seed(master_seed, cell);
    const TrialConditions c = sample_conditions(plan.distribution, derive_seed(cell_seed, i));
    report.cell_trials[cell][i] = run_trial(models[cell], pole, material, c, params);
  });

  std::vector<SpeedSearchResult> searches(cells);
  parallel_for(cells, [&](int cell) {
    TrialConditions nominal;
    nominal.lateral_offset = 0.0;
    nominal.approach_angle = 0.0;
    nominal.start_distance = plan.distribution.start_distance;
    nominal.seed = 0;
    searches[cell] = min_perch_speed(models[cell], pole, material, nominal, params,
                                     plan.min_speed_lo, plan.min_speed_hi, plan.min_speed_tol);
  });

  for (int cell = 0; cell < cells; ++cell) {
    SweepRow& row = report.rows[cell];
    row.tip_mass_fraction = plan.fractions[cell];
    row.n_trials = n;

    int successes = 0;
    int overlaps = 0;
    double min_measured = kNaN;
    for (const TrialResult& t : report.cell_trials[cell]) {
      if (!is_success(t.outcome)) continue;
      ++successes;
      if (t.outcome == Outcome::SuccessTipOverlap) ++overlaps;
      if (!(t.measured_impact_speed >= min_measured)) min_measured = t.measured_impact_speed;
    }
    row.successes = successes;
    const RateEstimate est = wilson_interval(successes, n);
    row.success_rate = est.rate;
    row.ci_lo = est.ci_lo;
    row.ci_hi = est.ci_hi;
    row.min_speed_empirical = min_measured;
    row.overlap_share =
        successes > 0 ? static_cast<double>(overlaps) / successes : kNaN;

    const SpeedSearchResult& sr = searches[cell];
    row.min_speed_found = sr.found;
    row.min_speed_nominal = sr.found ? sr.speed : kNaN;
    row.non_monotone = sr.non_monotone;
  }
  return report;
}

}  // namespace wingwrap

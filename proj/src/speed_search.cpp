#include "wingwrap/speed_search.hpp"

#include <array>

#include "wingwrap/errors.hpp"

namespace wingwrap {

SpeedSearchResult min_perch_speed(const std::function<bool(double)>& success, double v_lo,
                                  double v_hi, double tol) {
  if (!(v_lo > 0.0) || !(v_hi > v_lo) || !(tol > 0.0)) {
    throw ValidationError("min_perch_speed requires 0 < v_lo < v_hi and tol > 0");
  }

  SpeedSearchResult r;
  auto probe = [&](double v) {
    ++r.evaluations;
    return success(v);
  };

  constexpr int kScan = 8;
  std::array<double, kScan> v{};
  std::array<bool, kScan> ok{};
  for (int i = 0; i < kScan; ++i) {
    v[i] = v_lo + (v_hi - v_lo) * static_cast<double>(i) / (kScan - 1);
    ok[i] = probe(v[i]);
  }

  int bracket = -1;
  for (int i = 0; i + 1 < kScan; ++i) {
    if (!ok[i] && ok[i + 1] && bracket < 0) bracket = i;
    if (ok[i] && !ok[i + 1]) r.non_monotone = true;
  }
  if (bracket < 0) return r;  // no transition: nothing to report
  r.found = true;

  double lo = v[bracket];
  double hi = v[bracket + 1];
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  // Walk-down: the postcondition demands failure at hi - 2*tol. If that
  // point still succeeds (possible only when the response is non-monotone at
  // pre-scan resolution), slide the bracket below it and narrow again.
  for (int guard = 0; guard < 64; ++guard) {
    const double low_check = hi - 2.0 * tol;
    if (low_check < v_lo || !probe(low_check)) break;
    r.non_monotone = true;
    double fail = v_lo;
    bool have_fail = false;
    for (double m = low_check - 2.0 * tol; m >= v_lo - 1e-12; m -= 2.0 * tol) {
      if (!probe(m)) {
        fail = m;
        have_fail = true;
        break;
      }
    }
    if (!have_fail) break;  // every grid point below succeeds; keep hi as-is
    hi = low_check;
    lo = fail;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (probe(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }

  r.speed = hi;
  return r;
}

SpeedSearchResult min_perch_speed(const ArticulatedModel& model, const PoleSpec& pole,
                                  const MaterialParams& material, const TrialConditions& nominal,
                                  const SimParams& params, double v_lo, double v_hi, double tol) {
  auto success = [&](double speed) {
    TrialConditions c = nominal;
    c.impact_speed = speed;
    return is_success(run_trial(model, pole, material, c, params).outcome);
  };
  return min_perch_speed(success, v_lo, v_hi, tol);
}

}  // namespace wingwrap

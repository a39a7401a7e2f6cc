#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wingwrap/model.hpp"
#include "wingwrap/monte_carlo.hpp"
#include "wingwrap/trial.hpp"

namespace wingwrap {

/// %.9g rendering used for every CSV number: enough digits to plot and
/// compare against, identical bytes on every run of one build.
std::string format_g9(double v);

/// One trials.csv row: a trial plus its static hold analysis.
struct TrialRecord {
  int trial_id = 0;
  double tip_mass_fraction = 0.0;
  TrialResult result;
  double hold_capacity = 0.0;  // N from the residual contact squeeze
  bool holds = false;
};

TrialRecord make_trial_record(int trial_id, double tip_mass_fraction, const TrialResult& result,
                              double vehicle_mass, double friction_mu);

std::string trials_csv(const std::vector<TrialRecord>& records);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string trajectory_csv(const ArticulatedModel& model,
                           const std::vector<TrajectoryFrame>& frames);

/// Human-readable digest of a sweep: one line per mass level plus endpoint
/// trend lines against the reference study's reported direction.
std::string summary_text(const SweepReport& report);

std::string iso8601_utc_now();

/// Reproducibility record: canonical-config hash plus a checksum per output
/// file, so two runs can be compared without storing the outputs themselves.
std::string manifest_json(const std::string& config_hash,
                          const std::vector<std::pair<std::string, std::string>>& file_checksums,
                          const std::string& timestamp);

/// Writes content to path, creating parent directories. Throws IoError.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace wingwrap

#include "wingwrap/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wingwrap/errors.hpp"
#include "wingwrap/hold.hpp"

namespace wingwrap {

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

TrialRecord make_trial_record(int trial_id, double tip_mass_fraction, const TrialResult& result,
                              double vehicle_mass, double friction_mu) {
  GripState grip;
  grip.normal_forces = result.residual_normal_forces;
  grip.total_wrap_angle = result.wrap_angle_left + result.wrap_angle_right;
  grip.friction_mu = friction_mu;
  grip.vehicle_mass = vehicle_mass;
  const HoldReport hold = slide_check(grip);

  TrialRecord rec;
  rec.trial_id = trial_id;
  rec.tip_mass_fraction = tip_mass_fraction;
  rec.result = result;
  rec.hold_capacity = hold.capacity;
  rec.holds = hold.holds;
  return rec;
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "trial_id,tip_mass_fraction,commanded_speed_mps,measured_impact_speed_mps,"
         "lateral_offset_m,approach_angle_rad,outcome,wrap_angle_left_rad,"
         "wrap_angle_right_rad,settle_time_s,settled,hold_capacity_N,holds\n";
  for (const TrialRecord& r : records) {
    const TrialResult& t = r.result;
    out << r.trial_id << ',' << format_g9(r.tip_mass_fraction) << ','
        << format_g9(t.conditions.impact_speed) << ',' << format_g9(t.measured_impact_speed)
        << ',' << format_g9(t.conditions.lateral_offset) << ','
        << format_g9(t.conditions.approach_angle) << ',' << outcome_name(t.outcome) << ','
        << format_g9(t.wrap_angle_left) << ',' << format_g9(t.wrap_angle_right) << ','
        << format_g9(t.settle_time) << ',' << (t.settled ? 1 : 0) << ','
        << format_g9(r.hold_capacity) << ',' << (r.holds ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "tip_mass_fraction,n_trials,successes,success_rate,ci_lo,ci_hi,"
         "min_speed_nominal_mps,min_speed_empirical_mps,overlap_share,non_monotone_flag\n";
  for (const SweepRow& r : rows) {
    out << format_g9(r.tip_mass_fraction) << ',' << r.n_trials << ',' << r.successes << ','
        << format_g9(r.success_rate) << ',' << format_g9(r.ci_lo) << ',' << format_g9(r.ci_hi)
        << ',' << format_g9(r.min_speed_nominal) << ',' << format_g9(r.min_speed_empirical)
        << ',' << format_g9(r.overlap_share) << ',' << (r.non_monotone ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string trajectory_csv(const ArticulatedModel& model,
                           const std::vector<TrajectoryFrame>& frames) {
  std::ostringstream out;
  out << "t_s,x_m,y_m,heading_rad";
  for (Side side : {Side::Left, Side::Right}) {
    const auto& joints = model.side_joints(side);
    for (std::size_t k = 0; k < joints.size(); ++k) {
      if (joints[k].welded) continue;
      out << ",fold_" << (side == Side::Left ? "left" : "right") << '_' << k << "_rad";
    }
  }
  out << '\n';
  for (const TrajectoryFrame& f : frames) {
    out << format_g9(f.t);
    for (Eigen::Index i = 0; i < f.q.size(); ++i) out << ',' << format_g9(f.q[i]);
    out << '\n';
  }
  return out.str();
}

std::string summary_text(const SweepReport& report) {
  std::ostringstream out;
  out << "mass sweep: " << report.rows.size() << " tip-mass levels\n";
  for (const SweepRow& r : report.rows) {
    out << "  fraction " << format_g9(r.tip_mass_fraction) << ": success_rate "
        << format_g9(r.success_rate) << " (CI " << format_g9(r.ci_lo) << ".."
        << format_g9(r.ci_hi) << ", n=" << r.n_trials << "), min_speed_nominal "
        << format_g9(r.min_speed_nominal) << " m/s, min_speed_empirical "
        << format_g9(r.min_speed_empirical) << " m/s, overlap_share "
        << format_g9(r.overlap_share);
    if (r.non_monotone) out << " [non-monotone]";
    if (!r.min_speed_found) out << " [no speed bracket]";
    out << '\n';
  }

  if (report.rows.size() >= 2) {
    const SweepRow& first = report.rows.front();
    const SweepRow& last = report.rows.back();
    out << "success_rate endpoints: " << format_g9(first.success_rate) << " -> "
        << format_g9(last.success_rate) << " (delta "
        << format_g9(last.success_rate - first.success_rate)
        << "; reference direction: <0.20 -> 0.80)\n";
    out << "min_speed endpoints: " << format_g9(first.min_speed_nominal) << " -> "
        << format_g9(last.min_speed_nominal)
        << " m/s (reference direction: 2.9 -> 2.4)\n";
  }

  int successes = 0;
  int overlaps = 0;
  for (const auto& cell : report.cell_trials) {
    for (const TrialResult& t : cell) {
      if (!is_success(t.outcome)) continue;
      ++successes;
      if (t.outcome == Outcome::SuccessTipOverlap) ++overlaps;
    }
  }
  out << "pooled successes: " << successes << ", overlap share "
      << format_g9(successes > 0 ? static_cast<double>(overlaps) / successes : 0.0)
      << " (reference: overlap in 0.40 of successes)\n";
  return out.str();
}

std::string iso8601_utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_json(const std::string& config_hash,
                          const std::vector<std::pair<std::string, std::string>>& file_checksums,
                          const std::string& timestamp) {
  nlohmann::json j;
  j["artifact_version"] = "0.1.0";
  j["config_hash"] = config_hash;
  j["created_utc"] = timestamp;
  nlohmann::json files = nlohmann::json::object();
  for (const auto& [name, checksum] : file_checksums) files[name] = checksum;
  j["files"] = files;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace wingwrap

#include "wingwrap/run_command.hpp"

#include <filesystem>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "wingwrap/checksum.hpp"
#include "wingwrap/config.hpp"
#include "wingwrap/errors.hpp"
#include "wingwrap/model.hpp"
#include "wingwrap/monte_carlo.hpp"
#include "wingwrap/report.hpp"
#include "wingwrap/rng.hpp"
#include "wingwrap/speed_search.hpp"
#include "wingwrap/trial.hpp"

namespace wingwrap {

namespace {

using NamedFile = std::pair<std::string, std::string>;  // name, content

/// Checksums, manifest, then one write per file. Content is fully composed
/// before the first byte lands on disk, so failed runs leave no partial set.
void emit_output_set(const std::string& out_dir, const ExperimentConfig& config,
                     std::vector<NamedFile> files) {
  files.emplace_back("config_effective.json", config_to_json(config));
  std::vector<NamedFile> checksums;
  checksums.reserve(files.size());
  for (const NamedFile& f : files) {
    checksums.emplace_back(f.first, "fnv1a64:" + fnv1a64_hex(f.second));
  }
  files.emplace_back("manifest.json", manifest_json(config_hash_hex(config), checksums,
                                                    iso8601_utc_now()));
  for (const NamedFile& f : files) {
    write_text_file((std::filesystem::path(out_dir) / f.first).string(), f.second);
  }
}

int run_trial_command(const CliOptions& opts, const ExperimentConfig& config,
                      const std::string& out_dir, std::ostream& out) {
  const ArticulatedModel model = build_model(config.make_vehicle());
  TrialConditions c = config.trial;
  c.seed = config.master_seed;
  SimParams params = config.sim;
  if (opts.emit_trajectory) params.record_trajectory = true;

  const TrialResult result = run_trial(model, config.pole, config.make_material(), c, params);
  std::vector<TrialRecord> records = {make_trial_record(
      0, config.tip_mass_fraction, result, model.total_mass, config.pole.friction_mu)};

  std::vector<NamedFile> files;
  files.emplace_back("trials.csv", trials_csv(records));
  if (params.record_trajectory) {
    files.emplace_back("trajectory.csv", trajectory_csv(model, result.trajectory));
  }
  emit_output_set(out_dir, config, std::move(files));

  out << "outcome=" << outcome_name(result.outcome)
      << " measured_speed_mps=" << format_g9(result.measured_impact_speed)
      << " wrap_left_rad=" << format_g9(result.wrap_angle_left)
      << " wrap_right_rad=" << format_g9(result.wrap_angle_right)
      << " settled=" << (result.settled ? 1 : 0) << '\n';
  return 0;
}

int run_min_speed_command(const ExperimentConfig& config, const std::string& out_dir,
                          std::ostream& out, std::ostream& err) {
  const ArticulatedModel model = build_model(config.make_vehicle());
  TrialConditions nominal = config.trial;
  nominal.seed = 0;
  const SpeedSearchResult r =
      min_perch_speed(model, config.pole, config.make_material(), nominal, config.sim,
                      config.plan.min_speed_lo, config.plan.min_speed_hi,
                      config.plan.min_speed_tol);

  std::ostringstream csv;
  csv << "v_lo_mps,v_hi_mps,tol_mps,found,non_monotone,min_speed_mps,evaluations\n"
      << format_g9(config.plan.min_speed_lo) << ',' << format_g9(config.plan.min_speed_hi)
      << ',' << format_g9(config.plan.min_speed_tol) << ',' << (r.found ? 1 : 0) << ','
      << (r.non_monotone ? 1 : 0) << ','
      << format_g9(r.found ? r.speed : std::numeric_limits<double>::quiet_NaN()) << ','
      << r.evaluations << '\n';
  std::vector<NamedFile> files;
  files.emplace_back("min_speed.csv", csv.str());
  emit_output_set(out_dir, config, std::move(files));

  if (!r.found) {
    err << "no fail->success bracket on [" << format_g9(config.plan.min_speed_lo) << ", "
        << format_g9(config.plan.min_speed_hi) << "] m/s"
        << (r.non_monotone ? " (non-monotone pre-scan)" : "") << '\n';
    return 3;
  }
  out << "min_speed_mps=" << format_g9(r.speed) << " evaluations=" << r.evaluations
      << (r.non_monotone ? " non_monotone=1" : "") << '\n';
  return 0;
}

int run_sweep_command(const CliOptions& opts, const ExperimentConfig& config,
                      const std::string& out_dir, bool replicate, std::ostream& out) {
  const VehicleSpec vehicle = config.make_vehicle();
  const MaterialParams material = config.make_material();
  const SweepReport report =
      mass_sweep(vehicle, config.pole, material, config.plan, config.sim, config.master_seed);

  const int n = config.plan.trials_per_cell;
  std::vector<TrialRecord> records;
  records.reserve(report.cell_trials.size() * static_cast<std::size_t>(n));
  for (std::size_t cell = 0; cell < report.cell_trials.size(); ++cell) {
    const double fraction = config.plan.fractions[cell];
    const double mass =
        build_model(with_tip_mass_fraction(vehicle, fraction)).total_mass;
    for (int i = 0; i < static_cast<int>(report.cell_trials[cell].size()); ++i) {
      records.push_back(make_trial_record(static_cast<int>(cell) * n + i, fraction,
                                          report.cell_trials[cell][i], mass,
                                          config.pole.friction_mu));
    }
  }

  std::vector<NamedFile> files;
  files.emplace_back("trials.csv", trials_csv(records));
  files.emplace_back("sweep.csv", sweep_csv(report.rows));
  if (replicate) files.emplace_back("summary.txt", summary_text(report));

  if (opts.emit_trajectory) {
    const int id = *opts.emit_trajectory;
    const int total = static_cast<int>(records.size());
    if (id < 0 || id >= total) {
      throw ValidationError("--emit-trajectory id out of range [0, " + std::to_string(total) +
                            ")");
    }
    const int cell = id / n;
    const int i = id % n;
    const ArticulatedModel model =
        build_model(with_tip_mass_fraction(vehicle, config.plan.fractions[cell]));
    const std::uint64_t cell_seed = derive_seed(config.master_seed, cell);
    const TrialConditions c =
        sample_conditions(config.plan.distribution, derive_seed(cell_seed, i));
    SimParams params = config.sim;
    params.record_trajectory = true;
    const TrialResult replay = run_trial(model, config.pole, material, c, params);
    files.emplace_back("trajectory.csv", trajectory_csv(model, replay.trajectory));
  }

  emit_output_set(out_dir, config, std::move(files));

  if (replicate) {
    out << summary_text(report);
  } else {
    out << "sweep rows=" << report.rows.size() << " trials=" << records.size() << '\n';
  }
  return 0;
}

}  // namespace

int run_command(const CliOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    ExperimentConfig config = load_config_file(opts.config_path);
    if (opts.seed) config.master_seed = *opts.seed;
    if (opts.trials) config.plan.trials_per_cell = *opts.trials;
    if (opts.command == "replicate-paper") {
      // The replication protocol pins the four mass levels and cell size;
      // everything else (calibration, jitter, solver) comes from the config.
      config.plan.fractions = {0.0, 1.0 / 12.0, 1.0 / 6.0, 0.25};
      if (!opts.trials) config.plan.trials_per_cell = 40;
    }

    const std::vector<ValidationIssue> issues = validate_config(config);
    if (!issues.empty()) {
      err << "invalid config:\n" << format_issues(issues) << '\n';
      return 2;
    }
    const std::string out_dir = opts.out_dir.empty() ? config.output_dir : opts.out_dir;

    if (opts.command == "trial") return run_trial_command(opts, config, out_dir, out);
    if (opts.command == "min-speed") return run_min_speed_command(config, out_dir, out, err);
    if (opts.command == "sweep") return run_sweep_command(opts, config, out_dir, false, out);
    if (opts.command == "replicate-paper") {
      return run_sweep_command(opts, config, out_dir, true, out);
    }
    err << "unknown command: " << opts.command << '\n';
    return 2;
  } catch (const SimulationError& e) {
    err << "simulation error: " << e.what() << '\n';
    return 4;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace wingwrap

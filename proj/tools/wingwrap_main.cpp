#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wingwrap/run_command.hpp"

int main(int argc, char** argv) {
  CLI::App app{"wingwrap: planar wing-wrapping perch simulator"};
  app.require_subcommand(1);

  wingwrap::CliOptions opts;
  std::uint64_t seed = 0;
  int trials = 0;
  int emit_trajectory = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "experiment config (json)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory (default: config output_dir)");
    sub->add_option("--seed", seed, "override master seed");
    sub->add_option("--trials", trials, "override trials per sweep cell")
        ->check(CLI::PositiveNumber);
    sub->add_option("--emit-trajectory", emit_trajectory,
                    "also write trajectory.csv for this trial id");
  };

  add_common(app.add_subcommand("trial", "run one trial at the configured conditions"));
  add_common(app.add_subcommand("sweep", "tip-mass sweep with randomized trials"));
  add_common(app.add_subcommand("min-speed", "bisect the minimum perch speed"));
  add_common(app.add_subcommand(
      "replicate-paper", "reference four-level tip-mass study with summary"));

  CLI11_PARSE(app, argc, argv);

  CLI::App* sub = app.get_subcommands().front();
  opts.command = sub->get_name();
  if (sub->count("--seed") > 0) opts.seed = seed;
  if (sub->count("--trials") > 0) opts.trials = trials;
  if (sub->count("--emit-trajectory") > 0) opts.emit_trajectory = emit_trajectory;
  return wingwrap::run_command(opts, std::cout, std::cerr);
}

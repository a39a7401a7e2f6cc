#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace wingwrap {

struct CliOptions {
  std::string command;  // trial | sweep | min-speed | replicate-paper
  std::string config_path;
  std::string out_dir;  // empty: take the config's output_dir
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> emit_trajectory;  // trial id whose motion gets recorded
};

/// Loads + validates the config, runs the subcommand, writes its report
/// files and a manifest under the output directory. Nothing is written when
/// validation fails. Exit codes: 0 success, 2 config/validation/io error,
/// 3 speed-search bracket failure, 4 simulation failure.
int run_command(const CliOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace wingwrap

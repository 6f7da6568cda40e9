#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace spectile::cli {

enum ExitCode : int {
  exit_holds = 0,
  exit_fails = 1,
  exit_inconclusive = 2,
  exit_usage = 64,
  exit_data = 65,
};

/// Defaults shared by every subcommand, echoed in each report.
struct RunConfig {
  std::string subcommand;
  double grid_step = 1e-3;
  double zero_tol = 1e-9;
  double tail_target = 1e-8;
  std::uint64_t seed = 0;
  std::string output;
  std::string csv;

  /// Applies SPECTILE_GRID_STEP, SPECTILE_ZERO_TOL and SPECTILE_TAIL_TARGET.
  static RunConfig from_environment();
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spectile::cli

#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "cli_io.hpp"

namespace qsym::cli {

/// Values given on the command line; they override the config file.
struct RunOptions {
  std::optional<int> order;
  std::optional<double> tolerance;
};

/// Each command validates the whole config before computing, writes its
/// document to `out` and returns the process exit code.
int cmd_deform_potential(const Config& cfg, const RunOptions& opt, std::ostream& out, std::ostream& log);
int cmd_invariant_solve(const Config& cfg, const RunOptions& opt, std::ostream& out, std::ostream& log);
int cmd_partition_solve(const Config& cfg, const RunOptions& opt, std::ostream& out, std::ostream& log);
int cmd_verify(const Config& cfg, const RunOptions& opt, std::ostream& out, std::ostream& log);
int cmd_ncplane_check(const Config& cfg, const RunOptions& opt, std::ostream& out, std::ostream& log);
int cmd_phase_demo(const Config& cfg, const RunOptions& opt, std::ostream& out, std::ostream& log);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitSingular = 4;
inline constexpr int kExitRegression = 5;

}  // namespace qsym::cli

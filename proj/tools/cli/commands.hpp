#pragma once

#include <ostream>
#include <vector>

#include "cli/config.hpp"
#include "cli/report.hpp"

namespace xxz::cli {

// Each command returns its rows and an exit status (0 success, 1 failed checks).
struct CommandResult {
  std::vector<Row> rows;
  int status = 0;
};

CommandResult cmd_verify(const RunConfig& c);
CommandResult cmd_spectrum(const RunConfig& c);
CommandResult cmd_solve(const RunConfig& c);

}  // namespace xxz::cli

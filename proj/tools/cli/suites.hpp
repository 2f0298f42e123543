#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace xxz::cli {

struct Record {
  std::string suite;
  std::string check;  // unique within the suite
  std::string eq;     // identity checked
  std::optional<double> residual;  // unset when the check threw
  double tol = 0.0;
  bool pass = false;
  std::string note;   // error text, empty otherwise
};

// Runs one named suite against the configured chain. Deterministic in (config, seed).
std::vector<Record> run_suite(const std::string& suite, const RunConfig& c);

// Runs the configured suites on a worker pool; records come back in suite order.
std::vector<Record> run_suites(const RunConfig& c);

}  // namespace xxz::cli

#pragma once

#include <string>

#include "tadic/cli/config.hpp"
#include "tadic/cli/report.hpp"

namespace tadic::cli {

/// Exit codes of the command-line tool.
enum Exit : int { kOk = 0, kVerdictFailed = 1, kUsage = 2, kResource = 3 };

struct Outcome {
  Json report;
  std::string csv;   // main table, for --format csv
  std::string plot;  // two-column blocks, for --format plot
  int exit_code = kOk;
};

Outcome cmd_polygons(const RunConfig& cfg);
Outcome cmd_cfunction(const RunConfig& cfg);
Outcome cmd_dwork(const RunConfig& cfg);
Outcome cmd_explore(const RunConfig& cfg);
Outcome cmd_specialize(const RunConfig& cfg);

Outcome dispatch(const RunConfig& cfg);
std::string render(const Outcome& out, Format format);

/// Full front end: parse argv, run, write output, map errors to exit codes.
int run(int argc, char** argv);

}  // namespace tadic::cli

#pragma once

#include <string>
#include <vector>

#include "cyclo/scenario.hpp"

namespace cyclo {

struct RunSummary {
  std::vector<std::string> files;  // written artifacts
  std::string json;                // summary also written to <dir>/<name>_summary.json
};

// FNV-1a of the normalized dump with the output directory left out
std::string scenario_hash(const Scenario& s);

// Dispatches on s.experiment and writes CSV/JSON artifacts into s.output_dir.
// Module errors are rethrown with the experiment name prefixed.
RunSummary run_scenario(const Scenario& s);

}  // namespace cyclo

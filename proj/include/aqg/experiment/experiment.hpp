#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "aqg/experiment/config.hpp"
#include "aqg/experiment/summary.hpp"

namespace aqg::experiment {

/// Raised when an artifact cannot be written; a partial manifest is left behind when possible.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string converter = "aqg";  // command used by plot.gp to turn records into CSV
};

struct ExperimentResult {
  std::filesystem::path directory;
  std::vector<std::string> files;
  Summary summary;
  std::string status;  // "ok", "invariant_violation" or "error"
  std::string error;

  bool passed() const { return status == "ok"; }
};

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& opts = {});

}  // namespace aqg::experiment

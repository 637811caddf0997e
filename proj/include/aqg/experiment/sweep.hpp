#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aqg/experiment/experiment.hpp"

namespace aqg::experiment {

/// `lo:hi:count` (inclusive, evenly spaced) or a single value.
struct Range {
  double lo = 0;
  double hi = 0;
  int count = 1;

  std::vector<double> values() const;
};

Range parse_range(std::string_view text);

struct SweepCell {
  double alpha = 0;
  double beta = 0;
  RegionClass region;
  std::optional<double> time_to_eps_l2;  // at 1e-2
  std::optional<double> time_to_eps_hs;  // at 1e-2, largest s in s_diag
  double budget_residual = 0;
  std::string status;
  std::string error;
  std::string directory;
};

struct SweepReport {
  std::vector<SweepCell> cells;
  std::string path;  // sweep.ndjson

  bool passed() const;
};

std::string to_ndjson(const SweepCell& c);

/// One run per (alpha, beta) cell in <output>/cell_<i>_<j>, at most
/// `max_parallel` at a time; failed cells are recorded and the sweep goes on.
SweepReport run_sweep(const ExperimentConfig& config, const Range& alpha, const Range& beta,
                      const RunOptions& opts = {}, int max_parallel = 0);

}  // namespace aqg::experiment

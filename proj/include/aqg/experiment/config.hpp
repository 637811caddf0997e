#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aqg/params.hpp"
#include "aqg/solver.hpp"

namespace aqg::experiment {

struct GridSpec {
  int n1 = 128;
  int n2 = 128;
  double l1 = 32 * std::numbers::pi;
  double l2 = 32 * std::numbers::pi;

  Grid<double> make() const { return Grid<double>(n1, n2, l1, l2); }
};

enum class InitialKind { SingleMode, RandomBandlimited, VortexPair, X1Profile };

const char* to_string(InitialKind k);

struct InitialCondition {
  InitialKind kind = InitialKind::SingleMode;
  double amplitude = 1.0;
  std::array<int, 2> mode{1, 0};              // single_mode: lattice indices, field is sin(k.x)
  double gamma = 2.0;                         // random_bandlimited
  int kmax = -1;                              // random_bandlimited, -1: dealiasing box
  int kmin = 0;                               // random_bandlimited
  std::optional<std::uint64_t> seed;          // random_bandlimited (mandatory there)
  double separation = 0;                      // vortex_pair, along x1
  double radius = 0;                          // vortex_pair, Gaussian e-folding radius
  std::vector<double> coeffs;                 // x1_profile: sine amplitudes of modes 1, 2, ...
};

struct OutputSpec {
  std::string directory = "aqg_output";
  bool csv = false;  // records.ndjson is always written
};

struct ExperimentConfig {
  GridSpec grid;
  DissipationParams params;
  SolverConfig solver;
  double budget_tolerance = 1e-6;     // relative to ||theta0||^2
  double max_principle_slack = 1e-6;  // relative
  InitialCondition initial;
  OutputSpec output;
};

/// Every violation found in a document, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct ParsedConfig {
  ExperimentConfig config;
  std::vector<std::string> warnings;
};

ParsedConfig parse_config(std::string_view text);
ParsedConfig load_config(const std::string& path);

/// Applies AQG_OUTPUT_DIR, if set, to output.directory.
void apply_environment(ExperimentConfig& config);

/// Non-fatal remarks about the parameters, e.g. runs outside the decay region.
std::vector<std::string> parameter_warnings(const DissipationParams& params);

/// Canonical JSON form of a configuration (round-trips through parse_config).
std::string to_json(const ExperimentConfig& config);

}  // namespace aqg::experiment

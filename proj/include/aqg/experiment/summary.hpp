#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aqg/diagnostics.hpp"

namespace aqg::experiment {

inline constexpr std::array<double, 3> kDecayLevels{1e-1, 1e-2, 1e-3};

struct NormSummary {
  std::string name;  // l2, linf, lp.<p>, hs.<s>, hsdot.<s>
  double initial = 0;
  double final = 0;
  std::array<std::optional<double>, 3> time_to_eps;  // per kDecayLevels; empty if never reached
};

struct Summary {
  long long record_count = 0;
  double t_final = 0;
  std::vector<NormSummary> norms;
  double budget_worst = 0;     // max |budget_residual|
  double budget_relative = 0;  // budget_worst / ||theta0||^2
  double budget_tolerance = 0;
  bool budget_ok = true;
  double max_principle_excess = 0;  // max over p, t of lp(t)/lp(0) - 1
  double max_principle_slack = 0;
  bool max_principle_ok = true;
  std::optional<LowFrequencyFit> split_fit;
  std::string split_fit_note;  // why the fit is absent

  bool passed() const { return budget_ok && max_principle_ok; }
  const NormSummary* find(const std::string& name) const;
};

struct SummaryOptions {
  double alpha = 0.75;
  double beta = 0.75;
  double fundamental = 1.0;
  double budget_tolerance = 1e-6;
  double max_principle_slack = 1e-6;
};

/// Builds a Summary from a record stream in O(1) memory per norm.
class SummaryAccumulator {
 public:
  explicit SummaryAccumulator(SummaryOptions opts) : opts_(opts) {}
  void add(const DiagnosticsRecord& r);
  Summary finish() const;

 private:
  struct Track {
    std::string name;
    double initial = 0, last = 0, last_t = 0;
    std::array<std::optional<double>, 3> hit;
  };
  void observe(Track& tr, double t, double v);

  SummaryOptions opts_;
  long long count_ = 0;
  double t_final_ = 0;
  double l2_0_sq_ = 0;
  double budget_worst_ = 0;
  double mp_excess_ = 0;
  std::vector<Track> tracks_;
  LowFrequencyTracker low_;
};

Summary summarize(std::span<const DiagnosticsRecord> records, const SummaryOptions& opts);

/// summary.json document with the run status on top.
std::string summary_to_json(const Summary& s, const std::string& status, const std::string& error = "");

}  // namespace aqg::experiment

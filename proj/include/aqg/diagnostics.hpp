#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "aqg/error.hpp"

namespace aqg {

/// One time sample of every monitored quantity.
struct DiagnosticsRecord {
  struct Split {
    double delta_multiple;  // delta in units of the fundamental wavenumber
    double low;             // ||w_delta||_{L2}
    double high;            // ||v_delta||_{L2}
  };

  double t = 0;
  double l2 = 0;
  double linf = 0;
  std::vector<std::pair<double, double>> lp;      // (p, ||theta||_p)
  std::vector<std::pair<double, double>> hs;      // (s, ||theta||_{H^s})
  std::vector<std::pair<double, double>> hs_hom;  // (s, ||theta||_{Hdot^s})
  double diss1 = 0;
  double diss2 = 0;
  double cum1 = 0;
  double cum2 = 0;
  std::vector<Split> split;
  double budget_residual = 0;
};

/// Largest |l2(t)^2 + 2 mu cum1 + 2 nu cum2 - l2(0)^2| over a run, as stored
/// in the records' budget_residual entries.
inline double energy_budget(std::span<const DiagnosticsRecord> records) {
  if (records.empty()) throw InvalidArgument("energy budget needs at least one record");
  double worst = 0;
  for (const auto& r : records) worst = std::max(worst, std::abs(r.budget_residual));
  return worst;
}

/// Ordinary least-squares slope and intercept of y against x.
inline std::pair<double, double> linear_fit(std::span<const double> x, std::span<const double> y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

/// Low-frequency growth of max_t ||w_delta(t)||^2 - ||w_delta(0)||^2 along a delta sequence.
struct LowFrequencyFit {
  struct Entry {
    double delta_multiple;
    double delta;
    double initial_sq;  // ||w_delta(0)||^2
    double max_sq;      // max_t ||w_delta(t)||^2
    double growth;      // max_sq - initial_sq
    double scale;       // (delta^{2-2a} + delta^{2-2b}) ||theta0|| (cum1 + cum2)
    double bound;       // initial_sq + c_emp * scale
  };
  std::vector<Entry> entries;
  double c_emp = 0;                 // least-squares constant, reported only
  std::optional<double> rate;       // log-log slope over entries with positive growth
  double expected_rate = 0;         // min(2 - 2 alpha, 2 - 2 beta)
  double rate_band = 0.3;

  bool rate_ok() const { return rate && *rate >= expected_rate - rate_band; }
};

/// Streaming accumulator for the low-frequency fit: keeps only the first
/// record's split norms, the running maxima and the latest cumulative
/// dissipation, so long runs need not be buffered.
class LowFrequencyTracker {
 public:
  void add(const DiagnosticsRecord& r) {
    if (count_ == 0) {
      theta0_ = r.l2;
      for (const auto& s : r.split) {
        multiples_.push_back(s.delta_multiple);
        initial_sq_.push_back(s.low * s.low);
      }
      max_sq_ = initial_sq_;
    }
    if (r.split.size() != multiples_.size()) throw InvalidArgument("records disagree on the delta list");
    for (std::size_t d = 0; d < r.split.size(); ++d) max_sq_[d] = std::max(max_sq_[d], r.split[d].low * r.split[d].low);
    cum_ = r.cum1 + r.cum2;
    ++count_;
  }

  /// `fundamental` converts the recorded delta multiples to absolute wavenumbers.
  LowFrequencyFit fit(double alpha, double beta, double fundamental) const {
    if (count_ == 0) throw InvalidArgument("low-frequency growth needs records");
    if (multiples_.size() < 3) throw InvalidArgument("low-frequency rate fit needs at least 3 delta values");
    LowFrequencyFit fit;
    fit.expected_rate = std::min(2 - 2 * alpha, 2 - 2 * beta);
    for (std::size_t d = 0; d < multiples_.size(); ++d) {
      LowFrequencyFit::Entry e{};
      e.delta_multiple = multiples_[d];
      e.delta = e.delta_multiple * fundamental;
      e.initial_sq = initial_sq_[d];
      e.max_sq = max_sq_[d];
      e.growth = e.max_sq - e.initial_sq;
      e.scale = (std::pow(e.delta, 2 - 2 * alpha) + std::pow(e.delta, 2 - 2 * beta)) * theta0_ * cum_;
      fit.entries.push_back(e);
    }

    double num = 0, den = 0;
    for (const auto& e : fit.entries) {
      num += e.growth * e.scale;
      den += e.scale * e.scale;
    }
    fit.c_emp = den > 0 ? num / den : 0.0;
    for (auto& e : fit.entries) e.bound = e.initial_sq + fit.c_emp * e.scale;

    std::vector<double> lx, ly;
    for (const auto& e : fit.entries) {
      if (e.growth > 0) {
        lx.push_back(std::log(e.delta));
        ly.push_back(std::log(e.growth));
      }
    }
    if (lx.size() >= 3) fit.rate = linear_fit(lx, ly).first;
    return fit;
  }

 private:
  long long count_ = 0;
  double theta0_ = 0;
  double cum_ = 0;
  std::vector<double> multiples_, initial_sq_, max_sq_;
};

/// Fits the growth of the low-pass energy against delta using the split
/// norms and cumulative dissipation stored in `records`.
inline LowFrequencyFit low_freq_growth(std::span<const DiagnosticsRecord> records, double alpha, double beta,
                                       double fundamental) {
  if (records.empty()) throw InvalidArgument("low-frequency growth needs records");
  LowFrequencyTracker tracker;
  for (const auto& r : records) tracker.add(r);
  return tracker.fit(alpha, beta, fundamental);
}

}  // namespace aqg

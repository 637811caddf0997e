#include "aqg/experiment/summary.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "aqg/experiment/records_io.hpp"

namespace aqg::experiment {

using ojson = nlohmann::ordered_json;

const NormSummary* Summary::find(const std::string& name) const {
  for (const auto& n : norms)
    if (n.name == name) return &n;
  return nullptr;
}

void SummaryAccumulator::observe(Track& tr, double t, double v) {
  if (count_ == 0) {
    tr.initial = v;
    if (v == 0) tr.hit.fill(t);
  } else {
    for (std::size_t e = 0; e < kDecayLevels.size(); ++e) {
      if (tr.hit[e]) continue;
      const double target = kDecayLevels[e] * tr.initial;
      if (v > target) continue;
      // Log-linear interpolation between the bracketing records; exact for exponential decay.
      if (v > 0 && tr.last > target && tr.last > 0) {
        const double frac = std::log(target / tr.last) / std::log(v / tr.last);
        tr.hit[e] = tr.last_t + frac * (t - tr.last_t);
      } else {
        tr.hit[e] = t;
      }
    }
  }
  tr.last = v;
  tr.last_t = t;
}

void SummaryAccumulator::add(const DiagnosticsRecord& r) {
  std::vector<std::pair<std::string, double>> values{{"l2", r.l2}, {"linf", r.linf}};
  for (const auto& [p, v] : r.lp) values.emplace_back("lp." + format_number(p), v);
  for (const auto& [s, v] : r.hs) values.emplace_back("hs." + format_number(s), v);
  for (const auto& [s, v] : r.hs_hom) values.emplace_back("hsdot." + format_number(s), v);

  if (count_ == 0) {
    for (const auto& [name, v] : values) tracks_.push_back(Track{name, 0, 0, 0, {}});
    l2_0_sq_ = r.l2 * r.l2;
  }
  if (values.size() != tracks_.size()) throw InvalidArgument("records disagree on the diagnostic norms");

  for (std::size_t i = 0; i < values.size(); ++i) {
    Track& tr = tracks_[i];
    const double v = values[i].second;
    observe(tr, r.t, v);
    const bool lebesgue = tr.name == "linf" || tr.name.starts_with("lp.");
    if (lebesgue && count_ > 0) {
      const double excess = tr.initial > 0 ? v / tr.initial - 1 : (v > 0 ? std::numeric_limits<double>::infinity() : 0.0);
      mp_excess_ = std::max(mp_excess_, excess);
    }
  }
  budget_worst_ = std::max(budget_worst_, std::abs(r.budget_residual));
  if (!std::isfinite(r.budget_residual)) budget_worst_ = std::numeric_limits<double>::infinity();
  low_.add(r);
  t_final_ = r.t;
  ++count_;
}

Summary SummaryAccumulator::finish() const {
  Summary s;
  s.record_count = count_;
  s.t_final = t_final_;
  for (const auto& tr : tracks_) s.norms.push_back({tr.name, tr.initial, tr.last, tr.hit});
  s.budget_worst = budget_worst_;
  s.budget_relative =
      l2_0_sq_ > 0 ? budget_worst_ / l2_0_sq_ : (budget_worst_ == 0 ? 0.0 : std::numeric_limits<double>::infinity());
  s.budget_tolerance = opts_.budget_tolerance;
  s.budget_ok = s.budget_relative <= opts_.budget_tolerance;
  s.max_principle_excess = mp_excess_;
  s.max_principle_slack = opts_.max_principle_slack;
  s.max_principle_ok = mp_excess_ <= opts_.max_principle_slack;
  if (count_ == 0) {
    s.split_fit_note = "no records";
  } else {
    try {
      s.split_fit = low_.fit(opts_.alpha, opts_.beta, opts_.fundamental);
      if (!s.split_fit->rate) s.split_fit_note = "fewer than 3 delta values with positive growth";
    } catch (const InvalidArgument& e) {
      s.split_fit_note = e.what();
    }
  }
  return s;
}

Summary summarize(std::span<const DiagnosticsRecord> records, const SummaryOptions& opts) {
  SummaryAccumulator acc(opts);
  for (const auto& r : records) acc.add(r);
  return acc.finish();
}

namespace {

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

}  // namespace

std::string summary_to_json(const Summary& s, const std::string& status, const std::string& error) {
  ojson j;
  j["status"] = status;
  if (!error.empty()) j["error"] = error;
  j["records"] = s.record_count;
  j["t_final"] = s.t_final;

  ojson norms = ojson::object();
  for (const auto& n : s.norms) {
    ojson tte = ojson::object();
    for (std::size_t e = 0; e < kDecayLevels.size(); ++e)
      tte[format_number(kDecayLevels[e])] = n.time_to_eps[e] ? ojson(*n.time_to_eps[e]) : ojson(nullptr);
    norms[n.name] = {{"initial", number_or_null(n.initial)}, {"final", number_or_null(n.final)}, {"time_to_eps", tte}};
  }
  j["norms"] = norms;
  j["budget"] = {{"worst_residual", number_or_null(s.budget_worst)},
                 {"relative", number_or_null(s.budget_relative)},
                 {"tolerance", s.budget_tolerance},
                 {"ok", s.budget_ok}};
  j["max_principle"] = {{"worst_excess", number_or_null(s.max_principle_excess)},
                        {"slack", s.max_principle_slack},
                        {"ok", s.max_principle_ok}};

  ojson fit;
  if (s.split_fit) {
    const auto& f = *s.split_fit;
    fit["c_emp"] = number_or_null(f.c_emp);
    fit["rate"] = f.rate ? number_or_null(*f.rate) : ojson(nullptr);
    fit["expected_rate"] = f.expected_rate;
    fit["rate_band"] = f.rate_band;
    fit["rate_ok"] = f.rate_ok();
    ojson entries = ojson::array();
    for (const auto& e : f.entries) {
      entries.push_back({{"delta_multiple", e.delta_multiple},
                         {"delta", e.delta},
                         {"initial_sq", e.initial_sq},
                         {"max_sq", e.max_sq},
                         {"growth", e.growth},
                         {"bound", number_or_null(e.bound)}});
    }
    fit["entries"] = entries;
  }
  if (!s.split_fit_note.empty()) fit["note"] = s.split_fit_note;
  j["split_fit"] = fit;
  return j.dump(2);
}

}  // namespace aqg::experiment

#include "aqg/experiment/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <future>
#include <thread>

#include <json.hpp>

#include "aqg/experiment/records_io.hpp"
#include "aqg/random_field.hpp"

namespace aqg::experiment {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::vector<double> Range::values() const {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  return v;
}

namespace {

double parse_double(std::string_view s, std::string_view whole) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidArgument("bad range \"" + std::string(whole) + "\"; expected lo:hi:count or a single value");
  }
  return v;
}

}  // namespace

Range parse_range(std::string_view text) {
  Range r;
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) {
    r.lo = r.hi = parse_double(text, text);
    return r;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw InvalidArgument("bad range \"" + std::string(text) + "\"; expected lo:hi:count");
  r.lo = parse_double(text.substr(0, c1), text);
  r.hi = parse_double(text.substr(c1 + 1, c2 - c1 - 1), text);
  const double n = parse_double(text.substr(c2 + 1), text);
  if (!(n >= 1) || n != std::floor(n)) throw InvalidArgument("range count must be a positive integer");
  r.count = int(n);
  if (r.count == 1 && r.lo != r.hi) throw InvalidArgument("a range with one point needs lo == hi");
  return r;
}

bool SweepReport::passed() const {
  return std::all_of(cells.begin(), cells.end(), [](const SweepCell& c) { return c.status == "ok"; });
}

std::string to_ndjson(const SweepCell& c) {
  auto opt = [](const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); };
  ojson j;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["branch"] = to_string(c.region.branch);
  j["threshold"] = c.region.threshold;
  j["satisfies_11"] = c.region.satisfied;
  j["margin"] = c.region.margin;
  j["time_to_eps"] = {{"eps", 1e-2}, {"l2", opt(c.time_to_eps_l2)}, {"hs", opt(c.time_to_eps_hs)}};
  j["budget_residual"] = std::isfinite(c.budget_residual) ? ojson(c.budget_residual) : ojson(nullptr);
  j["status"] = c.status;
  if (!c.error.empty()) j["error"] = c.error;
  j["directory"] = c.directory;
  return j.dump();
}

SweepReport run_sweep(const ExperimentConfig& config, const Range& alpha, const Range& beta, const RunOptions& opts,
                      int max_parallel) {
  const auto as = alpha.values();
  const auto bs = beta.values();
  for (double a : as)
    if (!(a > 0 && a < 1)) throw InvalidArgument("alpha must lie in the open interval (0,1)");
  for (double b : bs)
    if (!(b > 0 && b < 1)) throw InvalidArgument("beta must lie in the open interval (0,1)");

  const fs::path base = config.output.directory;
  std::error_code ec;
  fs::create_directories(base, ec);
  if (ec) throw OutputError("cannot create output directory " + base.string() + ": " + ec.message());

  const std::string hs_name =
      config.solver.s_diag.empty()
          ? std::string()
          : "hs." + format_number(*std::max_element(config.solver.s_diag.begin(), config.solver.s_diag.end()));

  SweepReport report;
  report.cells.resize(as.size() * bs.size());
  auto run_cell = [&](std::size_t i, std::size_t j) {
    SweepCell& cell = report.cells[i * bs.size() + j];
    cell.alpha = as[i];
    cell.beta = bs[j];
    cell.region = classify_region(cell.alpha, cell.beta);
    ExperimentConfig cc = config;
    cc.params.alpha = cell.alpha;
    cc.params.beta = cell.beta;
    if (cc.initial.seed) cc.initial.seed = derive_seed(*cc.initial.seed, i * bs.size() + j);
    cc.output.directory = (base / ("cell_" + std::to_string(i) + "_" + std::to_string(j))).string();
    cell.directory = cc.output.directory;
    try {
      const ExperimentResult r = run_experiment(cc, opts);
      cell.status = r.status;
      cell.error = r.error;
      cell.budget_residual = r.summary.budget_worst;
      if (const auto* n = r.summary.find("l2")) cell.time_to_eps_l2 = n->time_to_eps[1];
      if (const auto* n = r.summary.find(hs_name)) cell.time_to_eps_hs = n->time_to_eps[1];
    } catch (const std::exception& e) {
      cell.status = "error";
      cell.error = e.what();
    }
  };

  const std::size_t limit =
      std::size_t(max_parallel > 0 ? max_parallel : std::max(1u, std::thread::hardware_concurrency()));
  std::deque<std::future<void>> running;
  for (std::size_t i = 0; i < as.size(); ++i) {
    for (std::size_t j = 0; j < bs.size(); ++j) {
      if (running.size() >= limit) {
        running.front().get();
        running.pop_front();
      }
      running.push_back(std::async(std::launch::async, run_cell, i, j));
    }
  }
  for (auto& f : running) f.get();

  report.path = (base / "sweep.ndjson").string();
  std::ofstream out(report.path, std::ios::trunc);
  for (const auto& c : report.cells) out << to_ndjson(c) << '\n';
  out.flush();
  if (!out) throw OutputError("cannot write " + report.path);
  return report;
}

}  // namespace aqg::experiment

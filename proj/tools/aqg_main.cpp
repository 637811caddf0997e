// Command-line front end: run, sweep, verify-lemmas, records-to-csv.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "aqg/experiment/config.hpp"
#include "aqg/experiment/experiment.hpp"
#include "aqg/experiment/lemma_suites.hpp"
#include "aqg/experiment/records_io.hpp"
#include "aqg/experiment/sweep.hpp"

namespace ex = aqg::experiment;

namespace {

// Exit codes: 0 all invariants held, 1 an asserted invariant failed,
// 2 bad input, 3 output could not be written.
constexpr int kOk = 0, kViolation = 1, kBadInput = 2, kOutputFailure = 3;

std::string self_path(const char* argv0) {
  std::error_code ec;
  const auto p = std::filesystem::canonical("/proc/self/exe", ec);
  return ec ? std::string(argv0) : p.string();
}

ex::ExperimentConfig load(const std::string& path) {
  auto parsed = ex::load_config(path);
  for (const auto& w : parsed.warnings) std::cerr << w << '\n';
  ex::apply_environment(parsed.config);
  return parsed.config;
}

int report_run(const ex::ExperimentResult& r) {
  std::cout << "status: " << r.status << '\n';
  if (!r.error.empty()) std::cout << "error: " << r.error << '\n';
  std::cout << "records: " << r.summary.record_count << ", t = " << r.summary.t_final << '\n';
  std::cout << "budget residual (relative): " << r.summary.budget_relative << '\n';
  std::cout << "max-principle excess: " << r.summary.max_principle_excess << '\n';
  std::cout << "output: " << r.directory.string() << '\n';
  return r.passed() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic quasi-geostrophic simulator and estimate checker"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run one experiment from a JSON configuration");
  run->add_option("config", config_path, "configuration file")->required();

  std::string sweep_config, alpha_range, beta_range;
  int jobs = 0;
  auto* sweep = app.add_subcommand("sweep", "run an (alpha, beta) grid of experiments");
  sweep->add_option("config", sweep_config, "configuration file")->required();
  sweep->add_option("--alpha", alpha_range, "lo:hi:count or a single value")->required();
  sweep->add_option("--beta", beta_range, "lo:hi:count or a single value")->required();
  sweep->add_option("--jobs", jobs, "concurrent runs (default: hardware threads)");

  std::string lemma;
  int samples = 0;
  std::uint64_t seed = ex::SuiteOptions{}.seed;
  auto* verify = app.add_subcommand("verify-lemmas", "evaluate the functional inequalities on random fields");
  verify->add_option("--lemma", lemma, "suite 1-5 or its name (default: all)");
  verify->add_option("--samples", samples, "samples per family (default: suite specific)")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "master seed");

  std::string csv_in, csv_out;
  auto* to_csv = app.add_subcommand("records-to-csv", "convert records.ndjson to CSV ('-' for stdin/stdout)");
  to_csv->add_option("in", csv_in)->required();
  to_csv->add_option("out", csv_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    ex::RunOptions opts;
    opts.converter = self_path(argv[0]);

    if (*run) return report_run(ex::run_experiment(load(config_path), opts));

    if (*sweep) {
      const auto report =
          ex::run_sweep(load(sweep_config), ex::parse_range(alpha_range), ex::parse_range(beta_range), opts, jobs);
      for (const auto& c : report.cells) std::cout << ex::to_ndjson(c) << '\n';
      std::cout << "sweep report: " << report.path << '\n';
      return report.passed() ? kOk : kViolation;
    }

    if (*verify) {
      ex::SuiteOptions so;
      so.samples = samples;
      so.seed = seed;
      std::vector<int> suites;
      if (lemma.empty()) suites = {1, 2, 3, 4, 5};
      else suites = {ex::lemma_suite_index(lemma)};
      bool ok = true;
      for (int i : suites) {
        const auto res = ex::run_lemma_suite(i, so);
        for (const auto& r : res.reports) std::cout << ex::to_ndjson(r) << '\n';
        for (const auto& c : res.checks) std::cout << ex::to_ndjson(c, res.name) << '\n';
        ok = ok && res.passed();
      }
      return ok ? kOk : kViolation;
    }

    if (*to_csv) {
      ex::records_to_csv(csv_in, csv_out);
      return kOk;
    }
  } catch (const ex::ConfigError& e) {
    std::cerr << "configuration rejected:\n";
    for (const auto& v : e.violations()) std::cerr << "  - " << v << '\n';
    return kBadInput;
  } catch (const ex::OutputError& e) {
    std::cerr << "output failure: " << e.what() << '\n';
    return kOutputFailure;
  } catch (const aqg::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOutputFailure;
  }
  return kOk;
}

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "aqg/experiment/config.hpp"
#include "aqg/experiment/experiment.hpp"
#include "aqg/experiment/records_io.hpp"
#include "aqg/experiment/sweep.hpp"

using namespace aqg;
using namespace aqg::experiment;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("aqg_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small(const fs::path& dir) {
  ExperimentConfig c;
  c.grid = {32, 32, 4 * std::numbers::pi, 4 * std::numbers::pi};
  c.params = {1, 1, 0.7, 0.6};
  c.solver.dt = 0.02;
  c.solver.t_end = 0.4;
  c.solver.diagnostics_every = 2;
  c.initial.kind = InitialKind::RandomBandlimited;
  c.initial.amplitude = 0.5;
  c.initial.seed = 1234;
  c.initial.kmax = 4;
  c.budget_tolerance = 1e-2;  // coarse steps; the budget itself is tested elsewhere
  c.output.directory = dir.string();
  return c;
}

int cli(const std::string& args) {
  const int rc = std::system((std::string(AQG_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

}  // namespace

TEST(Experiment, WritesEveryArtifact) {
  const auto dir = scratch("artifacts");
  auto c = small(dir);
  c.output.csv = true;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.status, "ok");
  for (const char* f : {"records.ndjson", "records.csv", "summary.json", "plot.gp", "config.json", "manifest.json"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;

  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest["status"], "ok");
  EXPECT_EQ(manifest["files"].size(), 5u);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  EXPECT_EQ(summary["status"], "ok");
  EXPECT_EQ(summary["records"], r.summary.record_count);
  EXPECT_EQ(read_records((dir / "records.ndjson").string()).size(), std::size_t(r.summary.record_count));
  EXPECT_EQ(parse_config(slurp(dir / "config.json")).config.initial.seed, 1234u);
  EXPECT_NE(slurp(dir / "plot.gp").find("records.csv"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Experiment, PlotScriptUsesTheConverterWithoutCsv) {
  const auto dir = scratch("plot");
  RunOptions opts;
  opts.converter = "/opt/bin/aqg";
  run_experiment(small(dir), opts);
  const std::string plot = slurp(dir / "plot.gp");
  EXPECT_NE(plot.find("/opt/bin/aqg"), std::string::npos);
  EXPECT_NE(plot.find("records-to-csv"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Experiment, RerunsAreByteIdentical) {
  const auto a = scratch("repro_a"), b = scratch("repro_b");
  run_experiment(small(a));
  run_experiment(small(b));
  for (const char* f : {"records.ndjson", "summary.json"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Experiment, InvariantViolationIsReported) {
  const auto dir = scratch("violation");
  auto c = small(dir);
  c.budget_tolerance = 1e-300;
  c.solver.dt = 0.1;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.status, "invariant_violation");
  EXPECT_FALSE(r.summary.budget_ok);
  fs::remove_all(dir);
}

TEST(Experiment, UnwritableDirectoryIsAnOutputError) {
  const auto dir = scratch("blocked");
  fs::create_directories(dir);
  write_file(dir / "file", "x");
  EXPECT_THROW(run_experiment(small(dir / "file" / "sub")), OutputError);
  fs::remove_all(dir);
}

TEST(Sweep, RangesParse) {
  const auto r = parse_range("0.2:0.8:4");
  EXPECT_EQ(r.count, 4);
  EXPECT_NEAR(r.values()[1], 0.4, 1e-15);
  EXPECT_EQ(parse_range("0.5").values(), std::vector<double>{0.5});
  EXPECT_THROW(parse_range("0.2:0.8"), InvalidArgument);
  EXPECT_THROW(parse_range("a:b:3"), InvalidArgument);
  EXPECT_THROW(parse_range("0.1:0.9:2.5"), InvalidArgument);
  EXPECT_THROW(parse_range("0.1:0.9:1"), InvalidArgument);
}

TEST(Sweep, SingleCellMatchesADirectRun) {
  const auto sweep_dir = scratch("sweep1"), run_dir = scratch("sweep1_direct");
  const auto c = small(sweep_dir);
  const auto report = run_sweep(c, parse_range("0.7"), parse_range("0.6"));
  ASSERT_EQ(report.cells.size(), 1u);
  EXPECT_EQ(report.cells[0].status, "ok");
  run_experiment(small(run_dir));
  EXPECT_EQ(slurp(sweep_dir / "cell_0_0" / "records.ndjson"), slurp(run_dir / "records.ndjson"));
  fs::remove_all(sweep_dir);
  fs::remove_all(run_dir);
}

TEST(Sweep, GridCellsCarryRegionLabels) {
  const auto dir = scratch("sweep5");
  auto c = small(dir);
  c.grid = {16, 16, 4 * std::numbers::pi, 4 * std::numbers::pi};
  c.solver.t_end = 0.1;
  const auto report = run_sweep(c, parse_range("0.1:0.9:5"), parse_range("0.1:0.9:5"), {}, 4);
  ASSERT_EQ(report.cells.size(), 25u);
  EXPECT_TRUE(report.passed());
  std::ifstream in(report.path);
  int lines = 0;
  for (std::string line; std::getline(in, line); ++lines) {
    const auto j = nlohmann::json::parse(line);
    const auto region = classify_region(j["alpha"].get<double>(), j["beta"].get<double>());
    EXPECT_EQ(j["branch"], to_string(region.branch));
    EXPECT_EQ(j["satisfies_11"], region.satisfied);
  }
  EXPECT_EQ(lines, 25);
  // seeds differ between cells
  EXPECT_NE(slurp(dir / "cell_0_0" / "records.ndjson"), slurp(dir / "cell_0_1" / "records.ndjson"));
  EXPECT_THROW(run_sweep(c, parse_range("0.5:1.0:3"), parse_range("0.5")), InvalidArgument);
  fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch("cli");
  fs::create_directories(dir);
  const std::string out = (dir / "run").string();
  write_file(dir / "good.json", R"({"grid": {"n1": 16, "n2": 16}, "solver": {"dt": 0.01, "t_end": 0.05},
    "output": {"directory": ")" + out + R"("}})");
  write_file(dir / "bad.json", R"({"params": {"alpha": 1.0}})");
  write_file(dir / "strict.json", R"({"grid": {"n1": 16, "n2": 16, "l1": 6.283185307179586, "l2": 6.283185307179586},
    "solver": {"dt": 0.1, "t_end": 0.5}, "diagnostics": {"budget_tolerance": 1e-300},
    "output": {"directory": ")" + (dir / "strict").string() + R"("}})");
  write_file(dir / "blocked", "x");
  write_file(dir / "unwritable.json", R"({"grid": {"n1": 16, "n2": 16}, "solver": {"dt": 0.01, "t_end": 0.05},
    "output": {"directory": ")" + (dir / "blocked" / "sub").string() + R"("}})");

  EXPECT_EQ(cli("run " + (dir / "good.json").string()), 0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "manifest.json"));
  EXPECT_EQ(cli("run " + (dir / "bad.json").string()), 2);
  EXPECT_EQ(cli("run " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(cli("run " + (dir / "strict.json").string()), 1);
  EXPECT_EQ(cli("run " + (dir / "unwritable.json").string()), 3);
  EXPECT_EQ(cli("frobnicate"), 2);
  EXPECT_EQ(cli("verify-lemmas --lemma nine"), 2);

  const std::string csv = (dir / "records.csv").string();
  EXPECT_EQ(cli("records-to-csv " + out + "/records.ndjson " + csv), 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("t,l2,linf,", 0), 0u);
  fs::remove_all(dir);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const auto dir = scratch("cli_env");
  fs::create_directories(dir);
  write_file(dir / "cfg.json", R"({"grid": {"n1": 16, "n2": 16}, "solver": {"dt": 0.01, "t_end": 0.02}})");
  const std::string target = (dir / "from_env").string();
  ::setenv("AQG_OUTPUT_DIR", target.c_str(), 1);
  const int rc = cli("run " + (dir / "cfg.json").string());
  ::unsetenv("AQG_OUTPUT_DIR");
  EXPECT_EQ(rc, 0);
  EXPECT_TRUE(fs::exists(fs::path(target) / "records.ndjson"));
  fs::remove_all(dir);
}

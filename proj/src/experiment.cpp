#include "aqg/experiment/experiment.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "aqg/experiment/initial_condition.hpp"
#include "aqg/experiment/records_io.hpp"

namespace aqg::experiment {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_manifest(const fs::path& dir, const std::string& status, const std::vector<std::string>& files,
                    const std::string& error) {
  ojson m;
  m["status"] = status;
  m["files"] = files;
  if (!error.empty()) m["error"] = error;
  write_text(dir / "manifest.json", m.dump(2) + "\n");
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Gnuplot script plotting every norm relative to its initial value on a log axis.
std::string plot_script(const DiagnosticsRecord& first, bool have_csv, const std::string& converter) {
  const auto keys = record_keys(first);
  std::ostringstream os;
  os << "# log(norm / initial) against t\n";
  os << "set datafile separator \",\"\n";
  os << "set logscale y\n";
  os << "set format y \"%.0e\"\n";
  os << "set xlabel \"t\"\n";
  os << "set ylabel \"norm / initial\"\n";
  os << "set key outside right\n";
  os << "set grid\n";
  if (have_csv) {
    os << "data = \"records.csv\"\n";
  } else {
    os << "data = \"< \" . " << quote(quote(converter)) << " . \" records-to-csv records.ndjson -\"\n";
  }

  std::vector<std::pair<std::string, double>> norms{{"l2", first.l2}, {"linf", first.linf}};
  for (const auto& [p, v] : first.lp) norms.emplace_back("lp." + format_number(p), v);
  for (const auto& [s, v] : first.hs) norms.emplace_back("hs." + format_number(s), v);
  for (const auto& [s, v] : first.hs_hom) norms.emplace_back("hsdot." + format_number(s), v);

  std::vector<std::string> curves;
  for (const auto& [name, v0] : norms) {
    if (!(v0 > 0)) continue;
    std::size_t col = 0;
    while (col < keys.size() && keys[col] != name) ++col;
    std::ostringstream c;
    c << "data every ::1 using 1:($" << col + 1 << "/" << format_number(v0) << ") with lines title \"" << name
      << "\"";
    curves.push_back(c.str());
  }
  if (curves.empty()) {
    os << "print \"all norms vanish initially; nothing to plot\"\n";
    return os.str();
  }
  os << "plot ";
  for (std::size_t i = 0; i < curves.size(); ++i) os << (i ? ", \\\n     " : "") << curves[i];
  os << "\n";
  return os.str();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& opts) {
  ExperimentResult res;
  res.directory = config.output.directory;
  std::error_code ec;
  fs::create_directories(res.directory, ec);
  if (ec) throw OutputError("cannot create output directory " + res.directory.string() + ": " + ec.message());

  const Grid<double> grid = config.grid.make();
  const SpectralField<double> theta0 = generate_initial(config.initial, grid);

  SummaryOptions sopts;
  sopts.alpha = config.params.alpha;
  sopts.beta = config.params.beta;
  sopts.fundamental = grid.fundamental();
  sopts.budget_tolerance = config.budget_tolerance;
  sopts.max_principle_slack = config.max_principle_slack;
  SummaryAccumulator acc(sopts);

  auto fail_output = [&](const std::string& what) -> OutputError {
    try {
      write_manifest(res.directory, "output_error", res.files, what);
    } catch (...) {
    }
    return OutputError(what);
  };

  std::unique_ptr<RecordWriter> writer;
  std::ofstream csv;
  std::optional<DiagnosticsRecord> first;
  try {
    writer = std::make_unique<RecordWriter>((res.directory / "records.ndjson").string());
    res.files.push_back("records.ndjson");
    if (config.output.csv) {
      csv.open(res.directory / "records.csv", std::ios::trunc);
      if (!csv) throw std::runtime_error("cannot open records.csv for writing");
      res.files.push_back("records.csv");
    }
  } catch (const std::runtime_error& e) {
    throw fail_output(e.what());
  }

  bool disk_failure = false;
  std::string disk_error;
  auto sink = [&](const DiagnosticsRecord& r) {
    if (!first) first = r;
    acc.add(r);
    try {
      writer->write(r);
      if (csv.is_open()) {
        if (writer->count() == 1) csv << csv_header(r) << '\n';
        csv << csv_row(r) << '\n';
        csv.flush();
        if (!csv) throw std::runtime_error("write to records.csv failed");
      }
    } catch (const std::runtime_error& e) {
      disk_failure = true;
      disk_error = e.what();
      throw;
    }
  };

  try {
    run(theta0, config.params, config.solver, sink);
  } catch (const std::exception& e) {
    if (disk_failure) throw fail_output(disk_error);
    res.status = "error";
    res.error = e.what();
  }

  res.summary = acc.finish();
  if (res.status.empty()) res.status = res.summary.passed() ? "ok" : "invariant_violation";

  try {
    write_text(res.directory / "summary.json", summary_to_json(res.summary, res.status, res.error) + "\n");
    res.files.push_back("summary.json");
    if (first) {
      write_text(res.directory / "plot.gp", plot_script(*first, config.output.csv, opts.converter));
      res.files.push_back("plot.gp");
    }
    write_text(res.directory / "config.json", to_json(config) + "\n");
    res.files.push_back("config.json");
    write_manifest(res.directory, res.status, res.files, res.error);
  } catch (const std::runtime_error& e) {
    throw fail_output(e.what());
  }
  return res;
}

}  // namespace aqg::experiment

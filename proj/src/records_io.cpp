#include "aqg/experiment/records_io.hpp"

#include <charconv>
#include <cmath>
#include <iostream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "aqg/norms.hpp"

namespace aqg::experiment {

using ojson = nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

double parse_suffix(const std::string& s) {
  if (s == "inf") return kInf;
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw InvalidArgument("bad numeric key suffix " + s);
  return v;
}

std::string value(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

template <typename Fn>
void for_each_field(const DiagnosticsRecord& r, Fn&& emit) {
  emit("t", r.t);
  emit("l2", r.l2);
  emit("linf", r.linf);
  for (const auto& [p, v] : r.lp) emit("lp." + format_number(p), v);
  for (const auto& [s, v] : r.hs) emit("hs." + format_number(s), v);
  for (const auto& [s, v] : r.hs_hom) emit("hsdot." + format_number(s), v);
  emit("diss1", r.diss1);
  emit("diss2", r.diss2);
  emit("cum1", r.cum1);
  emit("cum2", r.cum2);
  for (const auto& sp : r.split) {
    emit("split." + format_number(sp.delta_multiple) + ".low", sp.low);
    emit("split." + format_number(sp.delta_multiple) + ".high", sp.high);
  }
  emit("budget_residual", r.budget_residual);
}

}  // namespace

std::string to_ndjson(const DiagnosticsRecord& r) {
  std::string out = "{";
  bool first = true;
  for_each_field(r, [&](const std::string& key, double v) {
    if (!first) out += ',';
    first = false;
    out += '"' + key + "\":" + value(v);
  });
  out += '}';
  return out;
}

std::vector<std::string> record_keys(const DiagnosticsRecord& r) {
  std::vector<std::string> keys;
  for_each_field(r, [&](const std::string& key, double) { keys.push_back(key); });
  return keys;
}

std::string csv_header(const DiagnosticsRecord& r) {
  std::string out;
  for_each_field(r, [&](const std::string& key, double) { out += (out.empty() ? "" : ",") + key; });
  return out;
}

std::string csv_row(const DiagnosticsRecord& r) {
  std::string out;
  bool first = true;
  for_each_field(r, [&](const std::string&, double v) {
    if (!first) out += ',';
    first = false;
    if (std::isfinite(v)) out += format_number(v);
  });
  return out;
}

DiagnosticsRecord parse_record(std::string_view line) {
  const ojson j = ojson::parse(line);
  if (!j.is_object()) throw InvalidArgument("record line is not a JSON object");
  DiagnosticsRecord r;
  auto num = [](const ojson& v) { return v.is_null() ? std::nan("") : v.get<double>(); };
  for (const auto& [key, v] : j.items()) {
    const double x = num(v);
    if (key == "t") r.t = x;
    else if (key == "l2") r.l2 = x;
    else if (key == "linf") r.linf = x;
    else if (key == "diss1") r.diss1 = x;
    else if (key == "diss2") r.diss2 = x;
    else if (key == "cum1") r.cum1 = x;
    else if (key == "cum2") r.cum2 = x;
    else if (key == "budget_residual") r.budget_residual = x;
    else if (key.starts_with("lp.")) r.lp.emplace_back(parse_suffix(key.substr(3)), x);
    else if (key.starts_with("hs.")) r.hs.emplace_back(parse_suffix(key.substr(3)), x);
    else if (key.starts_with("hsdot.")) r.hs_hom.emplace_back(parse_suffix(key.substr(6)), x);
    else if (key.starts_with("split.")) {
      const auto dot = key.rfind('.');
      const double m = parse_suffix(key.substr(6, dot - 6));
      const std::string part = key.substr(dot + 1);
      if (r.split.empty() || r.split.back().delta_multiple != m) r.split.push_back({m, 0, 0});
      if (part == "low") r.split.back().low = x;
      else if (part == "high") r.split.back().high = x;
      else throw InvalidArgument("unknown record key " + key);
    } else {
      throw InvalidArgument("unknown record key " + key);
    }
  }
  return r;
}

std::vector<DiagnosticsRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open records file " + path);
  std::vector<DiagnosticsRecord> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(parse_record(line));
  return out;
}

RecordWriter::RecordWriter(const std::string& path) : path_(path), out_(path, std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
}

void RecordWriter::write(const DiagnosticsRecord& r) {
  out_ << to_ndjson(r) << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("write to " + path_ + " failed");
  ++count_;
}

void records_to_csv(std::istream& in, std::ostream& out) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const ojson j = ojson::parse(line);
    if (header.empty()) {
      for (const auto& [k, v] : j.items()) header.push_back(k);
      for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
      out << '\n';
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out << ',';
      const auto it = j.find(header[i]);
      if (it != j.end() && it->is_number()) out << format_number(it->get<double>());
    }
    out << '\n';
  }
}

void records_to_csv(const std::string& in_path, const std::string& out_path) {
  std::ifstream fin;
  std::ofstream fout;
  if (in_path != "-") {
    fin.open(in_path);
    if (!fin) throw InvalidArgument("cannot open records file " + in_path);
  }
  if (out_path != "-") {
    fout.open(out_path, std::ios::trunc);
    if (!fout) throw std::runtime_error("cannot open " + out_path + " for writing");
  }
  std::istream& in = in_path == "-" ? std::cin : static_cast<std::istream&>(fin);
  std::ostream& out = out_path == "-" ? std::cout : static_cast<std::ostream&>(fout);
  records_to_csv(in, out);
  out.flush();
  if (!out) throw std::runtime_error("write to " + out_path + " failed");
}

}  // namespace aqg::experiment

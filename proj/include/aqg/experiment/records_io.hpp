#pragma once

#include <fstream>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "aqg/diagnostics.hpp"

namespace aqg::experiment {

/// Shortest round-trip decimal form; infinity prints as "inf".
std::string format_number(double v);

std::string to_ndjson(const DiagnosticsRecord& r);
DiagnosticsRecord parse_record(std::string_view line);
std::vector<DiagnosticsRecord> read_records(const std::string& path);

/// Column names of a record in NDJSON key order.
std::vector<std::string> record_keys(const DiagnosticsRecord& r);

std::string csv_header(const DiagnosticsRecord& r);
/// Non-finite values are left empty.
std::string csv_row(const DiagnosticsRecord& r);

/// Appends records to an NDJSON file, flushing each line.
class RecordWriter {
 public:
  explicit RecordWriter(const std::string& path);
  void write(const DiagnosticsRecord& r);
  long long count() const { return count_; }

 private:
  std::string path_;
  std::ofstream out_;
  long long count_ = 0;
};

/// One CSV row per record with a header taken from the first record.
void records_to_csv(std::istream& in, std::ostream& out);
/// File form; "-" selects stdin / stdout.
void records_to_csv(const std::string& in_path, const std::string& out_path);

}  // namespace aqg::experiment

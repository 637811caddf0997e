#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aqg/lemmas.hpp"

namespace aqg::experiment {

struct SuiteOptions {
  int samples = 0;  // 0: the suite's default
  std::uint64_t seed = 20240601;
  std::vector<int> resolutions{64, 128, 256};
};

struct SuiteCheck {
  std::string description;
  double value = 0;
  double limit = 0;
  bool passed = false;
};

struct SuiteResult {
  std::string name;
  std::vector<RatioReport> reports;
  std::vector<SuiteCheck> checks;

  bool passed() const;
};

/// Suite names in CLI order (index 1..5).
const std::vector<std::string>& lemma_suite_names();

/// Accepts a suite name or its 1-based index.
int lemma_suite_index(std::string_view key);

SuiteResult run_lemma_suite(int index, const SuiteOptions& opts = {});

std::string to_ndjson(const RatioReport& r);
std::string to_ndjson(const SuiteCheck& c, const std::string& suite);

}  // namespace aqg::experiment

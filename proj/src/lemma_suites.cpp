#include "aqg/experiment/lemma_suites.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "aqg/experiment/records_io.hpp"
#include "aqg/random_field.hpp"

namespace aqg::experiment {

using ojson = nlohmann::ordered_json;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kExactSlack = 1e-10;
constexpr double kConstantSlack = 1e-8;
constexpr double kSpreadLimit = 1.2;

RandomSpectrum spectrum(std::uint64_t seed) {
  RandomSpectrum s;
  s.gamma = 2.0;
  s.kmax = -1;
  s.seed = seed;
  return s;
}

std::vector<SpectralField<double>> fields(int n, int count, std::uint64_t base) {
  const auto g = Grid<double>::square(n, kTwoPi);
  std::vector<SpectralField<double>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_bandlimited(g, spectrum(derive_seed(base, i))));
  return out;
}

std::vector<FieldPair<double>> pairs(int n, int count, std::uint64_t base) {
  const auto g = Grid<double>::square(n, kTwoPi);
  std::vector<FieldPair<double>> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back({random_bandlimited(g, spectrum(derive_seed(base, 2 * i + 1))),
                   random_bandlimited(g, spectrum(derive_seed(base, 2 * i + 2)))});
  }
  return out;
}

std::string describe(const RatioReport& r) {
  std::ostringstream os;
  os << r.lemma;
  for (const auto& [k, v] : r.params) os << ' ' << k << '=' << format_number(v);
  return os.str();
}

void check_bound(SuiteResult& s, const RatioReport& r, double limit) {
  s.checks.push_back({describe(r) + ": max ratio <= " + format_number(limit), r.max_ratio, limit,
                      r.sample_count > 0 && r.max_ratio <= limit});
}

void check_spread(SuiteResult& s, const RatioReport& r) {
  const double spread = r.resolution_spread();
  s.checks.push_back({describe(r) + ": per-resolution max ratios within 20%", spread, kSpreadLimit,
                      r.sample_count > 0 && std::isfinite(r.max_ratio) && spread <= kSpreadLimit});
}

/// Report merged over every resolution of `opts`.
template <typename Family, typename Check>
RatioReport across(const SuiteOptions& opts, Family&& family, Check&& check) {
  RatioReport total;
  bool first = true;
  for (int n : opts.resolutions) {
    const auto fam = family(n);
    RatioReport r = check(fam);
    if (first) {
      total = std::move(r);
      first = false;
    } else {
      total.merge(r);
    }
  }
  return total;
}

}  // namespace

bool SuiteResult::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

const std::vector<std::string>& lemma_suite_names() {
  static const std::vector<std::string> names{"interpolation", "product", "riesz_lp", "commutator",
                                              "pointwise_product"};
  return names;
}

int lemma_suite_index(std::string_view key) {
  const auto& names = lemma_suite_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (key == names[i]) return int(i) + 1;
  const std::string k(key);
  if (k.size() == 1 && k[0] >= '1' && k[0] <= '5') return k[0] - '0';
  throw InvalidArgument("unknown lemma suite \"" + std::string(key) +
                        "\"; expected 1-5 or one of interpolation, product, riesz_lp, commutator, pointwise_product");
}

SuiteResult run_lemma_suite(int index, const SuiteOptions& opts) {
  if (index < 1 || index > 5) throw InvalidArgument("lemma suite index must lie in 1..5");
  if (opts.resolutions.empty()) throw InvalidArgument("lemma suites need at least one resolution");
  SuiteResult s;
  s.name = lemma_suite_names()[index - 1];
  const std::uint64_t base = hash_combine(opts.seed, std::uint64_t(index));
  const int coarse = *std::min_element(opts.resolutions.begin(), opts.resolutions.end());

  switch (index) {
    case 1: {
      const int count = opts.samples > 0 ? opts.samples : 500;
      const auto fam = fields(coarse, count, base);
      struct P { double s1, s2, z, s; };
      for (const P p : {P{0.2, 1.4, 0.5, 2.0}, P{0.5, 1.0, 0.3, 1.0}})
        for (Axis axis : {Axis::X1, Axis::X2})
          for (auto norm : {InterpolationNorm::Inhomogeneous, InterpolationNorm::Homogeneous}) {
            auto r = check_interpolation<double>(fam, axis, p.s1, p.s2, p.z, p.s, norm);
            check_bound(s, r, 1 + kExactSlack);
            s.reports.push_back(std::move(r));
          }
      break;
    }
    case 2: {
      const int count = opts.samples > 0 ? opts.samples : 200;
      for (auto form : {ProductForm::Symmetric, ProductForm::Asymmetric}) {
        auto r = across(opts, [&](int n) { return pairs(n, count, base); },
                        [&](const auto& fam) { return check_product_estimate<double>(fam, 0.5, 0.75, form); });
        check_spread(s, r);
        s.reports.push_back(std::move(r));
      }
      break;
    }
    case 3: {
      const int count = opts.samples > 0 ? opts.samples : 200;
      for (double p : {2.0, 4.0}) {
        auto r = across(opts, [&](int n) { return fields(n, count, base); },
                        [&](const auto& fam) { return check_riesz_lp<double>(fam, p); });
        if (p == 2.0) check_bound(s, r, 1 + kExactSlack);
        check_spread(s, r);
        s.reports.push_back(std::move(r));
      }
      break;
    }
    case 4: {
      const int count = opts.samples > 0 ? opts.samples : 200;
      for (auto form : {CommutatorForm::Commutator, CommutatorForm::Product}) {
        auto r = across(opts, [&](int n) { return pairs(n, count, base); },
                        [&](const auto& fam) { return check_commutator<double>(fam, 2.0, 0.6, form); });
        check_spread(s, r);
        s.reports.push_back(std::move(r));
      }
      break;
    }
    case 5: {
      const int count = opts.samples > 0 ? opts.samples : 500;
      const auto fam = pairs(coarse, count, base);
      for (double r : {0.5, 1.0, 1.7})
        for (Axis axis : {Axis::X1, Axis::X2}) {
          auto rep = check_pointwise_product<double>(fam, axis, r);
          check_bound(s, rep, pointwise_product_constant(r) * (1 + kConstantSlack));
          s.reports.push_back(std::move(rep));
        }
      break;
    }
  }
  return s;
}

std::string to_ndjson(const RatioReport& r) {
  ojson j;
  j["lemma"] = r.lemma;
  ojson params = ojson::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = params;
  j["sample_count"] = r.sample_count;
  j["skipped"] = r.skipped;
  j["max_ratio"] = std::isfinite(r.max_ratio) ? ojson(r.max_ratio) : ojson("inf");
  j["mean_ratio"] = std::isfinite(r.mean_ratio) ? ojson(r.mean_ratio) : ojson("inf");
  ojson per = ojson::object();
  for (const auto& [n, v] : r.per_resolution) per[std::to_string(n)] = std::isfinite(v) ? ojson(v) : ojson("inf");
  j["per_resolution"] = per;
  return j.dump();
}

std::string to_ndjson(const SuiteCheck& c, const std::string& suite) {
  ojson j;
  j["suite"] = suite;
  j["check"] = c.description;
  j["value"] = std::isfinite(c.value) ? ojson(c.value) : ojson("inf");
  j["limit"] = c.limit;
  j["passed"] = c.passed;
  return j.dump();
}

}  // namespace aqg::experiment

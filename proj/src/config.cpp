#include "aqg/experiment/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace aqg::experiment {

using nlohmann::json;

const char* to_string(InitialKind k) {
  switch (k) {
    case InitialKind::SingleMode: return "single_mode";
    case InitialKind::RandomBandlimited: return "random_bandlimited";
    case InitialKind::VortexPair: return "vortex_pair";
    case InitialKind::X1Profile: return "x1_profile";
  }
  return "?";
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& m : v) s += (s.empty() ? "" : "; ") + m;
  return s;
}

class Reader {
 public:
  std::vector<std::string> errors;

  /// Object-valued section; unknown keys are reported by full name.
  const json* section(const json& doc, const std::string& name, const std::set<std::string>& allowed) {
    if (!doc.contains(name)) return nullptr;
    const json& s = doc.at(name);
    if (!s.is_object()) {
      errors.push_back(name + " must be an object");
      return nullptr;
    }
    for (const auto& [k, v] : s.items())
      if (!allowed.count(k)) errors.push_back("unknown key " + name + "." + k);
    return &s;
  }

  void number(const json* s, const std::string& where, const char* key, double& out) {
    if (!s || !s->contains(key)) return;
    const json& v = s->at(key);
    if (v.is_number()) out = v.get<double>();
    else errors.push_back(where + "." + key + " must be a number");
  }

  void integer(const json* s, const std::string& where, const char* key, int& out) {
    if (!s || !s->contains(key)) return;
    const json& v = s->at(key);
    if (v.is_number_integer()) out = v.get<int>();
    else errors.push_back(where + "." + key + " must be an integer");
  }

  /// Numbers, or the string "inf".
  void number_list(const json* s, const std::string& where, const char* key, std::vector<double>& out) {
    if (!s || !s->contains(key)) return;
    const json& v = s->at(key);
    if (!v.is_array()) {
      errors.push_back(where + "." + key + " must be an array");
      return;
    }
    out.clear();
    for (const auto& e : v) {
      if (e.is_number()) out.push_back(e.get<double>());
      else if (e.is_string() && e.get<std::string>() == "inf") out.push_back(kInf);
      else errors.push_back(where + "." + key + " entries must be numbers or \"inf\"");
    }
  }
};

void check(std::vector<std::string>& errors, bool ok, std::string msg) {
  if (!ok) errors.push_back(std::move(msg));
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error("invalid configuration: " + join(violations)), violations_(std::move(violations)) {}

std::vector<std::string> parameter_warnings(const DissipationParams& p) {
  std::vector<std::string> w;
  if (!(p.alpha > 0 && p.alpha < 1 && p.beta > 0 && p.beta < 1)) return w;
  const RegionClass rc = classify_region(p.alpha, p.beta);
  if (!rc.satisfied) {
    std::ostringstream os;
    os << "WARNING: (alpha, beta) = (" << p.alpha << ", " << p.beta << ") lies outside the decay region: beta must"
       << " exceed " << rc.threshold << " on the " << to_string(rc.branch) << " branch (margin " << rc.margin
       << "); the run proceeds but decay is not guaranteed";
    w.push_back(os.str());
  }
  return w;
}

ParsedConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("malformed JSON: ") + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({"configuration must be a JSON object"});

  Reader rd;
  const std::set<std::string> top{"grid", "params", "solver", "diagnostics", "initial_condition", "output"};
  for (const auto& [k, v] : doc.items())
    if (!top.count(k)) rd.errors.push_back("unknown key " + k);

  ParsedConfig out;
  ExperimentConfig& c = out.config;

  const json* g = rd.section(doc, "grid", {"n1", "n2", "l1", "l2"});
  rd.integer(g, "grid", "n1", c.grid.n1);
  rd.integer(g, "grid", "n2", c.grid.n2);
  rd.number(g, "grid", "l1", c.grid.l1);
  rd.number(g, "grid", "l2", c.grid.l2);

  const json* p = rd.section(doc, "params", {"mu", "nu", "alpha", "beta"});
  rd.number(p, "params", "mu", c.params.mu);
  rd.number(p, "params", "nu", c.params.nu);
  rd.number(p, "params", "alpha", c.params.alpha);
  rd.number(p, "params", "beta", c.params.beta);

  const json* s =
      rd.section(doc, "solver", {"dt", "t_end", "integrator", "cfl_safety", "diagnostics_every", "nonlinear"});
  rd.number(s, "solver", "dt", c.solver.dt);
  rd.number(s, "solver", "t_end", c.solver.t_end);
  rd.number(s, "solver", "cfl_safety", c.solver.cfl_safety);
  rd.integer(s, "solver", "diagnostics_every", c.solver.diagnostics_every);
  if (s && s->contains("integrator")) {
    const json& v = s->at("integrator");
    if (v == "IFRK4") c.solver.integrator = Integrator::IFRK4;
    else if (v == "IFEuler") c.solver.integrator = Integrator::IFEuler;
    else rd.errors.push_back("solver.integrator must be \"IFRK4\" or \"IFEuler\"");
  }
  if (s && s->contains("nonlinear")) {
    if (s->at("nonlinear").is_boolean()) c.solver.nonlinear = s->at("nonlinear").get<bool>();
    else rd.errors.push_back("solver.nonlinear must be a boolean");
  }

  const json* d = rd.section(doc, "diagnostics",
                             {"s_diag", "p_diag", "delta_list", "budget_tolerance", "max_principle_slack"});
  rd.number_list(d, "diagnostics", "s_diag", c.solver.s_diag);
  rd.number_list(d, "diagnostics", "p_diag", c.solver.p_diag);
  rd.number_list(d, "diagnostics", "delta_list", c.solver.delta_list);
  rd.number(d, "diagnostics", "budget_tolerance", c.budget_tolerance);
  rd.number(d, "diagnostics", "max_principle_slack", c.max_principle_slack);

  const json* ic = rd.section(doc, "initial_condition",
                              {"kind", "amplitude", "k", "gamma", "kmax", "kmin", "seed", "separation", "radius",
                               "coeffs"});
  InitialCondition& init = c.initial;
  if (ic) {
    std::string kind = "single_mode";
    if (ic->contains("kind")) {
      if (ic->at("kind").is_string()) kind = ic->at("kind").get<std::string>();
      else rd.errors.push_back("initial_condition.kind must be a string");
    }
    if (kind == "single_mode") init.kind = InitialKind::SingleMode;
    else if (kind == "random_bandlimited") init.kind = InitialKind::RandomBandlimited;
    else if (kind == "vortex_pair") init.kind = InitialKind::VortexPair;
    else if (kind == "x1_profile") init.kind = InitialKind::X1Profile;
    else rd.errors.push_back("initial_condition.kind \"" + kind + "\" is not one of single_mode, "
                             "random_bandlimited, vortex_pair, x1_profile");
    rd.number(ic, "initial_condition", "amplitude", init.amplitude);
    rd.number(ic, "initial_condition", "gamma", init.gamma);
    rd.integer(ic, "initial_condition", "kmax", init.kmax);
    rd.integer(ic, "initial_condition", "kmin", init.kmin);
    rd.number(ic, "initial_condition", "separation", init.separation);
    rd.number(ic, "initial_condition", "radius", init.radius);
    rd.number_list(ic, "initial_condition", "coeffs", init.coeffs);
    if (ic->contains("k")) {
      const json& k = ic->at("k");
      if (k.is_array() && k.size() == 2 && k[0].is_number_integer() && k[1].is_number_integer()) {
        init.mode = {k[0].get<int>(), k[1].get<int>()};
      } else {
        rd.errors.push_back("initial_condition.k must be a pair of integers");
      }
    }
    if (ic->contains("seed")) {
      const json& v = ic->at("seed");
      if (v.is_number_unsigned()) init.seed = v.get<std::uint64_t>();
      else rd.errors.push_back("initial_condition.seed must be a nonnegative integer");
    }
  }

  const json* o = rd.section(doc, "output", {"directory", "formats"});
  if (o && o->contains("directory")) {
    if (o->at("directory").is_string()) c.output.directory = o->at("directory").get<std::string>();
    else rd.errors.push_back("output.directory must be a string");
  }
  if (o && o->contains("formats")) {
    const json& f = o->at("formats");
    bool ndjson = false;
    c.output.csv = false;
    if (!f.is_array()) rd.errors.push_back("output.formats must be an array");
    else
      for (const auto& e : f) {
        if (e == "ndjson") ndjson = true;
        else if (e == "csv") c.output.csv = true;
        else rd.errors.push_back("output.formats entries must be \"ndjson\" or \"csv\"");
      }
    if (f.is_array() && !ndjson) rd.errors.push_back("output.formats must include \"ndjson\"");
  }

  // Range checks; each invariant is reported independently.
  auto& e = rd.errors;
  for (auto [n, name] : {std::pair{c.grid.n1, "grid.n1"}, std::pair{c.grid.n2, "grid.n2"}})
    check(e, n >= 8 && n % 2 == 0, std::string(name) + " must be an even integer >= 8");
  check(e, c.grid.l1 > 0, "grid.l1 must be positive");
  check(e, c.grid.l2 > 0, "grid.l2 must be positive");
  check(e, c.params.mu > 0, "mu must be positive");
  check(e, c.params.nu > 0, "nu must be positive");
  check(e, c.params.alpha > 0 && c.params.alpha < 1, "alpha must lie in the open interval (0,1)");
  check(e, c.params.beta > 0 && c.params.beta < 1, "beta must lie in the open interval (0,1)");
  check(e, c.solver.dt > 0, "dt must be positive");
  check(e, c.solver.t_end > 0, "t_end must be positive");
  check(e, c.solver.cfl_safety > 0 && c.solver.cfl_safety <= 1, "cfl_safety must lie in (0,1]");
  check(e, c.solver.diagnostics_every >= 1, "diagnostics_every must be a positive integer");
  for (double v : c.solver.s_diag) check(e, std::isfinite(v), "every s in s_diag must be finite");
  for (double v : c.solver.p_diag) check(e, v >= 1, "every p in p_diag must be >= 1");
  for (double v : c.solver.delta_list)
    check(e, v > 0 && std::isfinite(v), "every delta in delta_list must be positive");
  check(e, c.budget_tolerance > 0, "budget_tolerance must be positive");
  check(e, c.max_principle_slack >= 0, "max_principle_slack must be nonnegative");
  check(e, std::isfinite(init.amplitude), "initial_condition.amplitude must be finite");
  switch (init.kind) {
    case InitialKind::SingleMode:
      check(e, init.mode[0] != 0 || init.mode[1] != 0, "initial_condition.k must not be the zero mode");
      break;
    case InitialKind::RandomBandlimited:
      check(e, init.seed.has_value(), "initial_condition.seed is mandatory for random_bandlimited");
      check(e, init.gamma >= 0, "initial_condition.gamma must be nonnegative");
      check(e, init.kmax >= -1, "initial_condition.kmax must be -1 or nonnegative");
      check(e, init.kmin >= 0, "initial_condition.kmin must be nonnegative");
      break;
    case InitialKind::VortexPair:
      check(e, init.radius > 0, "initial_condition.radius must be positive");
      check(e, init.separation >= 0, "initial_condition.separation must be nonnegative");
      break;
    case InitialKind::X1Profile:
      check(e, !init.coeffs.empty(), "initial_condition.coeffs must not be empty");
      for (double v : init.coeffs) check(e, std::isfinite(v), "initial_condition.coeffs must be finite");
      break;
  }

  if (!e.empty()) throw ConfigError(e);
  out.warnings = parameter_warnings(c.params);
  return out;
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open configuration file " + path});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_environment(ExperimentConfig& config) {
  if (const char* dir = std::getenv("AQG_OUTPUT_DIR"); dir && *dir) config.output.directory = dir;
}

std::string to_json(const ExperimentConfig& c) {
  auto list = [](const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) {
      if (std::isinf(x)) a.push_back("inf");
      else a.push_back(x);
    }
    return a;
  };
  nlohmann::ordered_json j;
  j["grid"] = {{"n1", c.grid.n1}, {"n2", c.grid.n2}, {"l1", c.grid.l1}, {"l2", c.grid.l2}};
  j["params"] = {{"mu", c.params.mu}, {"nu", c.params.nu}, {"alpha", c.params.alpha}, {"beta", c.params.beta}};
  j["solver"] = {{"dt", c.solver.dt},
                 {"t_end", c.solver.t_end},
                 {"integrator", to_string(c.solver.integrator)},
                 {"cfl_safety", c.solver.cfl_safety},
                 {"diagnostics_every", c.solver.diagnostics_every},
                 {"nonlinear", c.solver.nonlinear}};
  j["diagnostics"] = {{"s_diag", list(c.solver.s_diag)},
                      {"p_diag", list(c.solver.p_diag)},
                      {"delta_list", list(c.solver.delta_list)},
                      {"budget_tolerance", c.budget_tolerance},
                      {"max_principle_slack", c.max_principle_slack}};
  const auto& ic = c.initial;
  nlohmann::ordered_json icj;
  icj["kind"] = to_string(ic.kind);
  icj["amplitude"] = ic.amplitude;
  switch (ic.kind) {
    case InitialKind::SingleMode: icj["k"] = {ic.mode[0], ic.mode[1]}; break;
    case InitialKind::RandomBandlimited:
      icj["gamma"] = ic.gamma;
      icj["kmax"] = ic.kmax;
      icj["kmin"] = ic.kmin;
      if (ic.seed) icj["seed"] = *ic.seed;
      break;
    case InitialKind::VortexPair:
      icj["separation"] = ic.separation;
      icj["radius"] = ic.radius;
      break;
    case InitialKind::X1Profile: icj["coeffs"] = ic.coeffs; break;
  }
  j["initial_condition"] = icj;
  nlohmann::ordered_json formats = nlohmann::ordered_json::array({"ndjson"});
  if (c.output.csv) formats.push_back("csv");
  j["output"] = {{"directory", c.output.directory}, {"formats", formats}};
  return j.dump(2);
}

}  // namespace aqg::experiment

#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spinlab/errors.hpp"

namespace spinlab::cli {

using json = nlohmann::ordered_json;

const std::vector<std::string> kScenarios = {"evolve-spin",      "evolve-q",      "evolve-strachan",
                                             "verify-lax",       "verify-lakshmanan", "verify-gauge",
                                             "verify-surfaces",  "verify-lambda", "invariants-drift"};

namespace {

enum class Kind { Number, Integer, String, Object, Array };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Number: return "number";
    case Kind::Integer: return "integer";
    case Kind::String: return "string";
    case Kind::Object: return "object";
    case Kind::Array: return "array";
  }
  return "?";
}

bool matches(const json& v, Kind k) {
  switch (k) {
    case Kind::Number: return v.is_number();
    case Kind::Integer: return v.is_number_integer();
    case Kind::String: return v.is_string();
    case Kind::Object: return v.is_object();
    case Kind::Array: return v.is_array();
  }
  return false;
}

using Table = std::vector<std::pair<std::string, Kind>>;

const Table kTop = {{"scenario", Kind::String}, {"grid", Kind::Object},           {"params", Kind::Object},
                    {"init", Kind::Object},     {"time", Kind::Object},           {"lambda_samples", Kind::Array},
                    {"output_dir", Kind::String}, {"tolerances", Kind::Object}};
const std::map<std::string, Table> kSections = {
    {"grid", {{"nx", Kind::Integer}, {"ny", Kind::Integer}, {"dx", Kind::Number}, {"dy", Kind::Number},
              {"x0", Kind::Number}, {"y0", Kind::Number}}},
    {"params", {{"b", Kind::Number}, {"e", Kind::Number}, {"kappa", Kind::Number}, {"n", Kind::Integer},
                {"a", Kind::Number}, {"c_re", Kind::Number}, {"c_im", Kind::Number}}},
    {"init", {{"kind", Kind::String}, {"amplitude", Kind::Number}, {"width", Kind::Number}, {"k", Kind::Number},
              {"l", Kind::Number}, {"radius", Kind::Number}, {"seed", Kind::Integer}}},
    {"time", {{"t_end", Kind::Number}, {"dt", Kind::Number}, {"snapshot_every", Kind::Integer}}},
    {"tolerances", {{"ratio_min", Kind::Number}, {"order_min", Kind::Number}, {"residual_max", Kind::Number},
                    {"drift_max", Kind::Number}}},
};

const std::vector<std::string> kSpinKinds = {"constant", "lump", "compact_lump", "helix", "helix_perturbed",
                                             "small_perturbation", "random_smooth"};
const std::vector<std::string> kQKinds = {"zero", "plane_wave", "flat_top_wave", "gaussian_packet"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

const Kind* find_kind(const Table& t, const std::string& key) {
  for (const auto& [k, kind] : t)
    if (k == key) return &kind;
  return nullptr;
}

// Checks keys and types of one object. Offending keys are dropped so the
// remaining values can still be read and checked.
void check_object(json& obj, const Table& table, const std::string& prefix, std::vector<std::string>& errs) {
  std::vector<std::string> drop;
  for (const auto& [key, value] : obj.items()) {
    const std::string path = prefix + key;
    const Kind* k = find_kind(table, key);
    if (!k) {
      errs.push_back("unknown key '" + path + "'");
      drop.push_back(key);
    } else if (!matches(value, *k)) {
      errs.push_back("type mismatch at '" + path + "': expected " + kind_name(*k) + ", got " + value.type_name());
      drop.push_back(key);
    }
  }
  for (const auto& key : drop) obj.erase(key);
}

template <class T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

bool is_spin_kind(const std::string& kind) { return contains(kSpinKinds, kind); }
bool is_q_kind(const std::string& kind) { return contains(kQKinds, kind); }

std::string default_kind(const std::string& scenario) {
  if (scenario == "evolve-spin" || scenario == "verify-lax") return "small_perturbation";
  if (scenario == "verify-lakshmanan") return "helix_perturbed";
  if (scenario == "invariants-drift") return "compact_lump";
  if (scenario == "evolve-q" || scenario == "evolve-strachan" || scenario == "verify-gauge") return "gaussian_packet";
  return "";
}

InitSpec with_presets(const InitSpec& in) {
  struct Preset {
    double amplitude, width, k, l, radius;
  };
  static const std::map<std::string, Preset> presets = {
      {"constant", {0, 0, 0, 0, 0}},
      {"lump", {0, 1.0, 0, 0, 0}},
      {"compact_lump", {0, 3.0, 0, 0, 4.0}},
      {"helix", {0.4, 0, 1.0, 0, 0}},
      {"helix_perturbed", {0.3, 1.5, 0.8, 0.4, 0}},
      {"small_perturbation", {0.2, 1.2, 0, 0, 0}},
      {"random_smooth", {0.8, 1.5, 0, 0, 0}},
      {"zero", {0, 0, 0, 0, 0}},
      {"plane_wave", {0.5, 0, 0.8, 0.5, 0}},
      {"flat_top_wave", {0.5, 4.0, 0.8, 0.5, 0}},
      {"gaussian_packet", {0.5, 1.2, 0.8, 0.5, 0}},
  };
  InitSpec out = in;
  const auto it = presets.find(in.kind);
  if (it == presets.end()) return out;
  const Preset& p = it->second;
  if (out.amplitude == 0.0) out.amplitude = p.amplitude;
  if (out.width == 0.0) out.width = p.width;
  if (out.k == 0.0) out.k = p.k;
  if (out.l == 0.0) out.l = p.l;
  if (out.radius == 0.0) out.radius = p.radius;
  return out;
}

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
  }
  if (!doc.is_object()) throw ConfigError({"config must be a JSON object"});

  std::vector<std::string> errs;
  check_object(doc, kTop, "", errs);
  for (const auto& [name, table] : kSections)
    if (doc.contains(name)) check_object(doc[name], table, name + ".", errs);
  for (const char* req : {"scenario", "output_dir"})
    if (!doc.contains(req)) errs.push_back(std::string("missing required key '") + req + "'");
  if (doc.contains("lambda_samples")) {
    json kept = json::array();
    int i = 0;
    for (auto& s : doc["lambda_samples"]) {
      const std::string path = "lambda_samples[" + std::to_string(i++) + "]";
      if (!s.is_object()) {
        errs.push_back("type mismatch at '" + path + "': expected object, got " + s.type_name());
        continue;
      }
      check_object(s, {{"re", Kind::Number}, {"im", Kind::Number}}, path + ".", errs);
      kept.push_back(s);
    }
    doc["lambda_samples"] = kept;
  }

  ScenarioConfig c;
  read(doc, "scenario", c.scenario);
  read(doc, "output_dir", c.output_dir);
  const json empty = json::object();
  const json& g = doc.contains("grid") ? doc["grid"] : empty;
  read(g, "nx", c.grid.nx);
  read(g, "ny", c.grid.ny);
  read(g, "dx", c.grid.dx);
  read(g, "dy", c.grid.dy);
  read(g, "x0", c.grid.x0);
  read(g, "y0", c.grid.y0);
  const json& p = doc.contains("params") ? doc["params"] : empty;
  read(p, "b", c.params.b);
  read(p, "e", c.params.e);
  read(p, "kappa", c.params.kappa);
  read(p, "n", c.params.n);
  read(p, "a", c.params.a);
  read(p, "c_re", c.params.c_re);
  read(p, "c_im", c.params.c_im);
  const json& in = doc.contains("init") ? doc["init"] : empty;
  c.init.kind = default_kind(c.scenario);
  read(in, "kind", c.init.kind);
  read(in, "amplitude", c.init.amplitude);
  read(in, "width", c.init.width);
  read(in, "k", c.init.k);
  read(in, "l", c.init.l);
  read(in, "radius", c.init.radius);
  read(in, "seed", c.init.seed);
  c.init = with_presets(c.init);
  const json& t = doc.contains("time") ? doc["time"] : empty;
  read(t, "t_end", c.time.t_end);
  read(t, "dt", c.time.dt);
  read(t, "snapshot_every", c.time.snapshot_every);
  const json& tol = doc.contains("tolerances") ? doc["tolerances"] : empty;
  read(tol, "ratio_min", c.tol.ratio_min);
  read(tol, "order_min", c.tol.order_min);
  read(tol, "residual_max", c.tol.residual_max);
  read(tol, "drift_max", c.tol.drift_max);
  if (doc.contains("lambda_samples")) {
    c.lambda_samples.clear();
    for (const auto& s : doc["lambda_samples"]) c.lambda_samples.emplace_back(s.value("re", 0.0), s.value("im", 0.0));
  }

  // semantic checks
  if (doc.contains("scenario") && !contains(kScenarios, c.scenario)) errs.push_back("scenario: unknown scenario '" + c.scenario + "'");
  if (doc.contains("output_dir") && c.output_dir.empty()) errs.push_back("output_dir: must not be empty");
  if (c.grid.nx < Grid2D::kMinNodes || c.grid.ny < Grid2D::kMinNodes)
    errs.push_back("grid: nx and ny must be at least " + std::to_string(Grid2D::kMinNodes));
  if (!(c.grid.dx > 0.0) || !(c.grid.dy > 0.0)) errs.push_back("grid: dx and dy must be positive");
  if (c.params.b == 0.0) errs.push_back("params.b: parameter b must be nonzero");
  if (c.params.e == -1.0)
    errs.push_back("params.e: E = -1 is out of scope in this build (see README, Scope)");
  else if (c.params.e != 1.0)
    errs.push_back("params.e: E must be +1");
  if (c.params.n < 1) errs.push_back("params.n: must be a positive integer");
  if (c.time.t_end < 0.0) errs.push_back("time.t_end: must not be negative");
  if (c.time.dt < 0.0) errs.push_back("time.dt: must not be negative");
  if (c.time.snapshot_every < 0) errs.push_back("time.snapshot_every: must not be negative");
  const bool spin_sc = c.scenario == "evolve-spin" || c.scenario == "verify-lakshmanan" || c.scenario == "invariants-drift";
  const bool q_sc = c.scenario == "evolve-q" || c.scenario == "evolve-strachan" || c.scenario == "verify-gauge";
  if (spin_sc && !is_spin_kind(c.init.kind)) errs.push_back("init.kind: '" + c.init.kind + "' is not a spin initial condition");
  if (q_sc && !is_q_kind(c.init.kind)) errs.push_back("init.kind: '" + c.init.kind + "' is not a q initial condition");
  if (c.scenario == "verify-lax" && !is_spin_kind(c.init.kind) && !is_q_kind(c.init.kind))
    errs.push_back("init.kind: unknown kind '" + c.init.kind + "'");
  if (doc.contains("lambda_samples") && c.lambda_samples.empty()) errs.push_back("lambda_samples: need at least one sample");
  if (!errs.empty()) throw ConfigError(errs);
  return c;
}

json to_json(const ScenarioConfig& c) {
  json j;
  j["scenario"] = c.scenario;
  j["grid"] = {{"nx", c.grid.nx}, {"ny", c.grid.ny}, {"dx", c.grid.dx}, {"dy", c.grid.dy}, {"x0", c.grid.x0}, {"y0", c.grid.y0}};
  j["params"] = {{"b", c.params.b},         {"e", c.params.e}, {"kappa", c.params.kappa}, {"n", c.params.n},
                 {"a", c.params.a},         {"c_re", c.params.c_re}, {"c_im", c.params.c_im}};
  j["init"] = {{"kind", c.init.kind}, {"amplitude", c.init.amplitude}, {"width", c.init.width}, {"k", c.init.k},
               {"l", c.init.l},       {"radius", c.init.radius},       {"seed", c.init.seed}};
  j["time"] = {{"t_end", c.time.t_end}, {"dt", c.time.dt}, {"snapshot_every", c.time.snapshot_every}};
  j["lambda_samples"] = json::array();
  for (cplx l : c.lambda_samples) j["lambda_samples"].push_back({{"re", l.real()}, {"im", l.imag()}});
  j["output_dir"] = c.output_dir;
  j["tolerances"] = {{"ratio_min", c.tol.ratio_min},
                     {"order_min", c.tol.order_min},
                     {"residual_max", c.tol.residual_max},
                     {"drift_max", c.tol.drift_max}};
  return j;
}

json config_schema() {
  json s;
  s["required"] = {"scenario", "output_dir"};
  s["scenarios"] = kScenarios;
  json keys;
  for (const auto& [k, kind] : kTop) keys[k] = kind_name(kind);
  s["keys"] = keys;
  for (const auto& [name, table] : kSections) {
    json sec;
    for (const auto& [k, kind] : table) sec[k] = kind_name(kind);
    s["sections"][name] = sec;
  }
  s["sections"]["lambda_samples[]"] = {{"re", "number"}, {"im", "number"}};
  s["init_kinds"] = {{"spin", kSpinKinds}, {"q", kQKinds}};
  ScenarioConfig d;
  d.scenario = "<scenario>";
  d.output_dir = "<dir>";
  s["defaults"] = to_json(d);
  return s;
}

}  // namespace spinlab::cli

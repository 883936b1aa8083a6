// Copyright 2026 The liokry Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "liokry/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "liokry/errors.hpp"

namespace liokry {
namespace {

using Json = nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config key '" + path + "': " + what);
}

// Read-only view of one JSON object that tracks which keys were consumed.
class ObjectReader {
 public:
  ObjectReader(const Json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }
  std::string path(const std::string& key) const { return join(path_, key); }

  const Json& at(const std::string& key) {
    seen_.insert(key);
    return node_.at(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_number()) fail(path(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path(key), "must be finite");
    return x;
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_number_integer()) fail(path(key), "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
      fail(path(key), "integer out of range");
    return v.get<std::int64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_boolean()) fail(path(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const Json& v = at(key);
    if (!v.is_string()) fail(path(key), "expected a string");
    return v.get<std::string>();
  }

  void reject_unknown() const {
    for (const auto& item : node_.items())
      if (!seen_.count(item.key())) fail(path(item.key()), "unknown key");
  }

 private:
  const Json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

int bounded_int(ObjectReader& r, const std::string& key, int fallback, int lo, int hi) {
  const auto v = r.integer(key, fallback);
  if (v < lo || v > hi) {
    std::ostringstream os;
    os << "must lie in [" << lo << ", " << hi << "], got " << v;
    fail(r.path(key), os.str());
  }
  return static_cast<int>(v);
}

double positive(ObjectReader& r, const std::string& key, double fallback) {
  const double v = r.number(key, fallback);
  if (!(v > 0.0)) fail(r.path(key), "must be > 0");
  return v;
}

double non_negative(ObjectReader& r, const std::string& key, double fallback) {
  const double v = r.number(key, fallback);
  if (v < 0.0) fail(r.path(key), "must be >= 0");
  return v;
}

// Parses and rejects duplicate keys at any depth.
Json parse_strict(std::string_view text) {
  std::vector<std::set<std::string>> keys;
  std::vector<std::string> paths;
  std::string pending_key;
  auto callback = [&](int, Json::parse_event_t event, Json& parsed) {
    switch (event) {
      case Json::parse_event_t::object_start:
        keys.emplace_back();
        paths.push_back(paths.empty() ? std::string() : join(paths.back(), pending_key));
        break;
      case Json::parse_event_t::object_end:
        keys.pop_back();
        paths.pop_back();
        break;
      case Json::parse_event_t::key: {
        pending_key = parsed.get<std::string>();
        if (!keys.back().insert(pending_key).second) fail(join(paths.back(), pending_key), "duplicate key");
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return Json::parse(text.begin(), text.end(), callback);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

SweepRange parse_sweep(ObjectReader& root) {
  if (!root.has("g_sweep")) fail("g_sweep", "required key is missing");
  ObjectReader r(root.at("g_sweep"), "g_sweep");
  SweepRange s;
  if (!r.has("start")) fail(r.path("start"), "required key is missing");
  if (!r.has("stop")) fail(r.path("stop"), "required key is missing");
  s.start = non_negative(r, "start", 0.0);
  s.stop = non_negative(r, "stop", 0.0);
  s.steps = bounded_int(r, "steps", 1, 1, 100000);
  const std::string scale = r.string("scale", "linear");
  if (scale == "linear") {
    s.scale = SweepScale::linear;
  } else if (scale == "log") {
    s.scale = SweepScale::log;
    if (!(s.start > 0.0)) fail(r.path("start"), "log sweeps need start > 0");
    if (!(s.stop > 0.0)) fail(r.path("stop"), "log sweeps need stop > 0");
  } else {
    fail(r.path("scale"), "expected \"linear\" or \"log\"");
  }
  r.reject_unknown();
  return s;
}

KrylovRunSettings parse_krylov(ObjectReader& root) {
  KrylovRunSettings k;
  if (!root.has("krylov")) return k;
  ObjectReader r(root.at("krylov"), "krylov");
  k.dim_d = bounded_int(r, "D", k.dim_d, 1, 10000);
  if (r.has("tau") && r.has("tau_list")) fail(r.path("tau_list"), "give either tau or tau_list, not both");
  if (r.has("tau")) k.tau_list = {positive(r, "tau", 5.0)};
  if (r.has("tau_list")) {
    const Json& list = r.at("tau_list");
    if (!list.is_array()) fail(r.path("tau_list"), "expected an array of numbers");
    if (list.empty()) fail(r.path("tau_list"), "must be nonempty");
    k.tau_list.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string item = r.path("tau_list") + "[" + std::to_string(i) + "]";
      if (!list[i].is_number()) fail(item, "expected a number");
      const double t = list[i].get<double>();
      if (!(t > 0.0) || !std::isfinite(t)) fail(item, "must be a finite number > 0");
      k.tau_list.push_back(t);
    }
  }
  k.threshold = r.number("threshold", k.threshold);
  if (!(k.threshold > 0.0 && k.threshold < 1.0)) fail(r.path("threshold"), "must lie in (0, 1)");
  const std::string method = r.string("method", std::string(to_string(k.method)));
  try {
    k.method = gevp_method_from_string(method);
  } catch (const PreconditionError&) {
    fail(r.path("method"), "expected \"projected_generator\" or \"transfer_matrix\"");
  }
  k.repetitions = bounded_int(r, "repetitions", k.repetitions, 1, 1000);
  const auto seed = r.integer("seed", static_cast<std::int64_t>(k.seed));
  if (seed < 0) fail(r.path("seed"), "must be >= 0");
  k.seed = static_cast<std::uint64_t>(seed);
  k.n_pairs = bounded_int(r, "n_pairs", k.n_pairs, 1, 100000);
  const std::string sampler = r.string("sampler", "symmetry_broken");
  if (sampler == "symmetry_broken") {
    k.sampler = SamplerBasis::symmetry_broken;
  } else if (sampler == "eigenstates") {
    k.sampler = SamplerBasis::eigenstates;
  } else {
    fail(r.path("sampler"), "expected \"symmetry_broken\" or \"eigenstates\"");
  }
  r.reject_unknown();
  return k;
}

OutputSettings parse_outputs(ObjectReader& root) {
  OutputSettings o;
  if (!root.has("outputs")) return o;
  ObjectReader r(root.at("outputs"), "outputs");
  o.directory = r.string("directory", o.directory);
  if (o.directory.empty()) fail(r.path("directory"), "must be nonempty");
  if (r.has("formats")) {
    const Json& list = r.at("formats");
    if (!list.is_array() || list.empty()) fail(r.path("formats"), "expected a nonempty array of strings");
    o.formats.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string item = r.path("formats") + "[" + std::to_string(i) + "]";
      if (!list[i].is_string()) fail(item, "expected a string");
      const auto f = list[i].get<std::string>();
      if (f != "csv" && f != "json") fail(item, "expected \"csv\" or \"json\"");
      if (std::find(o.formats.begin(), o.formats.end(), f) == o.formats.end()) o.formats.push_back(f);
    }
    if (std::find(o.formats.begin(), o.formats.end(), "csv") == o.formats.end())
      fail(r.path("formats"), "must include \"csv\"");
  }
  o.wall_time = r.boolean("wall_time", o.wall_time);
  r.reject_unknown();
  return o;
}

std::vector<WignerRequest> parse_wigner_requests(ObjectReader& root) {
  std::vector<WignerRequest> out;
  if (!root.has("wigner_requests")) return out;
  const Json& list = root.at("wigner_requests");
  if (!list.is_array()) fail("wigner_requests", "expected an array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    ObjectReader r(list[i], "wigner_requests[" + std::to_string(i) + "]");
    WignerRequest w;
    if (!r.has("g")) fail(r.path("g"), "required key is missing");
    w.g = non_negative(r, "g", 0.0);
    const std::string state = r.string("state", "steady");
    try {
      w.state = wigner_state_from_string(state);
    } catch (const PreconditionError&) {
      fail(r.path("state"), "expected \"steady\" or \"slow\"");
    }
    const std::string source = r.string("source", "oracle");
    if (source == "oracle") {
      w.source = WignerSource::oracle;
    } else if (source == "krylov") {
      w.source = WignerSource::krylov;
      if (w.state != WignerStateKind::slow) fail(r.path("source"), "krylov reconstruction is available for slow only");
    } else {
      fail(r.path("source"), "expected \"oracle\" or \"krylov\"");
    }
    r.reject_unknown();
    out.push_back(w);
  }
  return out;
}

PhaseSpaceGrid parse_grid(ObjectReader& root) {
  PhaseSpaceGrid g;
  if (!root.has("wigner_grid")) return g;
  ObjectReader r(root.at("wigner_grid"), "wigner_grid");
  g.x_points = bounded_int(r, "x_points", g.x_points, 2, 2001);
  g.p_points = bounded_int(r, "p_points", g.p_points, 2, 2001);
  g.x_min = r.number("x_min", g.x_min);
  g.x_max = r.number("x_max", g.x_max);
  g.p_min = r.number("p_min", g.p_min);
  g.p_max = r.number("p_max", g.p_max);
  if (!(g.x_max > g.x_min)) fail(r.path("x_max"), "must exceed x_min");
  if (!(g.p_max > g.p_min)) fail(r.path("p_max"), "must exceed p_min");
  r.reject_unknown();
  return g;
}

}  // namespace

std::vector<double> SweepRange::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) return {start};
  for (int k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) / (steps - 1);
    out.push_back(scale == SweepScale::linear ? start + (stop - start) * t
                                              : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * t));
  }
  // Endpoints exactly as configured, free of exp/log rounding.
  out.front() = start;
  out.back() = stop;
  return out;
}

KrylovConfig RunConfig::krylov_config(double tau) const {
  KrylovConfig k;
  k.dim_d = krylov.dim_d;
  k.tau = tau;
  k.threshold = krylov.threshold;
  k.method = krylov.method;
  return k;
}

std::string_view to_string(WignerStateKind kind) { return kind == WignerStateKind::steady ? "steady" : "slow"; }

WignerStateKind wigner_state_from_string(std::string_view name) {
  if (name == "steady") return WignerStateKind::steady;
  if (name == "slow") return WignerStateKind::slow;
  throw PreconditionError("unknown Wigner state '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text) {
  const Json doc = parse_strict(text);
  ObjectReader r(doc, "");
  RunConfig cfg;
  cfg.n_levels = bounded_int(r, "n_levels", cfg.n_levels, 2, 200);
  cfg.kappa_1ph = non_negative(r, "kappa_1ph", cfg.kappa_1ph);
  cfg.delta = r.number("delta", cfg.delta);
  cfg.kerr = non_negative(r, "kerr", cfg.kerr);
  cfg.g_sweep = parse_sweep(r);
  cfg.krylov = parse_krylov(r);
  cfg.outputs = parse_outputs(r);
  cfg.oracle_enabled = r.boolean("oracle_enabled", cfg.oracle_enabled);
  cfg.wigner_requests = parse_wigner_requests(r);
  cfg.wigner_grid = parse_grid(r);
  r.reject_unknown();
  if (2 * cfg.krylov.n_pairs > cfg.n_levels)
    fail("krylov.n_pairs", "needs 2 * n_pairs <= n_levels = " + std::to_string(cfg.n_levels));
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file '" + path.string() + "'");
  return parse_config(buf.str());
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["n_levels"] = cfg.n_levels;
  j["kappa_1ph"] = cfg.kappa_1ph;
  j["delta"] = cfg.delta;
  j["kerr"] = cfg.kerr;
  j["g_sweep"] = {{"start", cfg.g_sweep.start},
                  {"stop", cfg.g_sweep.stop},
                  {"steps", cfg.g_sweep.steps},
                  {"scale", cfg.g_sweep.scale == SweepScale::linear ? "linear" : "log"}};
  j["krylov"] = {{"D", cfg.krylov.dim_d},
                 {"tau_list", cfg.krylov.tau_list},
                 {"threshold", cfg.krylov.threshold},
                 {"method", std::string(to_string(cfg.krylov.method))},
                 {"repetitions", cfg.krylov.repetitions},
                 {"seed", cfg.krylov.seed},
                 {"n_pairs", cfg.krylov.n_pairs},
                 {"sampler", cfg.krylov.sampler == SamplerBasis::symmetry_broken ? "symmetry_broken" : "eigenstates"}};
  j["outputs"] = {
      {"directory", cfg.outputs.directory}, {"formats", cfg.outputs.formats}, {"wall_time", cfg.outputs.wall_time}};
  j["oracle_enabled"] = cfg.oracle_enabled;
  auto requests = nlohmann::ordered_json::array();
  for (const auto& w : cfg.wigner_requests)
    requests.push_back({{"g", w.g},
                        {"state", std::string(to_string(w.state))},
                        {"source", w.source == WignerSource::oracle ? "oracle" : "krylov"}});
  j["wigner_requests"] = requests;
  const auto& g = cfg.wigner_grid;
  j["wigner_grid"] = {{"x_points", g.x_points}, {"p_points", g.p_points}, {"x_min", g.x_min},
                      {"x_max", g.x_max},       {"p_min", g.p_min},       {"p_max", g.p_max}};
  return j;
}

}  // namespace liokry

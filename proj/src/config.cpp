#include "nshd/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace nshd {

using nlohmann::json;

namespace {

int line_of(std::string_view text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

void reject_unknown(const json& obj, const std::string& prefix, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(prefix + key, "unknown key");
  }
}

const json& object_at(const json& parent, const std::string& key, const std::string& path) {
  if (!parent.contains(key)) throw ConfigError(path, "missing section");
  const json& v = parent.at(key);
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  return v;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<std::int64_t>();
}

bool boolean(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

std::string shortest(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

void parse_alpha(const json& v, RunConfig& cfg) {
  const std::string path = "solver.alpha";
  if (v.is_string()) {
    try {
      const Rational r = Rational::parse(v.get<std::string>());
      cfg.alpha_exact = r;
      cfg.solver.alpha = r.to_double();
    } catch (const InvalidArgument& e) {
      throw ConfigError(path, e.what());
    }
    return;
  }
  cfg.solver.alpha = number(v, path);
  // A number written as a short decimal is recovered exactly, so "1.25"
  // classifies as critical in 3D without float comparison.
  try {
    cfg.alpha_exact = Rational::parse(shortest(cfg.solver.alpha));
  } catch (const InvalidArgument&) {
    cfg.alpha_exact.reset();
  }
}

void parse_solver(const json& s, RunConfig& cfg) {
  const std::string p = "solver.";
  reject_unknown(s, p,
                 {"n", "N", "alpha", "nu", "t_end", "cfl_safety", "dt_max", "inviscid",
                  "diag_stride", "moment_orders", "sobolev_orders"});
  auto& sc = cfg.solver;
  for (const char* required : {"n", "N", "t_end"}) {
    if (!s.contains(required)) throw ConfigError(p + required, "missing required key");
  }
  sc.n = static_cast<int>(integer(s.at("n"), p + "n"));
  sc.N = static_cast<int>(integer(s.at("N"), p + "N"));
  sc.t_end = number(s.at("t_end"), p + "t_end");
  if (s.contains("inviscid")) sc.inviscid = boolean(s.at("inviscid"), p + "inviscid");
  if (s.contains("alpha")) {
    parse_alpha(s.at("alpha"), cfg);
  } else if (!sc.inviscid) {
    throw ConfigError(p + "alpha", "missing required key");
  }
  if (s.contains("nu")) sc.nu = number(s.at("nu"), p + "nu");
  if (s.contains("cfl_safety")) sc.cfl_safety = number(s.at("cfl_safety"), p + "cfl_safety");
  if (s.contains("dt_max")) sc.dt_max = number(s.at("dt_max"), p + "dt_max");
  if (s.contains("diag_stride")) sc.diag_stride = static_cast<int>(integer(s.at("diag_stride"), p + "diag_stride"));
  if (s.contains("moment_orders")) {
    const json& m = s.at("moment_orders");
    if (!m.is_array()) throw ConfigError(p + "moment_orders", "expected an array of integers");
    sc.moment_orders.clear();
    for (const auto& x : m) sc.moment_orders.push_back(static_cast<int>(integer(x, p + "moment_orders")));
  }
  if (s.contains("sobolev_orders")) {
    const json& b = s.at("sobolev_orders");
    if (!b.is_array()) throw ConfigError(p + "sobolev_orders", "expected an array of numbers");
    sc.sobolev_orders.clear();
    for (const auto& x : b) sc.sobolev_orders.push_back(number(x, p + "sobolev_orders"));
  }
}

void parse_initial(const json& s, RunConfig& cfg) {
  const std::string p = "initial_condition.";
  reject_unknown(s, p, {"kind", "amplitude", "seed", "band", "spectrum_slope"});
  auto& ic = cfg.initial;
  if (!s.contains("kind")) throw ConfigError(p + "kind", "missing required key");
  if (!s.at("kind").is_string()) throw ConfigError(p + "kind", "expected a string");
  const std::string kind = s.at("kind").get<std::string>();
  if (kind == "taylor_green") {
    ic.kind = InitialConditionKind::taylor_green;
  } else if (kind == "random_band") {
    ic.kind = InitialConditionKind::random_band;
  } else {
    throw ConfigError(p + "kind", "expected \"taylor_green\" or \"random_band\", got \"" + kind + "\"");
  }
  if (s.contains("amplitude")) ic.amplitude = number(s.at("amplitude"), p + "amplitude");
  if (s.contains("seed")) {
    const json& v = s.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ConfigError(p + "seed", "expected a non-negative integer");
    }
    ic.seed = v.get<std::uint64_t>();
  }
  if (s.contains("band")) {
    const json& b = s.at("band");
    if (!b.is_array() || b.size() != 2) throw ConfigError(p + "band", "expected [k_min, k_max]");
    ic.k_min = static_cast<int>(integer(b[0], p + "band"));
    ic.k_max = static_cast<int>(integer(b[1], p + "band"));
  }
  if (s.contains("spectrum_slope")) ic.spectrum_slope = number(s.at("spectrum_slope"), p + "spectrum_slope");
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", e.what(), line_of(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!root.is_object()) throw ConfigError("", "top level must be an object");
  reject_unknown(root, "", {"schema_version", "solver", "initial_condition", "output_dir", "restart_from"});
  if (!root.contains("schema_version")) throw ConfigError("schema_version", "missing required key");
  if (integer(root.at("schema_version"), "schema_version") != kConfigSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version (expected " + std::to_string(kConfigSchemaVersion) + ")");
  }

  RunConfig cfg;
  parse_solver(object_at(root, "solver", "solver"), cfg);
  parse_initial(object_at(root, "initial_condition", "initial_condition"), cfg);
  if (root.contains("output_dir")) {
    if (!root.at("output_dir").is_string()) throw ConfigError("output_dir", "expected a string");
    cfg.output_dir = root.at("output_dir").get<std::string>();
  }
  if (root.contains("restart_from")) {
    if (!root.at("restart_from").is_string()) throw ConfigError("restart_from", "expected a string");
    cfg.restart_from = root.at("restart_from").get<std::string>();
  }

  try {
    cfg.solver.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("", std::string("solver.") + e.what());
  }
  try {
    cfg.initial.validate(*build_lattice(cfg.solver.n, cfg.solver.N));
  } catch (const InvalidArgument& e) {
    throw ConfigError("", std::string("initial_condition.") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

json to_json(const RunConfig& cfg) {
  const auto& s = cfg.solver;
  json solver = {{"n", s.n},
                 {"N", s.N},
                 {"nu", s.nu},
                 {"t_end", s.t_end},
                 {"cfl_safety", s.cfl_safety},
                 {"dt_max", s.dt_max},
                 {"inviscid", s.inviscid},
                 {"diag_stride", s.diag_stride},
                 {"moment_orders", s.moment_orders},
                 {"sobolev_orders", s.sobolev_orders}};
  if (cfg.alpha_exact) {
    solver["alpha"] = cfg.alpha_exact->str();
  } else {
    solver["alpha"] = s.alpha;
  }
  const auto& ic = cfg.initial;
  json initial = {{"kind", to_string(ic.kind)},
                  {"amplitude", ic.amplitude},
                  {"seed", ic.seed},
                  {"band", {ic.k_min, ic.k_max}},
                  {"spectrum_slope", ic.spectrum_slope}};
  json out = {{"schema_version", kConfigSchemaVersion}, {"solver", solver}, {"initial_condition", initial}};
  if (cfg.output_dir) out["output_dir"] = cfg.output_dir->string();
  if (cfg.restart_from) out["restart_from"] = cfg.restart_from->string();
  return out;
}

}  // namespace nshd

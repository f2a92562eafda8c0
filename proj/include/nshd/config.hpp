#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nshd/dynamics.hpp"
#include "nshd/errors.hpp"
#include "nshd/initial_conditions.hpp"
#include "nshd/rational.hpp"

namespace nshd {

inline constexpr int kConfigSchemaVersion = 1;

/// Invalid run configuration. `field` is a dotted path such as "solver.N";
/// `line` is set for syntax errors (1-based, 0 when unknown).
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0)
      : Error(describe(field, message, line)), field_(std::move(field)), line_(line) {}

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  static std::string describe(const std::string& field, const std::string& message, int line) {
    std::string s;
    if (line > 0) s += "line " + std::to_string(line) + ": ";
    if (!field.empty()) s += field + ": ";
    return s + message;
  }

  std::string field_;
  int line_;
};

struct RunConfig {
  SolverConfig solver;
  InitialConditionSpec initial;
  /// Exact alpha when the file gives it as a rational or a short decimal.
  std::optional<Rational> alpha_exact;
  std::optional<std::filesystem::path> output_dir;
  /// Start from a final checkpoint instead of the initial condition.
  std::optional<std::filesystem::path> restart_from;
};

/// Parses a JSON run configuration (schema_version 1). Unknown keys,
/// wrong types, and out-of-range values raise ConfigError.
///
///   {
///     "schema_version": 1,
///     "solver": {"n": 2, "N": 64, "alpha": "5/4", "nu": 1.0, "t_end": 1.0,
///                "cfl_safety": 0.5, "dt_max": 0.1, "inviscid": false,
///                "diag_stride": 10, "moment_orders": [0, 1, 2],
///                "sobolev_orders": [0, 1]},
///     "initial_condition": {"kind": "random_band", "amplitude": 1.0,
///                           "seed": 42, "band": [1, 4], "spectrum_slope": 0},
///     "output_dir": "runs/example",
///     "restart_from": "runs/previous/final.nshd"
///   }
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const RunConfig& cfg);

}  // namespace nshd

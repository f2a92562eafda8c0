#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nshd/dynamics.hpp"

namespace nshd {

/// Outcome of one named property: passes when value <= tolerance.
struct PropertyResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  /// Substring of a property name; empty runs every property.
  std::string filter;
  /// Applied to every solver the properties construct.
  FaultInjection fault;
};

struct VerifyReport {
  std::vector<PropertyResult> results;
  bool passed() const;
};

std::vector<std::string> property_names();

/// Runs the built-in property suite. Throws InvalidArgument when the
/// filter matches no property.
VerifyReport verify(const VerifyOptions& options);

nlohmann::json to_json(const VerifyReport& report);

}  // namespace nshd

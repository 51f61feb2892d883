#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfsense/model.hpp"
#include "rfsense/sweep.hpp"

namespace rfsense {

/// A parsed scenario document. `params.coop_rf` is only meaningful when
/// gamma2_rule is Fixed; use resolve() to obtain concrete parameters.
struct ScenarioConfig {
  SystemParams params;
  Gamma2Rule gamma2_rule = Gamma2Rule::Optimal;
  std::string echo;  // compact JSON of the merged document
};

/// Keys accepted at the top level of a scenario document.
const std::vector<std::string>& config_keys();

/// Parses a JSON scenario document and applies `key=value` overrides
/// (values parse as JSON, falling back to a plain string). Throws
/// ConfigurationError naming the offending line or key.
ScenarioConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {});

/// Reads the file (if any) and forwards to parse_config.
ScenarioConfig load_config(const std::optional<std::string>& path,
                           const std::vector<std::string>& overrides = {});

/// Parameters with Gamma2 fixed by the rule.
SystemParams resolve(const ScenarioConfig& cfg);

}  // namespace rfsense

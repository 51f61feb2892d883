#include "rfsense/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rfsense/errors.hpp"

namespace rfsense {

using nlohmann::json;

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "spec_version", "topology", "omega_lc",    "gamma_lc", "omega_1", "omega_2",
      "gamma_m",      "gamma_m1", "gamma_m2",    "kappa",    "delta",   "phi",
      "temperature",  "gamma1",   "gamma2",      "eta",      "zeta",    "epsilon",
      "beta",         "tau",      "bare_couplings", "perturbation_mode"};
  return keys;
}

namespace {

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// Where a key is defined: "line N" in the file, or the --set flag that set it.
class Locator {
 public:
  Locator(std::string_view text, std::vector<std::string> overridden)
      : text_(text), overridden_(std::move(overridden)) {}

  std::string where(const std::string& key) const {
    if (std::find(overridden_.begin(), overridden_.end(), key) != overridden_.end()) {
      return "--set " + key;
    }
    const auto pos = text_.find("\"" + key + "\"");
    if (pos == std::string_view::npos) return "key '" + key + "'";
    return "line " + std::to_string(line_of_offset(text_, pos)) + ", key '" + key + "'";
  }

 private:
  std::string_view text_;
  std::vector<std::string> overridden_;
};

[[noreturn]] void fail(const Locator& loc, const std::string& key, const std::string& msg) {
  throw ConfigurationError(loc.where(key) + ": " + msg);
}

double number(const json& doc, const Locator& loc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) fail(loc, key, "expected a number");
  return v.get<double>();
}

std::string text_value(const json& doc, const Locator& loc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_string()) fail(loc, key, "expected a string");
  return v.get<std::string>();
}

std::array<double, 2> pair_value(const json& v, const Locator& loc, const std::string& key) {
  if (v.is_number()) return {v.get<double>(), v.get<double>()};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(loc, key, "expected a number or a two-element array");
}

json parse_override_value(const std::string& raw) {
  try {
    return json::parse(raw);
  } catch (const json::parse_error&) {
    return json(raw);
  }
}

}  // namespace

ScenarioConfig parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  json doc = json::object();
  const bool blank = std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
  if (!blank) {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      std::ostringstream os;
      os << "line " << line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1)
         << ": malformed document (" << e.what() << ")";
      throw ConfigurationError(os.str());
    }
  }
  if (!doc.is_object()) throw ConfigurationError("line 1: top level must be an object");

  std::vector<std::string> overridden;
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigurationError("--set " + item + ": expected key=value");
    }
    const std::string key = item.substr(0, eq);
    doc[key] = parse_override_value(item.substr(eq + 1));
    overridden.push_back(key);
  }
  const Locator loc(text, overridden);

  const auto& keys = config_keys();
  for (const auto& [key, value] : doc.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail(loc, key, "unknown key");
  }
  if (doc.contains("spec_version")) {
    const json& v = doc["spec_version"];
    if (!v.is_number_integer() || v.get<int>() != 1) fail(loc, "spec_version", "must be 1");
  }
  if (doc.contains("eta") && doc.contains("zeta")) {
    fail(loc, doc.contains("zeta") ? "zeta" : "eta", "eta and zeta are mutually exclusive");
  }

  ScenarioConfig cfg;
  SystemParams& p = cfg.params;
  const auto has = [&doc](const char* k) { return doc.contains(k); };
  try {
    if (has("topology")) p.topology = topology_from_string(text_value(doc, loc, "topology"));
  } catch (const ConfigurationError& e) {
    fail(loc, "topology", e.what());
  }
  if (has("omega_1")) p.omega_1 = number(doc, loc, "omega_1");
  if (has("omega_2")) p.omega_2 = number(doc, loc, "omega_2");
  if (has("omega_lc")) {
    p.omega_lc = number(doc, loc, "omega_lc");
  } else if (p.topology == Topology::FourMode) {
    p.omega_lc = 0.5 * (p.omega_1 + p.omega_2);
  }
  if (has("gamma_lc")) p.gamma_lc = number(doc, loc, "gamma_lc");
  if (has("gamma_m")) p.gamma_m1 = p.gamma_m2 = number(doc, loc, "gamma_m");
  if (has("gamma_m1")) p.gamma_m1 = number(doc, loc, "gamma_m1");
  if (has("gamma_m2")) p.gamma_m2 = number(doc, loc, "gamma_m2");
  if (has("kappa")) p.kappa = number(doc, loc, "kappa");
  if (has("delta")) p.delta = number(doc, loc, "delta");
  if (has("phi")) p.phi = number(doc, loc, "phi");
  if (has("temperature")) p.temperature = number(doc, loc, "temperature");
  if (has("gamma1")) p.coop_optical = number(doc, loc, "gamma1");
  if (has("gamma2")) {
    const json& v = doc["gamma2"];
    if (v.is_number()) {
      cfg.gamma2_rule = Gamma2Rule::Fixed;
      p.coop_rf = v.get<double>();
    } else if (v == "opt") {
      cfg.gamma2_rule = Gamma2Rule::Optimal;
    } else if (v == "matched") {
      cfg.gamma2_rule = Gamma2Rule::Matched;
    } else {
      fail(loc, "gamma2", "expected a number, \"opt\" or \"matched\"");
    }
  }
  if (has("eta")) p.detection = Detection::efficiency(number(doc, loc, "eta"));
  if (has("zeta")) p.detection = Detection::noise_coefficient(number(doc, loc, "zeta"));
  if (has("epsilon")) p.epsilon = number(doc, loc, "epsilon");
  if (has("tau")) p.tau = number(doc, loc, "tau");
  if (has("beta")) {
    const json& v = doc["beta"];
    if (v.is_number()) {
      p.beta = cplx{v.get<double>(), 0.0};
    } else {
      const auto b = pair_value(v, loc, "beta");
      p.beta = cplx{b[0], b[1]};
    }
  }
  if (has("bare_couplings")) {
    const json& v = doc["bare_couplings"];
    if (!v.is_object()) fail(loc, "bare_couplings", "expected an object with optical/rf");
    for (const auto& [k, entry] : v.items()) {
      if (k == "optical") {
        p.bare.optical = pair_value(entry, loc, "bare_couplings");
      } else if (k == "rf") {
        p.bare.rf = pair_value(entry, loc, "bare_couplings");
      } else {
        fail(loc, "bare_couplings", "unknown entry '" + k + "'");
      }
    }
  }
  if (has("perturbation_mode")) {
    try {
      p.perturbation = perturbation_mode_from_string(text_value(doc, loc, "perturbation_mode"));
    } catch (const ConfigurationError& e) {
      fail(loc, "perturbation_mode", e.what());
    }
  }

  try {
    p.validate();
  } catch (const std::exception& e) {
    throw ConfigurationError(std::string("invalid scenario: ") + e.what());
  }
  cfg.echo = doc.dump();
  return cfg;
}

ScenarioConfig load_config(const std::optional<std::string>& path,
                           const std::vector<std::string>& overrides) {
  if (!path) return parse_config("", overrides);
  std::ifstream in(*path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot read config file '" + *path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

SystemParams resolve(const ScenarioConfig& cfg) {
  SystemParams p = cfg.params;
  p.coop_rf = gamma2_for_rule(p, cfg.gamma2_rule);
  return p;
}

}  // namespace rfsense

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rfsense/model.hpp"

namespace rfsense {

enum class AxisScale { Linear, Log };

struct Axis {
  std::string name;  // a name from parameter_names()
  double lo = 0.0;
  double hi = 1.0;
  int points = 2;
  AxisScale scale = AxisScale::Linear;

  /// Throws ConfigurationError for unordered ranges, fewer than 2 points,
  /// non-positive log bounds or unknown names.
  void validate() const;
  std::vector<double> values() const;
};

/// How Gamma2 is chosen at each grid point (after every other parameter,
/// including the topology of a quantity, has been fixed).
enum class Gamma2Rule {
  Fixed,    // keep the configured value
  Optimal,  // w = w_opt(xi)
  Matched,  // w = 1
};

std::string_view to_string(Gamma2Rule r);

struct SweepSpec {
  Axis axis1;
  std::optional<Axis> axis2;
  SystemParams base;
  Gamma2Rule gamma2_rule = Gamma2Rule::Fixed;
  /// Quantity names, optionally suffixed with a topology, e.g. "r[three_mode_low]".
  std::vector<std::string> quantities;
  /// Applied to every grid point after the axis values are set.
  std::function<void(SystemParams&)> adjust;
  int threads = 0;  // 0 = hardware concurrency
  void validate() const;
};

struct ScanRow {
  std::vector<double> coords;
  std::vector<double> values;
  bool stable = true;
  std::string error;
};

struct ScanResult {
  std::vector<std::string> axis_names;
  std::vector<std::string> quantity_names;
  std::vector<ScanRow> rows;  // axis2-major: axis1 varies fastest
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// Names accepted by set_parameter and as axis names.
const std::vector<std::string>& parameter_names();
const std::vector<std::string>& quantity_names();

/// Sets one scalar parameter. In the four-mode topology omega_1/omega_2 also
/// move omega_lc to their midpoint. eta/zeta switch the detection model.
void set_parameter(SystemParams& p, std::string_view name, double value);

/// Gamma2 implied by the rule for p (returns p.coop_rf for Fixed).
double gamma2_for_rule(const SystemParams& p, Gamma2Rule rule);

/// Evaluates one quantity (with optional "[topology]" suffix) at p.
/// Throws on invalid parameters or an unstable model.
double evaluate_quantity(const SystemParams& p, std::string_view quantity, Gamma2Rule rule);

ScanResult run_sweep(const SweepSpec& spec);

/// Short revision of the source tree this library was built from.
std::string_view build_revision();

}  // namespace rfsense

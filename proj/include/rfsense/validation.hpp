#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rfsense/scattering.hpp"

namespace rfsense {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

using DriftBuilder = std::function<DriftMatrix(const SystemParams&)>;

struct ValidationOptions {
  std::string filter;  // substring of check names; empty runs everything
  /// Drift-matrix builder used by the scattering checks (swap in a faulty
  /// one to confirm the checks can fail).
  DriftBuilder drift = [](const SystemParams& p) { return build_drift(p); };
};

const std::vector<std::string>& validation_check_names();

std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

}  // namespace rfsense

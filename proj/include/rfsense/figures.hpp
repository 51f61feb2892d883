#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfsense/config.hpp"
#include "rfsense/sweep.hpp"

namespace rfsense {

const std::vector<std::string>& figure_names();

/// One CSV produced by a figure. `suffix` is appended to the output stem
/// ("" for the main table, "_marker" for the nonreciprocal point).
struct FigureTable {
  std::string suffix;
  ScanResult table;
};

/// Computes the tables of a figure. `points` overrides the default grid size
/// (per axis for heatmaps). Throws ConfigurationError for unknown names.
std::vector<FigureTable> build_figure(std::string_view name, const ScenarioConfig& cfg,
                                      std::optional<int> points = {});

/// Default number of grid points (per axis) of a figure.
int default_points(std::string_view name);

/// Writes every table; `out` defaults to "<name>.csv". Returns the paths written.
std::vector<std::string> write_figure(std::string_view name, const ScenarioConfig& cfg,
                                      std::optional<std::string> out,
                                      std::optional<int> points = {});

}  // namespace rfsense

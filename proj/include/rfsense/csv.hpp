#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rfsense/sweep.hpp"

namespace rfsense {

/// Scientific notation with 17 significant digits, '.' separator regardless
/// of locale. Infinities and NaN print as inf, -inf, nan.
std::string format_number(double v);

/// Metadata lines ("# key: value"), header, then one row per scan point.
/// Coordinates and values are followed by a 0/1 "stable" column.
void write_csv(std::ostream& os, const ScanResult& result);

/// Minimal writer for ad-hoc tables with the same formatting rules.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void comment(std::string_view key, std::string_view value);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);

 private:
  std::ostream& os_;
};

}  // namespace rfsense

#include "rfsense/csv.hpp"

#include <charconv>
#include <cmath>

namespace rfsense {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

void CsvWriter::comment(std::string_view key, std::string_view value) {
  os_ << "# " << key << ": ";
  // Keep multi-line values inside the comment block.
  for (char c : value) {
    os_ << c;
    if (c == '\n') os_ << "# ";
  }
  os_ << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os_ << ',';
    os_ << columns[i];
  }
  os_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os_ << ',';
    os_ << format_number(values[i]);
  }
  os_ << '\n';
}

void write_csv(std::ostream& os, const ScanResult& result) {
  CsvWriter w(os);
  for (const auto& [key, value] : result.metadata) w.comment(key, value);
  std::vector<std::string> columns = result.axis_names;
  columns.insert(columns.end(), result.quantity_names.begin(), result.quantity_names.end());
  columns.emplace_back("stable");
  w.header(columns);
  for (const ScanRow& row : result.rows) {
    for (double c : row.coords) os << format_number(c) << ',';
    for (double v : row.values) os << format_number(v) << ',';
    os << (row.stable ? '1' : '0') << '\n';
  }
}

}  // namespace rfsense

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lpf {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}
  // throws std::invalid_argument when the row width differs from the header
  void add(std::vector<Cell> row);
};

enum class ReportFormat { Csv, Json };

ReportFormat parse_format(const std::string& name);

// Shortest decimal that parses back to the same double; nan, inf and -inf spelled out.
std::string format_number(double x);

void write_csv(const Table& t, std::ostream& os);
// Array of objects keyed by column; non-finite numbers become null.
void write_json(const Table& t, std::ostream& os);

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Empty path or "-" writes to stdout. Throws ReportError when the file cannot be written.
void emit_report(const Table& t, ReportFormat format, const std::string& path);

}  // namespace lpf

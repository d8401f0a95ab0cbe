#include "lpfourier/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace lpf {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("report row has " + std::to_string(row.size()) + " cells, header has " +
                                std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format '" + name + "' (csv or json)");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_number(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else return csv_field(v);
      },
      c);
}

}  // namespace

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v)) obj[t.columns[i]] = v;
              else obj[t.columns[i]] = nullptr;
            } else {
              obj[t.columns[i]] = v;
            }
          },
          row[i]);
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

void emit_report(const Table& t, ReportFormat format, const std::string& path) {
  std::ostringstream buf;
  if (format == ReportFormat::Csv) write_csv(t, buf);
  else write_json(t, buf);
  if (path.empty() || path == "-") {
    std::cout << buf.str() << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ReportError("cannot open " + path + " for writing");
  out << buf.str();
  out.flush();
  if (!out) throw ReportError("write to " + path + " failed");
}

}  // namespace lpf

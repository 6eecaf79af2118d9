#include "twinfock/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace twinfock {

namespace {

std::string cell_text(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  return std::get<std::string>(cell);
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) throw std::domain_error("format_number: NaN has no serialization");
  if (std::isinf(value)) {
    if (value < 0) throw std::domain_error("format_number: -inf has no serialization");
    return "inf";
  }
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << cell_text(row[c]);
    }
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["columns"] = table.columns;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    auto column = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      const Cell& cell = row[c];
      if (const auto* i = std::get_if<std::int64_t>(&cell)) {
        column.push_back(*i);
      } else if (const auto* d = std::get_if<double>(&cell)) {
        if (std::isinf(*d)) {
          column.push_back(format_number(*d));
        } else {
          // Round through the 12-digit text so JSON and CSV agree.
          column.push_back(std::strtod(format_number(*d).c_str(), nullptr));
        }
      } else {
        column.push_back(std::get<std::string>(cell));
      }
    }
    data[table.columns[c]] = std::move(column);
  }
  doc["data"] = std::move(data);
  out << doc.dump(2) << '\n';
}

Table read_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
  };
  Table table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line);
    if (table.columns.empty()) {
      table.columns = std::move(fields);
      continue;
    }
    if (fields.size() != table.columns.size()) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(table.columns.size()));
    }
    std::vector<Cell> row(fields.begin(), fields.end());
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw std::runtime_error("CSV input has no header row");
  return table;
}

}  // namespace twinfock

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace twinfock {

/// A cell in an output table. Doubles are written with 12 significant
/// digits; +inf is written as the token "inf".
using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double value);

/// Header row, comma separated, LF line endings.
void write_csv(const Table& table, std::ostream& out);

/// {"columns": [...], "data": {"<column>": [...], ...}} with infinities as "inf".
void write_json(const Table& table, std::ostream& out);

/// Reads a header + rows CSV as produced by write_csv. All cells come back
/// as strings. Throws std::runtime_error on ragged rows.
Table read_csv(std::istream& in);

}  // namespace twinfock

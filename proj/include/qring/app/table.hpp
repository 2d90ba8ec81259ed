#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qring::app {

/// Empty cell, integer, real or text.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Reals are always written with 17 significant digits.
  bool always_full_precision = false;

  /// Index of a column; throws std::out_of_range when absent.
  std::size_t column(const std::string& name) const;
};

enum class Format { csv, json };

Format parse_format(const std::string& name);

inline constexpr int kDefaultDigits = 6;
inline constexpr int kFullDigits = 17;

/// %.{digits}g, with nan and ±inf spelled out; identical input gives
/// identical bytes.
std::string format_real(double value, int digits);

/// Header line then one line per row. Empty cells are empty fields; text
/// containing a comma, quote or newline is quoted.
void write_csv(std::ostream& out, const Table& table, int digits);

/// Array of records keyed by column name. Reals are rounded to the same
/// digits as the CSV; non-finite reals and empty cells become null.
void write_json(std::ostream& out, const Table& table, int digits);

void write_table(std::ostream& out, const Table& table, Format format, bool full_precision);

}  // namespace qring::app

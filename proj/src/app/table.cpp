#include "qring/app/table.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <ostream>
#include <stdexcept>

#include "qring/app/usage_error.hpp"

namespace qring::app {

std::size_t Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("no column '" + name + "'");
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw UsageError("unknown format '" + name + "' (expected csv or json)");
}

std::string format_real(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

struct CsvCell {
  int digits;
  std::string operator()(std::monostate) const { return ""; }
  std::string operator()(long long v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_real(v, digits); }
  std::string operator()(const std::string& v) const { return csv_field(v); }
};

struct JsonCell {
  int digits;
  nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  nlohmann::ordered_json operator()(long long v) const { return v; }
  nlohmann::ordered_json operator()(double v) const {
    if (!std::isfinite(v)) return nullptr;
    return std::stod(format_real(v, digits));
  }
  nlohmann::ordered_json operator()(const std::string& v) const { return v; }
};

}  // namespace

void write_csv(std::ostream& out, const Table& table, int digits) {
  if (table.always_full_precision) digits = kFullDigits;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << std::visit(CsvCell{digits}, row[i]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table, int digits) {
  if (table.always_full_precision) digits = kFullDigits;
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      rec[table.columns[i]] = std::visit(JsonCell{digits}, row[i]);
    }
    records.push_back(std::move(rec));
  }
  out << records.dump(2) << '\n';
}

void write_table(std::ostream& out, const Table& table, Format format, bool full_precision) {
  const int digits = full_precision ? kFullDigits : kDefaultDigits;
  if (format == Format::json) {
    write_json(out, table, digits);
  } else {
    write_csv(out, table, digits);
  }
}

}  // namespace qring::app

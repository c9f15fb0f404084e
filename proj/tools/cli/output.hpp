#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace zcd::cli {

enum class Format { Table, Csv, Json };

Format parse_format(const std::string& s);
std::string extension(Format f);

/// Half away from zero, to `decimals` places.
double round_half_away(double x, int decimals);

struct Cell {
  std::variant<std::string, double, std::int64_t, bool> value;
  /// printf format for doubles in text output; JSON always gets the raw value.
  const char* fmt = "%.10g";
  /// Round half away from zero to one decimal before printing.
  bool round1 = false;

  Cell(std::string s) : value(std::move(s)) {}
  Cell(const char* s) : value(std::string(s)) {}
  Cell(double d, const char* f = "%.10g") : value(d), fmt(f) {}
  Cell(std::int64_t i) : value(i) {}
  Cell(int i) : value(static_cast<std::int64_t>(i)) {}
  Cell(std::uint64_t i) : value(static_cast<std::int64_t>(i)) {}
  Cell(bool b) : value(b) {}

  static Cell rounded(double d) {
    Cell c(d, "%.1f");
    c.round1 = true;
    return c;
  }

  std::string text() const;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Table> tables;
  std::vector<std::string> notes;

  void meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }
};

void render(const Report& report, Format format, std::ostream& os);

std::string fmt_double(double x, const char* fmt = "%.10g");

}  // namespace zcd::cli

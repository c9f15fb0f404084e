#include "cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace zcd::cli {

Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + s + "' (expected table, csv or json)");
}

std::string extension(Format f) {
  switch (f) {
    case Format::Table: return "txt";
    case Format::Csv: return "csv";
    case Format::Json: return "json";
  }
  return "txt";
}

double round_half_away(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(x * scale) / scale;
}

std::string fmt_double(double x, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

std::string Cell::text() const {
  if (const auto* s = std::get_if<std::string>(&value)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  const double d = std::get<double>(value);
  return fmt_double(round1 ? round_half_away(d, 1) : d, fmt);
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void render_text(const Report& r, std::ostream& os) {
  for (const auto& [k, v] : r.metadata) os << "# " << k << ": " << v << "\n";
  for (const Table& t : r.tables) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
    for (const auto& row : t.rows) {
      auto& line = cells.emplace_back();
      for (std::size_t c = 0; c < row.size(); ++c) {
        line.push_back(row[c].text());
        width[c] = std::max(width[c], line.back().size());
      }
    }
    os << "\n[" << t.name << "]\n";
    auto emit = [&](const std::vector<std::string>& line) {
      std::string s;
      for (std::size_t c = 0; c < line.size(); ++c) {
        if (c > 0) s += "  ";
        s += line[c];
        if (c + 1 < line.size()) s.append(width[c] - line[c].size(), ' ');
      }
      os << s << "\n";
    };
    emit(t.columns);
    for (const auto& line : cells) emit(line);
  }
  if (!r.notes.empty()) os << "\n";
  for (const auto& n : r.notes) os << n << "\n";
}

void render_csv(const Report& r, std::ostream& os) {
  for (const auto& [k, v] : r.metadata) os << "# " << k << "=" << v << "\n";
  for (const auto& n : r.notes) os << "# note: " << n << "\n";
  const bool many = r.tables.size() > 1;
  for (const Table& t : r.tables) {
    if (many) os << "# table=" << t.name << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_field(t.columns[c]);
    os << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(row[c].text());
      os << "\n";
    }
  }
}

void render_json(const Report& r, std::ostream& os) {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.metadata) doc["metadata"][k] = v;
  doc["tables"] = nlohmann::ordered_json::object();
  for (const Table& t : r.tables) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < row.size(); ++c) {
        std::visit([&](const auto& v) { obj[t.columns[c]] = v; }, row[c].value);
      }
      rows.push_back(std::move(obj));
    }
    doc["tables"][t.name] = std::move(rows);
  }
  doc["notes"] = r.notes;
  os << doc.dump(2) << "\n";
}

}  // namespace

void render(const Report& report, Format format, std::ostream& os) {
  switch (format) {
    case Format::Table: render_text(report, os); break;
    case Format::Csv: render_csv(report, os); break;
    case Format::Json: render_json(report, os); break;
  }
}

}  // namespace zcd::cli

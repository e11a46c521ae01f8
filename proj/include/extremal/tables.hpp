#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace extremal {

inline std::string format_decimal(double v, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Plain string table; the emitters assume cell values contain no commas or
// pipes (all producers in this project guarantee that).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

inline std::string to_csv(const Table& t) {
  std::string out;
  auto emit_row = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  };
  emit_row(t.columns);
  for (const auto& r : t.rows) emit_row(r);
  return out;
}

inline std::string to_markdown(const Table& t) {
  std::string out;
  auto emit_row = [&out](const std::vector<std::string>& row) {
    out += '|';
    for (const auto& c : row) {
      out += ' ';
      out += c.empty() ? "-" : c;
      out += " |";
    }
    out += '\n';
  };
  emit_row(t.columns);
  out += '|';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += "---|";
  out += '\n';
  for (const auto& r : t.rows) emit_row(r);
  return out;
}

inline std::string to_json_text(const Table& t) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < t.columns.size() && i < r.size(); ++i) obj[t.columns[i]] = r[i];
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

inline std::string render(const Table& t, const std::string& format) {
  if (format == "csv") return to_csv(t);
  if (format == "md") return to_markdown(t);
  if (format == "json") return to_json_text(t);
  throw std::invalid_argument("unknown table format: " + format);
}

}  // namespace extremal

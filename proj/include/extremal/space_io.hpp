#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "extremal/errors.hpp"
#include "extremal/space.hpp"

namespace extremal {

namespace detail {

inline std::string line_position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline Rational json_rational(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    auto r = parse_rational(v.get<std::string>());
    if (!r) throw ConfigError(where + ": cannot parse rational \"" + v.get<std::string>() + "\"");
    return *r;
  }
  if (v.is_number_float())
    throw ConfigError(where + ": non-integer JSON numbers are inexact; write rationals as \"p/q\"");
  throw ConfigError(where + ": expected an integer or a \"p/q\" string");
}

}  // namespace detail

// Space file schema:
//   {"labels": [...], "dist": [[...], ...], "weight": [...]}
// where rationals appear as integers or "p/q" strings. The parsed space is
// validated against the full set of metric/measure axioms.
inline FiniteSpace space_from_json_text(const std::string& text, const std::string& source_name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source_name + ": JSON parse error at " +
                      detail::line_position(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("labels") || !doc.contains("dist") ||
      !doc.contains("weight"))
    throw ConfigError(source_name + ": expected an object with labels, dist, weight");

  std::vector<std::string> labels;
  for (const auto& l : doc["labels"]) {
    if (!l.is_string()) throw ConfigError(source_name + ": labels must be strings");
    labels.push_back(l.get<std::string>());
  }

  std::vector<std::vector<Rational>> dist;
  std::size_t row_idx = 0;
  for (const auto& row : doc["dist"]) {
    std::vector<Rational> r;
    std::size_t col_idx = 0;
    for (const auto& v : row) {
      r.push_back(detail::json_rational(
          v, source_name + ": dist[" + std::to_string(row_idx) + "][" + std::to_string(col_idx) +
                 "]"));
      ++col_idx;
    }
    dist.push_back(std::move(r));
    ++row_idx;
  }

  std::vector<Rational> weight;
  std::size_t w_idx = 0;
  for (const auto& v : doc["weight"]) {
    weight.push_back(
        detail::json_rational(v, source_name + ": weight[" + std::to_string(w_idx) + "]"));
    ++w_idx;
  }

  try {
    return FiniteSpace::from_matrix(std::move(labels), std::move(dist), std::move(weight));
  } catch (const SpaceValidationError& e) {
    throw SpaceValidationError(source_name + ": " + e.what());
  }
}

inline FiniteSpace load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open space file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return space_from_json_text(buf.str(), path);
}

inline nlohmann::ordered_json space_to_json(const FiniteSpace& space) {
  nlohmann::ordered_json doc;
  doc["labels"] = space.labels();
  auto rational_out = [](const Rational& q) -> nlohmann::ordered_json {
    if (rational_den(q) == 1) return rational_num(q).convert_to<long long>();
    return to_fraction_string(q);
  };
  auto& dist = doc["dist"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < space.size(); ++j) row.push_back(rational_out(space.distance(i, j)));
    dist.push_back(std::move(row));
  }
  auto& w = doc["weight"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < space.size(); ++i) w.push_back(to_fraction_string(space.weight(i)));
  return doc;
}

inline void save_space(const FiniteSpace& space, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write space file: " + path);
  out << space_to_json(space).dump(2) << "\n";
}

}  // namespace extremal

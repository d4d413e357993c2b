#pragma once

// JSON and inline text forms.
//   Dist:  {"masses": ["1/6", "1/3", "1/2"]}
//   Joint: {"rows": [["1/4", "1/4"], ["1/2", "0"]]}
// Entries are "num/den" strings, decimal strings or JSON integers.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dist.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace mincoupling {

namespace detail {

inline Rational rational_from_json(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(BigInt(v.get<long long>()));
  throw ParseError(where + ": expected a rational string or an integer");
}

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// make_dist validation, with the source named in the message.
inline void check_masses(const std::vector<Rational>& masses, const std::string& source) {
  if (masses.empty()) throw ParseError(source + ": no masses");
  Rational total = 0;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] < 0) throw NegativeMass(source + ": entry " + std::to_string(i) + " = " + to_string(masses[i]));
    total += masses[i];
  }
  if (total != 1) throw NotNormalized(source + ": sum is " + to_string(total));
}

inline std::vector<Rational> parse_list(std::string_view text, const std::string& source) {
  std::vector<Rational> out;
  const auto parts = split(text, ',');
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      out.push_back(parse_rational(parts[i]));
    } catch (const ParseError& e) {
      throw ParseError(source + ": entry " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace detail

inline nlohmann::json to_json(const Dist& p) {
  nlohmann::json masses = nlohmann::json::array();
  for (const auto& r : p.masses()) masses.push_back(to_string(r));
  return {{"masses", masses}};
}

inline nlohmann::json to_json(const Joint& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < s.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& r : s.row(i)) row.push_back(to_string(r));
    rows.push_back(row);
  }
  return {{"rows", rows}};
}

inline Dist dist_from_json(const nlohmann::json& j, const std::string& source = "json") {
  if (!j.is_object() || !j.contains("masses") || !j["masses"].is_array()) {
    throw ParseError(source + ": expected {\"masses\": [...]}");
  }
  std::vector<Rational> masses;
  for (std::size_t i = 0; i < j["masses"].size(); ++i) {
    masses.push_back(detail::rational_from_json(j["masses"][i], source + ": masses[" + std::to_string(i) + "]"));
  }
  detail::check_masses(masses, source);
  return Dist(std::move(masses));
}

inline Joint joint_from_json(const nlohmann::json& j, const std::string& source = "json") {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array() || j["rows"].empty()) {
    throw ParseError(source + ": expected {\"rows\": [[...], ...]}");
  }
  const auto& rows = j["rows"];
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw ParseError(source + ": rows[" + std::to_string(i) + "] is not an array");
    std::vector<Rational> row;
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      row.push_back(detail::rational_from_json(rows[i][k],
                                               source + ": rows[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    }
    out.push_back(std::move(row));
  }
  std::vector<Rational> flat;
  for (const auto& r : out) {
    if (r.size() != out.front().size()) throw ParseError(source + ": ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  detail::check_masses(flat, source);
  return Joint(out.size(), out.front().size(), std::move(flat));
}

// "1/2,1/4,0.25"
inline Dist parse_inline_dist(std::string_view text, const std::string& source = "inline") {
  auto masses = detail::parse_list(text, source);
  detail::check_masses(masses, source);
  return Dist(std::move(masses));
}

// "1/4,1/4;1/2,0": rows separated by ';'.
inline Joint parse_inline_joint(std::string_view text, const std::string& source = "inline") {
  std::vector<Rational> flat;
  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& row_text : detail::split(text, ';')) {
    auto row = detail::parse_list(row_text, source + ": row " + std::to_string(rows));
    if (rows == 0) cols = row.size();
    if (row.size() != cols) throw ParseError(source + ": ragged rows");
    flat.insert(flat.end(), row.begin(), row.end());
    ++rows;
  }
  detail::check_masses(flat, source);
  return Joint(rows, cols, std::move(flat));
}

namespace detail {

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace detail

// A path to a JSON file, or inline comma-separated masses.
inline Dist load_dist(const std::string& source) {
  if (std::filesystem::is_regular_file(source)) return dist_from_json(detail::read_json_file(source), source);
  return parse_inline_dist(source, "'" + source + "'");
}

inline Joint load_joint(const std::string& source) {
  if (std::filesystem::is_regular_file(source)) return joint_from_json(detail::read_json_file(source), source);
  return parse_inline_joint(source, "'" + source + "'");
}

// One matrix row per line, entries "num/den".
inline std::string to_csv(const Joint& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    for (std::size_t j = 0; j < s.cols(); ++j) out << (j ? "," : "") << to_string(s.at(i, j));
    out << '\n';
  }
  return out.str();
}

}  // namespace mincoupling

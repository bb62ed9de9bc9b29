#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "e2qes/model.hpp"

namespace e2qes {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal representation.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

/// Writes to a sibling temporary and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

/// Rejects keys outside `allowed` and reports missing `required` ones.
inline void check_keys(const Json& obj, std::initializer_list<std::string_view> allowed,
                       std::initializer_list<std::string_view> required, const std::string& context) {
  if (!obj.is_object()) throw ParseError(context + ": expected a JSON object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(context + ": unknown key '" + key + "'");
  }
  for (auto r : required)
    if (!obj.contains(std::string(r))) throw ParseError(context + ": missing key '" + std::string(r) + "'");
}

inline TimeFunction parse_expression(const Json& v, const std::string& context) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_time_function(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(context + ": " + e.what());
    }
  }
  throw ParseError(context + ": expected an expression string or a number");
}

inline double get_number(const Json& obj, const char* key, const std::string& context) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ParseError(context + ": '" + key + "' must be a number");
  return v.get<double>();
}

inline int get_int(const Json& obj, const char* key, const std::string& context) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(context + ": '" + key + "' must be an integer");
  return v.get<int>();
}

inline std::vector<double> get_number_list(const Json& obj, const char* key, const std::string& context) {
  const auto& v = obj.at(key);
  if (!v.is_array()) throw ParseError(context + ": '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ParseError(context + ": '" + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

/// All nine keys muJ..muUV, each {"re": expr, "im": expr}.
inline CoefficientSet parse_coefficient_set(const Json& obj) {
  const std::string ctx = "coefficients";
  if (!obj.is_object()) throw ParseError(ctx + ": expected a JSON object");
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (Monomial m : kMonomials) known = known || key == coefficient_key(m);
    if (!known) throw ParseError(ctx + ": unknown key '" + key + "'");
  }
  CoefficientSet c;
  for (Monomial m : kMonomials) {
    const std::string key(coefficient_key(m));
    if (!obj.contains(key)) throw ParseError(ctx + ": missing key '" + key + "'");
    const Json& entry = obj.at(key);
    check_keys(entry, {"re", "im"}, {"re", "im"}, ctx + "." + key);
    c.set(m, {parse_expression(entry.at("re"), ctx + "." + key + ".re"),
              parse_expression(entry.at("im"), ctx + "." + key + ".im")});
  }
  return c;
}

inline Json to_json(const CoefficientSet& c) {
  Json out = Json::object();
  for (Monomial m : kMonomials)
    out[std::string(coefficient_key(m))] = {{"re", c[m].re.to_string()}, {"im", c[m].im.to_string()}};
  return out;
}

/// CSV with header row, comma separated, LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<std::string> header) : columns_(header.size()) { row(header); }
  explicit CsvWriter(const std::vector<std::string>& header) : columns_(header.size()) { row(header); }

  template <typename Range>
  void row(const Range& cells) {
    bool first = true;
    for (const auto& c : cells) {
      if (!first) out_ << ',';
      out_ << c;
      first = false;
    }
    out_ << '\n';
  }
  void numbers(const std::vector<double>& values) {
    std::vector<std::string> cells;
    for (double v : values) cells.push_back(format_double(v));
    row(cells);
  }
  std::string str() const { return out_.str(); }
  std::size_t columns() const noexcept { return columns_; }

 private:
  std::size_t columns_;
  std::ostringstream out_;
};

}  // namespace e2qes

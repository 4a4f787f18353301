#ifndef BESTCHOICE_OUTPUT_HPP
#define BESTCHOICE_OUTPUT_HPP

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bestchoice/errors.hpp"

namespace bestchoice::output {

enum class format { csv, json };

struct output_spec {
  format fmt = format::csv;
  std::string path;  // empty: standard output
};

// Accepts "csv", "json", "csv:PATH", "json:PATH", "-" (csv to stdout), or a
// bare PATH whose extension (.csv / .json) picks the format.
inline output_spec parse_output_spec(const std::string& text) {
  auto fmt_of = [](const std::string& s) -> std::optional<format> {
    if (s == "csv") return format::csv;
    if (s == "json") return format::json;
    return std::nullopt;
  };
  if (text.empty() || text == "-") return {};
  if (auto f = fmt_of(text)) return {*f, {}};
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    if (auto f = fmt_of(text.substr(0, colon))) {
      const std::string path = text.substr(colon + 1);
      if (path.empty()) throw domain_error("output spec: empty path after '" + text.substr(0, colon + 1) + "'");
      return {*f, path};
    }
  }
  const std::string ext = std::filesystem::path(text).extension().string();
  if (ext == ".json") return {format::json, text};
  if (ext == ".csv") return {format::csv, text};
  throw domain_error("output spec: cannot infer format from '" + text + "' (use csv:PATH or json:PATH)");
}

// Shortest representation that round-trips; independent of the C locale.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

using cell = std::variant<std::int64_t, double, bool, std::string>;

struct table {
  std::vector<std::string> columns;
  std::vector<std::vector<cell>> rows;
};

inline std::string csv_field(const cell& c) {
  struct {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + '"';
    }
  } visitor;
  return std::visit(visitor, c);
}

inline nlohmann::json json_field(const cell& c) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, c);
}

inline std::string to_csv(const table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += '\n';
  }
  return out;
}

// Array of objects keyed by column name.
inline nlohmann::json to_json(const table& t) {
  auto arr = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_field(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

// Writes to standard output, or to `path` via a temporary file and rename.
inline void emit(const output_spec& spec, const std::string& content, std::ostream& stdout_stream = std::cout) {
  if (spec.path.empty()) {
    stdout_stream << content;
    stdout_stream.flush();
    return;
  }
  const std::filesystem::path target(spec.path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw error("cannot open '" + tmp.string() + "' for writing");
    f << content;
    if (!f.flush()) throw error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw error("cannot move output into place at '" + target.string() + "': " + ec.message());
  }
}

inline std::string render(const output_spec& spec, const table& t) {
  return spec.fmt == format::csv ? to_csv(t) : to_json(t).dump(2) + "\n";
}

}  // namespace bestchoice::output

#endif

#pragma once

// Deterministic report serialization shared by all CLI subcommands. Output is
// byte-identical for identical inputs: stable key order, fixed float
// formatting, no wall-clock metadata.

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hecke::report {

inline constexpr const char* kToolName = "hecke-density";
inline constexpr const char* kToolVersion = "0.1.0";

// 12 significant digits, scientific notation below 1e-4 in magnitude.
inline std::string format_float(double x) {
  if (x == 0.0) return "0";
  char buf[48];
  if (std::abs(x) < 1e-4)
    std::snprintf(buf, sizeof buf, "%.11e", x);
  else
    std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> config;  // flag echo
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<Verdict> verdicts;

  void config_entry(const std::string& key, const std::string& value) {
    config.emplace_back(key, value);
  }
  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  void add_verdict(const std::string& name, bool pass,
                   const std::string& detail = "") {
    verdicts.push_back({name, pass, detail});
  }
  bool all_pass() const {
    for (const auto& v : verdicts)
      if (!v.pass) return false;
    return true;
  }
};

inline std::string to_json(const Report& rep) {
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["subcommand"] = rep.subcommand;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : rep.config) cfg[k] = v;
  j["config"] = cfg;
  j["columns"] = rep.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : rep.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < rep.columns.size() && i < row.size(); ++i)
      obj[rep.columns[i]] = row[i];
    rows.push_back(obj);
  }
  j["rows"] = rows;
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
  for (const auto& v : rep.verdicts)
    verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  j["verdicts"] = verdicts;
  return j.dump(2) + "\n";
}

namespace detail {
inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}
}  // namespace detail

// RFC-4180-style CSV: a comment preamble with the config echo, the data table,
// then one line per verdict.
inline std::string to_csv(const Report& rep) {
  std::string out;
  out += "# tool: " + std::string(kToolName) + " " + kToolVersion + "\n";
  out += "# subcommand: " + rep.subcommand + "\n";
  for (const auto& [k, v] : rep.config) out += "# " + k + ": " + v + "\n";
  for (std::size_t i = 0; i < rep.columns.size(); ++i) {
    if (i) out += ',';
    out += detail::csv_quote(rep.columns[i]);
  }
  out += '\n';
  for (const auto& row : rep.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += detail::csv_quote(row[i]);
    }
    out += '\n';
  }
  for (const auto& v : rep.verdicts) {
    out += "# verdict," + detail::csv_quote(v.name) + "," +
           (v.pass ? "pass" : "fail");
    if (!v.detail.empty()) out += "," + detail::csv_quote(v.detail);
    out += '\n';
  }
  return out;
}

}  // namespace hecke::report

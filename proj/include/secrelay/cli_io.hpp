// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The secrelay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Config files and result tables.
//
// Config grammar: one `key = value` per line, `#` starts a comment, lists
// are comma separated. Result tables are CSV with the header
// axis,algorithm,mean_secrecy,std_error,visited_sets.

#ifndef SECRELAY_CLI_IO_HPP
#define SECRELAY_CLI_IO_HPP

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "config.hpp"
#include "sim.hpp"

namespace secrelay {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] inline void bad_value(std::string_view key, std::string_view value, const char* expected) {
  throw ConfigError("invalid value for '" + std::string(key) + "': '" + std::string(value) + "' (expected " +
                    expected + ")");
}

template <class T>
T parse_number(std::string_view key, std::string_view v, const char* expected) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, v, expected);
  return out;
}

inline std::size_t parse_count(std::string_view key, std::string_view v) {
  return parse_number<std::size_t>(key, v, "a non-negative integer");
}

inline double parse_real(std::string_view key, std::string_view v) {
  return parse_number<double>(key, v, "a real number");
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

struct Field {
  std::function<void(SystemConfig&, std::string_view key, std::string_view value)> parse;
  std::function<std::string(const SystemConfig&)> print;
};

template <class M>
Field count_field(M SystemConfig::*m) {
  return {[m](SystemConfig& c, std::string_view k, std::string_view v) { c.*m = parse_count(k, v); },
          [m](const SystemConfig& c) { return std::to_string(c.*m); }};
}

inline Field real_field(double SystemConfig::*m) {
  return {[m](SystemConfig& c, std::string_view k, std::string_view v) { c.*m = parse_real(k, v); },
          [m](const SystemConfig& c) { return format_real(c.*m); }};
}

inline Field real_list_field(std::vector<double> SystemConfig::*m) {
  return {[m](SystemConfig& c, std::string_view k, std::string_view v) {
            std::vector<double> out;
            if (!trim(v).empty())
              for (auto item : split_list(v)) out.push_back(parse_real(k, item));
            c.*m = out;
          },
          [m](const SystemConfig& c) { return join(c.*m, format_real); }};
}

// Keys in serialization order.
inline const std::vector<std::pair<std::string, Field>>& config_fields() {
  static const std::vector<std::pair<std::string, Field>> fields = [] {
    std::vector<std::pair<std::string, Field>> f;
    f.emplace_back("n_t", count_field(&SystemConfig::n_t));
    f.emplace_back("n_r", count_field(&SystemConfig::n_r));
    f.emplace_back("n_e", count_field(&SystemConfig::n_e));
    f.emplace_back("n_i", count_field(&SystemConfig::n_i));
    f.emplace_back("n_k", count_field(&SystemConfig::n_k));
    f.emplace_back("m_users", count_field(&SystemConfig::m_users));
    f.emplace_back("n_eaves", count_field(&SystemConfig::n_eaves));
    f.emplace_back("s_total", count_field(&SystemConfig::s_total));
    f.emplace_back("s_select", count_field(&SystemConfig::s_select));
    f.emplace_back("k_jammers", count_field(&SystemConfig::k_jammers));
    f.emplace_back("buffer_len", count_field(&SystemConfig::buffer_len));
    f.emplace_back("power", real_field(&SystemConfig::power));
    f.emplace_back("eta", real_field(&SystemConfig::eta));
    f.emplace_back("gamma0", real_field(&SystemConfig::gamma0));
    f.emplace_back("eta_l_max", count_field(&SystemConfig::eta_l_max));
    f.emplace_back("corr_r", Field{[](SystemConfig& c, std::string_view k, std::string_view v) {
                                     const auto parts = split_list(v);
                                     if (parts.size() > 2) bad_value(k, v, "'re' or 're,im'");
                                     const double re = parse_real(k, parts[0]);
                                     const double im = parts.size() == 2 ? parse_real(k, parts[1]) : 0.0;
                                     c.corr_r = {re, im};
                                   },
                                   [](const SystemConfig& c) {
                                     return format_real(c.corr_r.real()) + "," + format_real(c.corr_r.imag());
                                   }});
    f.emplace_back("correlated", Field{[](SystemConfig& c, std::string_view k, std::string_view v) {
                                         if (v == "true" || v == "1") c.correlated = true;
                                         else if (v == "false" || v == "0") c.correlated = false;
                                         else bad_value(k, v, "true or false");
                                       },
                                       [](const SystemConfig& c) { return std::string(c.correlated ? "true" : "false"); }});
    f.emplace_back("snr_grid_db", real_list_field(&SystemConfig::snr_grid_db));
    f.emplace_back("eta_grid", real_list_field(&SystemConfig::eta_grid));
    f.emplace_back("buffer_grid", Field{[](SystemConfig& c, std::string_view k, std::string_view v) {
                                          std::vector<std::size_t> out;
                                          if (!trim(v).empty())
                                            for (auto item : split_list(v)) out.push_back(parse_count(k, item));
                                          c.buffer_grid = out;
                                        },
                                        [](const SystemConfig& c) {
                                          return join(c.buffer_grid, [](std::size_t x) { return std::to_string(x); });
                                        }});
    f.emplace_back("trials", count_field(&SystemConfig::trials));
    f.emplace_back("slots", count_field(&SystemConfig::slots));
    f.emplace_back("warmup", count_field(&SystemConfig::warmup));
    f.emplace_back("seed", Field{[](SystemConfig& c, std::string_view k, std::string_view v) {
                                   c.seed = parse_number<std::uint64_t>(k, v, "a 64-bit unsigned integer");
                                 },
                                 [](const SystemConfig& c) { return std::to_string(c.seed); }});
    return f;
  }();
  return fields;
}

}  // namespace detail

// Missing keys keep their defaults (the MIMO scenario). Throws ConfigError
// on syntax errors, unknown or repeated keys and violated constraints.
inline SystemConfig parse_config(std::string_view text) {
  SystemConfig cfg;
  std::map<std::string, const detail::Field*, std::less<>> fields;
  for (const auto& [name, f] : detail::config_fields()) fields.emplace(name, &f);

  std::vector<std::string> unknown;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    const auto it = fields.find(key);
    if (it == fields.end()) {
      unknown.emplace_back(key);
      continue;
    }
    if (!seen.emplace(key).second) throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + std::string(key) + "'");
    it->second->parse(cfg, key, value);
  }
  if (!unknown.empty()) {
    std::string msg = "unknown config keys:";
    for (const auto& k : unknown) msg += " " + k;
    throw ConfigError(msg);
  }
  validate(cfg);
  return cfg;
}

inline std::string serialize_config(const SystemConfig& cfg) {
  std::string out;
  for (const auto& [name, f] : detail::config_fields()) out += name + " = " + f.print(cfg) + "\n";
  return out;
}

inline SystemConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

inline constexpr const char* kCsvHeader = "axis,algorithm,mean_secrecy,std_error,visited_sets";

inline std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string format_results(const SweepResult& result) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : result.rows()) {
    out += format_g9(r.axis) + "," + r.algorithm + "," + format_g9(r.mean_secrecy) + "," + format_g9(r.std_error) +
           "," + std::to_string(r.visited_sets) + "\n";
  }
  return out;
}

inline void write_results(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << format_results(result);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline std::vector<SweepRow> parse_results(std::string_view csv) {
  std::vector<SweepRow> rows;
  std::size_t pos = 0;
  bool header = true;
  while (pos < csv.size()) {
    const std::size_t nl = std::min(csv.find('\n', pos), csv.size());
    const std::string_view line = csv.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    if (header) {
      if (line != kCsvHeader) throw IoError("unexpected CSV header '" + std::string(line) + "'");
      header = false;
      continue;
    }
    const auto f = detail::split_list(line);
    if (f.size() != 5) throw IoError("malformed CSV row '" + std::string(line) + "'");
    SweepRow r;
    r.axis = detail::parse_real("axis", f[0]);
    r.algorithm = std::string(f[1]);
    r.mean_secrecy = detail::parse_real("mean_secrecy", f[2]);
    r.std_error = detail::parse_real("std_error", f[3]);
    r.visited_sets = detail::parse_number<std::uint64_t>("visited_sets", f[4], "an integer");
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace secrelay

#endif  // SECRELAY_CLI_IO_HPP

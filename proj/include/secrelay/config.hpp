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

#ifndef SECRELAY_CONFIG_HPP
#define SECRELAY_CONFIG_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace secrelay {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Scenario parameters. Defaults describe the MIMO scenario: a 6-antenna
// source, 2-antenna users, eavesdroppers and relays, 4-packet buffers.
struct SystemConfig {
  std::size_t n_t = 6;
  std::size_t n_r = 2;
  std::size_t n_e = 2;
  std::size_t n_i = 2;
  std::size_t n_k = 2;
  std::size_t m_users = 3;
  std::size_t n_eaves = 3;
  std::size_t s_total = 6;
  std::size_t s_select = 3;
  std::size_t k_jammers = 3;
  std::size_t buffer_len = 4;
  double power = 10.0;  // linear, unit noise
  double eta = 1.0;     // source gets eta*P, relays (2-eta)*P
  double gamma0 = 0.1;
  std::size_t eta_l_max = 5;
  std::complex<double> corr_r{0.5, 0.0};
  bool correlated = false;
  std::vector<double> snr_grid_db{0.0, 5.0, 10.0, 15.0, 20.0};
  std::vector<double> eta_grid{0.5, 1.0, 1.5, 2.0};
  std::vector<std::size_t> buffer_grid{1, 2, 4, 10};
  std::size_t trials = 100;
  std::size_t slots = 200;
  std::size_t warmup = 20;
  std::uint64_t seed = 1;

  double source_power() const noexcept { return eta * power; }
  double relay_power() const noexcept { return (2.0 - eta) * power; }

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

namespace detail {

inline void require(bool ok, const std::string& constraint, const std::string& detail) {
  if (!ok) throw ConfigError("constraint violated: " + constraint + " (" + detail + ")");
}

inline std::string kv(const char* name, std::size_t v) { return std::string(name) + "=" + std::to_string(v); }

inline std::string kv(const char* name, double v) {
  std::ostringstream os;
  os << name << "=" << v;
  return os.str();
}

}  // namespace detail

// Throws ConfigError naming the first violated constraint.
inline void validate(const SystemConfig& c) {
  using detail::kv;
  using detail::require;
  const struct {
    const char* name;
    std::size_t value;
  } counts[] = {{"n_t", c.n_t},         {"n_r", c.n_r},           {"n_e", c.n_e},
                {"n_i", c.n_i},         {"n_k", c.n_k},           {"m_users", c.m_users},
                {"n_eaves", c.n_eaves}, {"s_total", c.s_total},   {"s_select", c.s_select},
                {"k_jammers", c.k_jammers}, {"buffer_len", c.buffer_len},
                {"eta_l_max", c.eta_l_max}, {"trials", c.trials}, {"slots", c.slots}};
  for (const auto& [name, value] : counts)
    require(value >= 1, std::string(name) + " >= 1", kv(name, value));

  const std::size_t streams = c.n_r * c.m_users;
  const std::string streams_s = kv("n_r*m_users", streams);
  require(c.n_t >= streams, "n_t >= n_r*m_users", kv("n_t", c.n_t) + ", " + streams_s);
  require(c.n_i * c.s_select >= streams, "n_i*s_select >= n_r*m_users",
          kv("n_i*s_select", c.n_i * c.s_select) + ", " + streams_s);
  require(c.n_k * c.k_jammers >= streams, "n_k*k_jammers >= n_r*m_users",
          kv("n_k*k_jammers", c.n_k * c.k_jammers) + ", " + streams_s);
  require(c.n_e * c.n_eaves >= streams, "n_e*n_eaves >= n_r*m_users",
          kv("n_e*n_eaves", c.n_e * c.n_eaves) + ", " + streams_s);
  require(c.s_select <= c.s_total, "s_select <= s_total",
          kv("s_select", c.s_select) + ", " + kv("s_total", c.s_total));
  require(c.s_select + c.k_jammers <= c.s_total, "s_select + k_jammers <= s_total",
          kv("s_select+k_jammers", c.s_select + c.k_jammers) + ", " + kv("s_total", c.s_total));
  require(c.n_i * c.s_select <= c.n_t, "n_i*s_select <= n_t",
          kv("n_i*s_select", c.n_i * c.s_select) + ", " + kv("n_t", c.n_t));
  require(c.n_k * c.s_select >= streams, "n_k*s_select >= n_r*m_users",
          kv("n_k*s_select", c.n_k * c.s_select) + ", " + streams_s);
  require(c.eta >= 0.0 && c.eta <= 2.0, "0 <= eta <= 2", kv("eta", c.eta));
  require(std::abs(c.corr_r) <= 1.0, "|corr_r| <= 1", kv("|corr_r|", std::abs(c.corr_r)));
  require(c.power > 0.0, "power > 0", kv("power", c.power));
  require(c.gamma0 > 0.0, "gamma0 > 0", kv("gamma0", c.gamma0));
  require(c.warmup < c.slots, "warmup < slots", kv("warmup", c.warmup) + ", " + kv("slots", c.slots));
  require(!c.snr_grid_db.empty(), "snr_grid_db non-empty", "empty list");
  for (double e : c.eta_grid) require(e >= 0.0 && e <= 2.0, "0 <= eta_grid <= 2", kv("eta_grid", e));
  for (std::size_t l : c.buffer_grid) require(l >= 1, "buffer_grid >= 1", kv("buffer_grid", l));
}

inline SystemConfig mimo_preset() { return SystemConfig{}; }

inline SystemConfig siso_preset() {
  SystemConfig c;
  c.n_t = 3;
  c.n_r = c.n_e = c.n_i = c.n_k = 1;
  c.m_users = 3;
  c.n_eaves = 3;
  return c;
}

}  // namespace secrelay

#endif  // SECRELAY_CONFIG_HPP

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

#ifndef SECRELAY_CHANNEL_HPP
#define SECRELAY_CHANNEL_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "numerics.hpp"

namespace secrelay {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for one independent stream. Every (seed, trial, slot, stream) tuple
// maps to its own generator, so trials can run in any order.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t trial, std::uint64_t slot = 0,
                                    std::uint64_t stream = 0) noexcept {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ trial);
  h = mix64(h ^ slot);
  return mix64(h ^ stream);
}

inline Rng make_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t slot = 0,
                    std::uint64_t stream = 0) {
  return Rng(stream_seed(seed, trial, slot, stream));
}

// Uniform on (0, 1]. Hand-rolled so draws do not depend on the standard
// library's distribution implementations.
inline double uniform_open0(Rng& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Unit-variance circularly symmetric complex Gaussian (Box-Muller).
inline Complex draw_cn01(Rng& rng) {
  const double u1 = uniform_open0(rng);
  const double u2 = uniform_open0(rng);
  const double radius = std::sqrt(-std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

inline ComplexMatrix draw_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (auto& v : m.entries()) v = draw_cn01(rng);
  return m;
}

inline ComplexMatrix exponential_correlation(std::size_t n, Complex r) {
  if (!(std::abs(r) <= 1.0))
    throw DomainError("exponential_correlation: |r| = " + std::to_string(std::abs(r)) + " > 1");
  ComplexMatrix m(n, n);
  std::vector<Complex> powers(n);
  if (n > 0) powers[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) powers[k] = powers[k - 1] * r;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = powers[j - i];
      m(j, i) = std::conj(powers[j - i]);
    }
    m(i, i) = 1.0;
  }
  return m;
}

// Transmit-side correlation H * R_t^{1/2}.
inline ComplexMatrix correlate(const ComplexMatrix& h, const ComplexMatrix& r_t) {
  if (h.cols() != r_t.rows())
    throw ShapeError("correlate: " + h.shape_string() + " vs " + r_t.shape_string());
  return matmul(h, psd_sqrt(r_t));
}

// Everything a legitimate node may know. Selection criteria that must not
// use eavesdropper CSI take only this half of a realization.
struct LegitimateChannels {
  std::vector<ComplexMatrix> h_relays;                    // [relay] n_i x n_t
  std::vector<std::vector<ComplexMatrix>> h_relay_user;   // [relay][user] n_r x n_k
  std::vector<std::vector<ComplexMatrix>> h_relay_relay;  // [from][to] n_i x n_k, empty on diagonal

  std::size_t relay_count() const noexcept { return h_relays.size(); }
  std::size_t user_count() const noexcept {
    return h_relay_user.empty() ? 0 : h_relay_user.front().size();
  }

  const ComplexMatrix& relay_relay(std::size_t from, std::size_t to) const {
    if (from == to) throw std::out_of_range("relay_relay: no self channel for relay " + std::to_string(from));
    return h_relay_relay.at(from).at(to);
  }
};

struct EavesdropperChannels {
  std::vector<ComplexMatrix> h_eaves;                     // [eave] n_e x n_t
  std::vector<std::vector<ComplexMatrix>> h_relay_eave;   // [relay][eave] n_e x n_k

  std::size_t eave_count() const noexcept { return h_eaves.size(); }
};

struct ChannelRealization {
  LegitimateChannels legit;
  EavesdropperChannels eaves;

  friend bool operator==(const ChannelRealization& a, const ChannelRealization& b) {
    return a.legit.h_relays == b.legit.h_relays && a.legit.h_relay_user == b.legit.h_relay_user &&
           a.legit.h_relay_relay == b.legit.h_relay_relay && a.eaves.h_eaves == b.eaves.h_eaves &&
           a.eaves.h_relay_eave == b.eaves.h_relay_eave;
  }
};

// Draws realizations for one configuration. The correlation square roots
// are computed once per generator.
class ChannelGenerator {
 public:
  ChannelGenerator(const SystemConfig& cfg, bool correlated)
      : cfg_(cfg), correlated_(correlated) {
    if (correlated_) {
      sqrt_source_ = psd_sqrt(exponential_correlation(cfg.n_t, cfg.corr_r));
      sqrt_relay_ = psd_sqrt(exponential_correlation(cfg.n_k, cfg.corr_r));
    }
  }

  ChannelRealization operator()(Rng& rng) const {
    ChannelRealization out;
    auto& lg = out.legit;
    auto& ev = out.eaves;
    const std::size_t s = cfg_.s_total;
    lg.h_relays.reserve(s);
    for (std::size_t k = 0; k < s; ++k) lg.h_relays.push_back(source_link(cfg_.n_i, rng));
    ev.h_eaves.reserve(cfg_.n_eaves);
    for (std::size_t e = 0; e < cfg_.n_eaves; ++e) ev.h_eaves.push_back(source_link(cfg_.n_e, rng));
    lg.h_relay_user.assign(s, {});
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t r = 0; r < cfg_.m_users; ++r)
        lg.h_relay_user[k].push_back(relay_link(cfg_.n_r, rng));
    ev.h_relay_eave.assign(s, {});
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t e = 0; e < cfg_.n_eaves; ++e)
        ev.h_relay_eave[k].push_back(relay_link(cfg_.n_e, rng));
    lg.h_relay_relay.assign(s, std::vector<ComplexMatrix>(s));
    for (std::size_t k = 0; k < s; ++k)
      for (std::size_t i = 0; i < s; ++i)
        if (k != i) lg.h_relay_relay[k][i] = relay_link(cfg_.n_i, rng);
    return out;
  }

 private:
  ComplexMatrix source_link(std::size_t rows, Rng& rng) const {
    ComplexMatrix h = draw_gaussian_matrix(rows, cfg_.n_t, rng);
    return correlated_ ? matmul(h, sqrt_source_) : h;
  }

  ComplexMatrix relay_link(std::size_t rows, Rng& rng) const {
    ComplexMatrix h = draw_gaussian_matrix(rows, cfg_.n_k, rng);
    return correlated_ ? matmul(h, sqrt_relay_) : h;
  }

  SystemConfig cfg_;
  bool correlated_;
  ComplexMatrix sqrt_source_;
  ComplexMatrix sqrt_relay_;
};

inline ChannelRealization draw_realization(const SystemConfig& cfg, bool correlated, Rng& rng) {
  return ChannelGenerator(cfg, correlated)(rng);
}

}  // namespace secrelay

#endif  // SECRELAY_CHANNEL_HPP

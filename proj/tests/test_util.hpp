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


#ifndef SECRELAY_TESTS_TEST_UTIL_HPP
#define SECRELAY_TESTS_TEST_UTIL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "secrelay/secrelay.hpp"

namespace secrelay::testing {

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0xfeed);
  return draw_gaussian_matrix(rows, cols, rng);
}

// I + B B^H for a random square B.
inline ComplexMatrix random_hpd(std::size_t n, std::uint64_t seed) {
  ComplexMatrix m = gram(random_matrix(n, n, seed));
  m.add_identity();
  return m;
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
  Eigen::MatrixXcd e(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) e(r, c) = a(r, c);
  return e;
}

// Laplace expansion along the first row.
inline Complex cofactor_det(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  Complex sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    ComplexMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    sum += sign * a(0, j) * cofactor_det(minor);
  }
  return sum;
}

inline ChannelRealization realization(const SystemConfig& cfg, std::uint64_t seed, bool correlated = false) {
  Rng rng = make_rng(seed, 0, 0, 0);
  return draw_realization(cfg, correlated, rng);
}

inline SignalSet signals(const SystemConfig& cfg, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0, 0, 1);
  return draw_signals(cfg, rng);
}

// Exchanges the labels of relays a and b in every channel they touch.
inline ChannelRealization swap_relays(ChannelRealization ch, std::size_t a, std::size_t b) {
  if (a == b) return ch;
  auto& lg = ch.legit;
  std::swap(lg.h_relays[a], lg.h_relays[b]);
  std::swap(lg.h_relay_user[a], lg.h_relay_user[b]);
  std::swap(ch.eaves.h_relay_eave[a], ch.eaves.h_relay_eave[b]);
  std::swap(lg.h_relay_relay[a], lg.h_relay_relay[b]);
  for (auto& row : lg.h_relay_relay) std::swap(row[a], row[b]);
  return ch;
}

}  // namespace secrelay::testing

#endif  // SECRELAY_TESTS_TEST_UTIL_HPP

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

#ifndef SECRELAY_PRECODING_HPP
#define SECRELAY_PRECODING_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "channel.hpp"
#include "config.hpp"
#include "numerics.hpp"

namespace secrelay {

struct Precoder {
  ComplexMatrix u_full;                // n_tx x (sum of block widths)
  std::vector<ComplexMatrix> u_blocks;  // one per destination

  std::size_t block_count() const noexcept { return u_blocks.size(); }
};

// U = H^H (H H^H)^{-1}, split into column blocks of `block_width`.
// Throws SingularMatrixError when H H^H is singular or ill-conditioned.
inline Precoder zf_precoder(const ComplexMatrix& h, std::size_t block_width = 1) {
  if (h.rows() > h.cols())
    throw ShapeError("zf_precoder: more rows than columns (" + h.shape_string() + ")");
  if (block_width == 0 || h.rows() % block_width != 0)
    throw ShapeError("zf_precoder: block width does not divide " + std::to_string(h.rows()));
  Precoder p;
  p.u_full = matmul(conj_transpose(h), inverse(gram(h)));
  for (std::size_t c = 0; c < h.rows(); c += block_width)
    p.u_blocks.push_back(p.u_full.col_block(c, block_width));
  return p;
}

// Sum over `blocks` of U_j U_j^H, skipping `skip` (pass block_count() to
// keep every block).
inline ComplexMatrix block_covariance(const Precoder& p, std::size_t skip) {
  const std::size_t n = p.u_full.rows();
  ComplexMatrix c(n, n);
  for (std::size_t j = 0; j < p.block_count(); ++j)
    if (j != skip) c += gram(p.u_blocks[j]);
  return c;
}

struct SignalCovariances {
  ComplexMatrix r_d;  // desired stream
  ComplexMatrix r_i;  // unit noise plus the other streams
};

// `power` scales every stream; 1 gives the unscaled E[s s^H] = I case.
inline SignalCovariances signal_covariances(const Precoder& p, std::size_t active, double power = 1.0) {
  if (active >= p.block_count())
    throw std::out_of_range("signal_covariances: block " + std::to_string(active) + " of " +
                            std::to_string(p.block_count()));
  SignalCovariances out{gram(p.u_blocks[active]), block_covariance(p, active)};
  out.r_d *= power;
  out.r_i *= power;
  out.r_i.add_identity();
  return out;
}

struct SignalSet {
  std::vector<ComplexMatrix> s_blocks;  // per user, n_i x 1
  std::vector<ComplexMatrix> j_blocks;  // per relay, n_k x 1
};

inline SignalSet draw_signals(const SystemConfig& cfg, Rng& rng) {
  SignalSet s;
  s.s_blocks.reserve(cfg.m_users);
  for (std::size_t u = 0; u < cfg.m_users; ++u) s.s_blocks.push_back(draw_gaussian_matrix(cfg.n_i, 1, rng));
  s.j_blocks.reserve(cfg.s_total);
  for (std::size_t k = 0; k < cfg.s_total; ++k) s.j_blocks.push_back(draw_gaussian_matrix(cfg.n_k, 1, rng));
  return s;
}

}  // namespace secrelay

#endif  // SECRELAY_PRECODING_HPP

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

// SINRs, achievable rates and secrecy rates for the two hops.
//
// Link I is the source -> relay broadcast; the source zero-forces over the
// stacked channel of the relaying set while K other relays jam. Link II is
// the relay -> user hop; the forwarding relays jointly zero-force towards
// the users. Noise is unit variance at every receive antenna.

#ifndef SECRELAY_LINK_METRICS_HPP
#define SECRELAY_LINK_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "channel.hpp"
#include "numerics.hpp"
#include "precoding.hpp"

namespace secrelay {

struct LinkGammas {
  double g_src_relay = 0.0;
  double g_intf_relay = 0.0;
  double g_jam_relay = 0.0;
  double g_src_eave = 0.0;
  double g_intf_eave = 0.0;
  double g_jam_eave = 0.0;
  double g_relay_user = 0.0;
  double g_resid_user = 0.0;
};

struct RatePair {
  double rate_user = 0.0;
  double rate_eave = 0.0;
};

namespace detail {

inline double gamma_norm(const ComplexMatrix& m, bool squared) {
  return squared ? frobenius_norm_sq(m) : frobenius_norm(m);
}

}  // namespace detail

// Received-power terms for the relay at `position` of `selected`, the
// eavesdropper `e` and the user `r`. Jamming terms use the jamming vectors
// of the relays in `jam_set`. With `squared` false the plain Frobenius norm
// is used instead of its square.
inline LinkGammas compute_gammas(const LegitimateChannels& legit, const EavesdropperChannels& eaves,
                                 const Precoder& prec, const SignalSet& sig,
                                 std::span<const std::size_t> selected, std::size_t position,
                                 std::size_t e, std::size_t r, std::span<const std::size_t> jam_set,
                                 bool squared = true) {
  if (position >= selected.size() || position >= prec.block_count())
    throw std::out_of_range("compute_gammas: position out of range");
  const std::size_t i = selected[position];
  for (std::size_t k : jam_set)
    if (k == i) throw std::invalid_argument("compute_gammas: jamming set contains relay " + std::to_string(i));

  const ComplexMatrix& h_i = legit.h_relays.at(i);
  const ComplexMatrix& h_e = eaves.h_eaves.at(e);
  LinkGammas g;
  g.g_src_relay = detail::gamma_norm(matmul(h_i, prec.u_blocks[position]), squared);
  g.g_src_eave = detail::gamma_norm(matmul(h_e, prec.u_blocks[position]), squared);
  for (std::size_t j = 0; j < prec.block_count(); ++j) {
    if (j == position) continue;
    g.g_intf_relay += detail::gamma_norm(matmul(h_i, prec.u_blocks[j]), squared);
    g.g_intf_eave += detail::gamma_norm(matmul(h_e, prec.u_blocks[j]), squared);
  }

  ComplexMatrix jam_relay(h_i.rows(), 1);
  ComplexMatrix jam_eave(h_e.rows(), 1);
  ComplexMatrix jam_user(legit.h_relay_user.at(i).at(r).rows(), 1);
  for (std::size_t k : jam_set) {
    const ComplexMatrix& j_k = sig.j_blocks.at(k);
    jam_relay += matmul(legit.relay_relay(k, i), j_k);
    jam_eave += matmul(eaves.h_relay_eave.at(k).at(e), j_k);
    jam_user += matmul(legit.h_relay_user.at(k).at(r), j_k);
  }
  g.g_jam_relay = detail::gamma_norm(jam_relay, squared);
  g.g_jam_eave = detail::gamma_norm(jam_eave, squared);
  g.g_resid_user = detail::gamma_norm(jam_user, squared);
  g.g_relay_user = detail::gamma_norm(matmul(legit.h_relay_user.at(i).at(r), sig.j_blocks.at(i)), squared);
  return g;
}

// phi = 1 keeps the inter-relay interference, phi = 0 cancels it.
inline double sinr_relay(const LinkGammas& g, int phi, double noise) {
  return g.g_src_relay / (phi * g.g_jam_relay + g.g_intf_relay + noise);
}

inline double sinr_eave(const LinkGammas& g, double noise) {
  return g.g_src_eave / (g.g_jam_eave + g.g_intf_eave + noise);
}

inline double sinr_user(const LinkGammas& g, double noise) {
  return g.g_relay_user / (g.g_resid_user + noise);
}

// 0 when the interference from the jammers is strong enough to be decoded
// and removed, 1 otherwise.
inline int ic_feasibility(const ComplexMatrix& h_i, const ComplexMatrix& h_ki_stacked, double gamma0) {
  if (h_i.rows() != h_ki_stacked.rows())
    throw ShapeError("ic_feasibility: " + h_i.shape_string() + " vs " + h_ki_stacked.shape_string());
  ComplexMatrix a = gram(h_i);
  a.add_identity();
  const double ratio = std::abs(det(matmul(inverse(a), gram(h_ki_stacked))));
  return ratio >= gamma0 ? 0 : 1;
}

// log2 det(I + Q + H (C_i + C_d) H^H) - log2 det(I + Q + H C_i H^H): the
// rate of a Gaussian stream with covariance C_d seen through H against
// interference C_i and extra noise Q. Clamped at 0 against round-off.
inline double mimo_rate(const ComplexMatrix& h, const ComplexMatrix& c_desired, const ComplexMatrix& c_interf,
                        const ComplexMatrix* extra_noise = nullptr) {
  ComplexMatrix denom = congruence(h, c_interf);
  denom.add_identity();
  if (extra_noise != nullptr) denom += *extra_noise;
  ComplexMatrix numer = denom + congruence(h, c_desired);
  return std::max(0.0, log_det_herm(numer) - log_det_herm(denom));
}

// Rate at a legitimate receiver; `iri` is the interference covariance left
// after (optional) cancellation.
inline double rate_user_mimo(const ComplexMatrix& h, const ComplexMatrix& c_desired, const ComplexMatrix& c_interf,
                             const ComplexMatrix* iri = nullptr) {
  return mimo_rate(h, c_desired, c_interf, iri);
}

// Rate at an eavesdropper; `delta` is the jamming covariance it receives.
inline double rate_eave_mimo(const ComplexMatrix& h_e, const ComplexMatrix& c_desired,
                             const ComplexMatrix& c_interf, const ComplexMatrix* delta = nullptr) {
  return mimo_rate(h_e, c_desired, c_interf, delta);
}

inline double secrecy_rate(std::span<const RatePair> pairs) {
  double s = 0.0;
  for (const auto& p : pairs) s += std::max(0.0, p.rate_user - p.rate_eave);
  return s;
}

inline double secrecy_capacity_siso(Complex h_sr, Complex h_rd, Complex h_se, Complex h_re, double p) {
  const double legit = std::min(1.0 + p * std::norm(h_sr), 1.0 + p * std::norm(h_rd));
  const double leak = 1.0 + p * std::norm(h_se) + p * std::norm(h_re);
  return std::max(0.0, 0.5 * std::log2(legit / leak));
}

// M_i, M_r are the determinant terms of the two hops; gamma_e_logdet is
// log2 det(I + Gamma_e) of the eavesdropper.
inline double secrecy_capacity_mimo(double m_i, double m_r, double gamma_e_logdet) {
  if (!(m_i > 0.0) || !(m_r > 0.0)) throw DomainError("secrecy_capacity_mimo: determinant terms must be positive");
  return std::max(0.0, 0.5 * (std::log2(std::min(m_i, m_r)) - gamma_e_logdet));
}

// Ceiling on the gain from buffering: half the log-ratio of the best
// available determinant to the one actually used without buffers.
inline double buffer_gain_bound(double m_best, double m_prev) {
  constexpr double kSlack = 1e-12;
  if (m_best < 1.0 - kSlack || m_prev < 1.0 - kSlack)
    throw DomainError("buffer_gain_bound: arguments must be >= 1");
  return std::max(0.0, 0.5 * (std::log2(m_best) - std::log2(m_prev)));
}

struct OpportunisticTerms {
  ComplexMatrix signal;  // H U U^H H^H at the selected relay
  ComplexMatrix iri;     // Delta'
  double eave_logdet = 0.0;
};

// With IC the relay can receive and forward in the same slot pair, doubling
// the secrecy rate. Without IC the residual IRI enters the legitimate term.
inline double opportunistic_secrecy(double base_secrecy, bool ic,
                                    const std::optional<OpportunisticTerms>& terms = std::nullopt) {
  if (ic) return 2.0 * base_secrecy;
  if (!terms) throw std::invalid_argument("opportunistic_secrecy: IRI terms required without IC");
  ComplexMatrix denom = terms->iri;
  denom.add_identity();
  return log_det_herm(denom + terms->signal) - log_det_herm(denom) - terms->eave_logdet;
}

// ---------------------------------------------------------------------------
// Link I

struct LinkOnePlan {
  std::vector<std::size_t> relaying;
  std::vector<std::size_t> jamming;
  Precoder prec;               // one n_i-wide block per relaying position
  double beta = 0.0;           // source signal scale
  double jam_power = 0.0;      // per jamming antenna
  ComplexMatrix c_total;       // beta * U U^H
  std::vector<ComplexMatrix> iri;  // per position, before cancellation
  std::vector<int> phi;            // per position
};

// Throws SingularMatrixError if the relaying set cannot be zero-forced.
inline LinkOnePlan make_link_one_plan(const LegitimateChannels& legit, std::span<const std::size_t> relaying,
                                      std::span<const std::size_t> jamming, double source_power,
                                      double relay_power, bool ic, double gamma0) {
  LinkOnePlan plan;
  plan.relaying.assign(relaying.begin(), relaying.end());
  plan.jamming.assign(jamming.begin(), jamming.end());
  std::vector<ComplexMatrix> rows;
  rows.reserve(relaying.size());
  for (std::size_t a : relaying) rows.push_back(legit.h_relays.at(a));
  const ComplexMatrix h = vstack(rows);
  plan.prec = zf_precoder(h, rows.front().rows());
  plan.beta = source_power / frobenius_norm_sq(plan.prec.u_full);
  plan.c_total = gram(plan.prec.u_full);
  plan.c_total *= plan.beta;

  if (!jamming.empty()) {
    const std::size_t n_k = legit.relay_relay(jamming.front(), relaying.front()).cols();
    plan.jam_power = relay_power / static_cast<double>(jamming.size() * n_k);
  }
  for (std::size_t a : relaying) {
    const std::size_t n_i = legit.h_relays[a].rows();
    ComplexMatrix raw(n_i, n_i);
    std::vector<ComplexMatrix> cols;
    for (std::size_t k : jamming) {
      raw += gram(legit.relay_relay(k, a));
      cols.push_back(legit.relay_relay(k, a));
    }
    int phi = 1;
    if (ic && !jamming.empty()) phi = ic_feasibility(legit.h_relays[a], hstack(cols), gamma0);
    raw *= plan.jam_power;
    plan.iri.push_back(std::move(raw));
    plan.phi.push_back(phi);
  }
  return plan;
}

inline SignalCovariances link_one_covariances(const LinkOnePlan& plan, std::size_t position) {
  SignalCovariances c{gram(plan.prec.u_blocks[position]), plan.c_total};
  c.r_d *= plan.beta;
  c.r_i -= c.r_d;
  return c;
}

inline double link_one_relay_rate(const LinkOnePlan& plan, const LegitimateChannels& legit,
                                  std::size_t position, const SignalCovariances& cov) {
  const ComplexMatrix* iri = plan.phi[position] == 1 ? &plan.iri[position] : nullptr;
  return rate_user_mimo(legit.h_relays[plan.relaying[position]], cov.r_d, cov.r_i, iri);
}

inline ComplexMatrix link_one_jamming_at_eave(const LinkOnePlan& plan, const EavesdropperChannels& eaves,
                                              std::size_t e) {
  const std::size_t n_e = eaves.h_eaves.at(e).rows();
  ComplexMatrix delta(n_e, n_e);
  for (std::size_t k : plan.jamming) delta += gram(eaves.h_relay_eave.at(k).at(e));
  delta *= plan.jam_power;
  return delta;
}

// Position p carries a stream for user p mod M and is targeted by
// eavesdropper p mod N.
inline std::vector<RatePair> link_one_rates(const LinkOnePlan& plan, const LegitimateChannels& legit,
                                            const EavesdropperChannels& eaves) {
  std::vector<RatePair> out;
  out.reserve(plan.relaying.size());
  for (std::size_t p = 0; p < plan.relaying.size(); ++p) {
    const auto cov = link_one_covariances(plan, p);
    const std::size_t e = p % eaves.eave_count();
    const ComplexMatrix delta = link_one_jamming_at_eave(plan, eaves, e);
    out.push_back({link_one_relay_rate(plan, legit, p, cov),
                   rate_eave_mimo(eaves.h_eaves[e], cov.r_d, cov.r_i, plan.jamming.empty() ? nullptr : &delta)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Link II

struct LinkTwoPlan {
  std::vector<std::size_t> forwarding;
  Precoder prec;                        // one n_r-wide block per user
  double beta = 0.0;
  ComplexMatrix c_total;
  std::vector<ComplexMatrix> h_users;   // per user, n_r x (S n_k)
};

// Relay -> receiver channel of the whole forwarding set.
inline ComplexMatrix forwarding_channel(const std::vector<std::vector<ComplexMatrix>>& per_relay,
                                        std::span<const std::size_t> forwarding, std::size_t receiver) {
  std::vector<ComplexMatrix> cols;
  cols.reserve(forwarding.size());
  for (std::size_t f : forwarding) cols.push_back(per_relay.at(f).at(receiver));
  return hstack(cols);
}

inline LinkTwoPlan make_link_two_plan(const LegitimateChannels& legit, std::span<const std::size_t> forwarding,
                                      double relay_power) {
  LinkTwoPlan plan;
  plan.forwarding.assign(forwarding.begin(), forwarding.end());
  for (std::size_t u = 0; u < legit.user_count(); ++u)
    plan.h_users.push_back(forwarding_channel(legit.h_relay_user, forwarding, u));
  plan.prec = zf_precoder(vstack(plan.h_users), plan.h_users.front().rows());
  plan.beta = relay_power / frobenius_norm_sq(plan.prec.u_full);
  plan.c_total = gram(plan.prec.u_full);
  plan.c_total *= plan.beta;
  return plan;
}

inline SignalCovariances link_two_covariances(const LinkTwoPlan& plan, std::size_t user) {
  SignalCovariances c{gram(plan.prec.u_blocks[user]), plan.c_total};
  c.r_d *= plan.beta;
  c.r_i -= c.r_d;
  return c;
}

// User u is targeted by eavesdropper u mod N.
inline std::vector<RatePair> link_two_rates(const LinkTwoPlan& plan, const EavesdropperChannels& eaves) {
  std::vector<RatePair> out;
  out.reserve(plan.h_users.size());
  for (std::size_t u = 0; u < plan.h_users.size(); ++u) {
    const auto cov = link_two_covariances(plan, u);
    const ComplexMatrix h_e = forwarding_channel(eaves.h_relay_eave, plan.forwarding, u % eaves.eave_count());
    out.push_back({rate_user_mimo(plan.h_users[u], cov.r_d, cov.r_i), rate_eave_mimo(h_e, cov.r_d, cov.r_i)});
  }
  return out;
}

}  // namespace secrelay

#endif  // SECRELAY_LINK_METRICS_HPP

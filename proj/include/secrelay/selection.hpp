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

// Relay selection criteria. Per-relay criteria (max-min, max-link,
// max-ratio) work on channel gains; subset criteria (OS, SR, E-SR) score a
// whole relaying set. Ties always go to the lowest index.

#ifndef SECRELAY_SELECTION_HPP
#define SECRELAY_SELECTION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "channel.hpp"
#include "link_metrics.hpp"
#include "numerics.hpp"
#include "precoding.hpp"
#include "subsets.hpp"

namespace secrelay {

enum class Link { I, II };

inline const char* link_name(Link l) noexcept { return l == Link::I ? "I" : "II"; }

enum class CriterionId { MaxMin, MaxLink, MaxRatio, OS, SR, ESR };

struct CriterionScore {
  IndexSet relay_or_subset;
  double score = 0.0;
  CriterionId criterion_id = CriterionId::ESR;
};

// No link is admissible for the current buffer occupancy.
class StarvationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Channel gains

// ||H_i||_F^2 for every source -> relay channel.
inline std::vector<double> source_gains(const LegitimateChannels& legit) {
  std::vector<double> g;
  g.reserve(legit.relay_count());
  for (const auto& h : legit.h_relays) g.push_back(frobenius_norm_sq(h));
  return g;
}

// sum_u ||H_{k,u}||_F^2 for every relay k.
inline std::vector<double> forward_gains(const LegitimateChannels& legit) {
  std::vector<double> g;
  g.reserve(legit.relay_count());
  for (const auto& row : legit.h_relay_user) {
    double s = 0.0;
    for (const auto& h : row) s += frobenius_norm_sq(h);
    g.push_back(s);
  }
  return g;
}

inline double source_eave_gain(const EavesdropperChannels& eaves) {
  double s = 0.0;
  for (const auto& h : eaves.h_eaves) s += frobenius_norm_sq(h);
  return s;
}

inline std::vector<double> relay_eave_gains(const EavesdropperChannels& eaves) {
  std::vector<double> g;
  g.reserve(eaves.h_relay_eave.size());
  for (const auto& row : eaves.h_relay_eave) {
    double s = 0.0;
    for (const auto& h : row) s += frobenius_norm_sq(h);
    g.push_back(s);
  }
  return g;
}

// The `count` best-scoring indices among those admissible, in ascending
// index order. Returns fewer when not enough are admissible.
inline IndexSet top_relays(std::span<const double> scores, const std::vector<bool>& admissible, std::size_t count) {
  IndexSet order;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (admissible.empty() || admissible[i]) order.push_back(i);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  if (order.size() > count) order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

// ---------------------------------------------------------------------------
// Per-relay criteria

inline std::size_t max_min_select(std::span<const double> src_gains, std::span<const double> dst_gains) {
  if (src_gains.empty() || src_gains.size() != dst_gains.size())
    throw std::invalid_argument("max_min_select: empty or mismatched gain lists");
  std::size_t best = 0;
  double best_v = std::min(src_gains[0], dst_gains[0]);
  for (std::size_t i = 1; i < src_gains.size(); ++i) {
    const double v = std::min(src_gains[i], dst_gains[i]);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  return best;
}

inline std::size_t max_min_select(const LegitimateChannels& legit) {
  return max_min_select(source_gains(legit), forward_gains(legit));
}

struct LinkChoice {
  std::size_t relay = 0;
  Link link = Link::I;
  bool floored = false;  // an eavesdropper gain hit the denominator floor
};

inline LinkChoice max_link_select(std::span<const double> src_gains, std::span<const double> dst_gains,
                                  std::span<const std::size_t> occupancy, std::size_t capacity) {
  std::optional<LinkChoice> best;
  double best_v = 0.0;
  for (std::size_t i = 0; i < src_gains.size(); ++i) {
    if (occupancy[i] < capacity && (!best || src_gains[i] > best_v)) {
      best = LinkChoice{i, Link::I, false};
      best_v = src_gains[i];
    }
  }
  for (std::size_t i = 0; i < dst_gains.size(); ++i) {
    if (occupancy[i] > 0 && (!best || dst_gains[i] > best_v)) {
      best = LinkChoice{i, Link::II, false};
      best_v = dst_gains[i];
    }
  }
  if (!best) throw StarvationError("max_link_select: no admissible link");
  return *best;
}

inline constexpr double kRatioFloor = 1e-12;

// eta_1 = best admissible source gain over the source -> eavesdropper gain,
// eta_2 = best admissible relay -> user gain over that relay's
// eavesdropper gain. Ties go to Link I.
inline LinkChoice max_ratio_select(std::span<const double> src_gains, double src_eave_gain,
                                   std::span<const double> dst_gains, std::span<const double> dst_eave_gains,
                                   std::span<const std::size_t> occupancy, std::size_t capacity) {
  bool floored = false;
  auto ratio = [&](double num, double den) {
    if (den < kRatioFloor) {
      floored = true;
      den = kRatioFloor;
    }
    return num / den;
  };
  std::optional<std::size_t> best1, best2;
  double eta1 = 0.0, eta2 = 0.0;
  for (std::size_t i = 0; i < src_gains.size(); ++i) {
    if (occupancy[i] >= capacity) continue;
    const double v = ratio(src_gains[i], src_eave_gain);
    if (!best1 || v > eta1) {
      best1 = i;
      eta1 = v;
    }
  }
  for (std::size_t i = 0; i < dst_gains.size(); ++i) {
    if (occupancy[i] == 0) continue;
    const double v = ratio(dst_gains[i], dst_eave_gains[i]);
    if (!best2 || v > eta2) {
      best2 = i;
      eta2 = v;
    }
  }
  if (!best1 && !best2) throw StarvationError("max_ratio_select: no admissible link");
  if (best2 && (!best1 || eta2 > eta1)) return {*best2, Link::II, floored};
  return {*best1, Link::I, floored};
}

// ---------------------------------------------------------------------------
// Subset criteria

// log2 det(I + beta U_p^H R_I^{-1} U_p) with R_I = I + beta sum_{j!=p} U_j U_j^H.
// With a square invertible eavesdropper channel whose noise is referred to
// the transmitter, this is exactly the eavesdropper's rate; it needs no
// eavesdropper CSI.
inline double esr_leakage_term(const Precoder& prec, double beta, std::size_t position) {
  ComplexMatrix r_i = block_covariance(prec, position);
  r_i *= beta;
  r_i.add_identity();
  const ComplexMatrix x = solve_lower(cholesky(r_i), prec.u_blocks[position]);
  ComplexMatrix m = gram(conj_transpose(x));
  m *= beta;
  m.add_identity();
  return log_det_herm(m);
}

inline constexpr double kPaddingRidge = 1e-10;

// Eavesdropper term of the SR criterion on the stacked channel of every
// eavesdropper. A short channel is zero-padded to square and regularized
// with a small ridge.
inline double sr_leakage_term(const ComplexMatrix& h_e, const ComplexMatrix& r_d, const ComplexMatrix& r_i) {
  ComplexMatrix h = h_e;
  const bool padded = h.rows() < h.cols();
  if (padded) {
    ComplexMatrix pad(h.cols() - h.rows(), h.cols());
    const ComplexMatrix parts[] = {h_e, pad};
    h = vstack(parts);
  }
  ComplexMatrix denom = congruence(h, r_i);
  if (padded) denom.add_identity(kPaddingRidge);
  ComplexMatrix numer = denom + congruence(h, r_d);
  return log_det_herm(numer) - log_det_herm(denom);
}

inline ComplexMatrix stacked_eave_channel(const EavesdropperChannels& eaves) { return vstack(eaves.h_eaves); }

// Effective secrecy rate of a Link I plan. Reads no eavesdropper channel.
inline double esr_subset_score(const LinkOnePlan& plan, const LegitimateChannels& legit) {
  double s = 0.0;
  for (std::size_t p = 0; p < plan.relaying.size(); ++p) {
    const auto cov = link_one_covariances(plan, p);
    s += link_one_relay_rate(plan, legit, p, cov) - esr_leakage_term(plan.prec, plan.beta, p);
  }
  return s;
}

// Secrecy-rate criterion using the eavesdropper channels.
inline double sr_subset_score(const LinkOnePlan& plan, const LegitimateChannels& legit,
                              const EavesdropperChannels& eaves) {
  const ComplexMatrix h_e = stacked_eave_channel(eaves);
  double s = 0.0;
  for (std::size_t p = 0; p < plan.relaying.size(); ++p) {
    auto cov = link_one_covariances(plan, p);
    const double legit_rate = link_one_relay_rate(plan, legit, p, cov);
    cov.r_i.add_identity();
    s += legit_rate - sr_leakage_term(h_e, cov.r_d, cov.r_i);
  }
  return s;
}

// E-SR of a Link II plan.
inline double esr_link_two_score(const LinkTwoPlan& plan) {
  double s = 0.0;
  for (std::size_t u = 0; u < plan.h_users.size(); ++u) {
    const auto cov = link_two_covariances(plan, u);
    s += rate_user_mimo(plan.h_users[u], cov.r_d, cov.r_i) - esr_leakage_term(plan.prec, plan.beta, u);
  }
  return s;
}

// SINR-based opportunistic score: sum over positions of
// [log2(1 + G_relay) - log2(1 + G_eave)]^+ from scalar received powers,
// no jamming.
inline double os_subset_score(const LinkOnePlan& plan, const LegitimateChannels& legit,
                              const EavesdropperChannels& eaves, const SignalSet& sig, bool squared = true) {
  double s = 0.0;
  const std::size_t users = legit.user_count();
  for (std::size_t p = 0; p < plan.relaying.size(); ++p) {
    LinkGammas g = compute_gammas(legit, eaves, plan.prec, sig, plan.relaying, p, p % eaves.eave_count(),
                                  p % users, {}, squared);
    g.g_src_relay *= plan.beta;
    g.g_intf_relay *= plan.beta;
    g.g_src_eave *= plan.beta;
    g.g_intf_eave *= plan.beta;
    s += std::max(0.0, std::log2(1.0 + sinr_relay(g, 0, 1.0)) - std::log2(1.0 + sinr_eave(g, 1.0)));
  }
  return s;
}

// Exhaustive OS selection over s-subsets with no jamming.
inline CriterionScore os_select(const LegitimateChannels& legit, const EavesdropperChannels& eaves,
                                const SignalSet& sig, std::size_t s, double source_power) {
  CriterionScore best{{}, -std::numeric_limits<double>::infinity(), CriterionId::OS};
  for_each_subset(legit.relay_count(), s, [&](std::span<const std::size_t> subset) {
    try {
      const auto plan = make_link_one_plan(legit, subset, {}, source_power, 0.0, false, 1.0);
      const double v = os_subset_score(plan, legit, eaves, sig);
      if (v > best.score) best = {IndexSet(subset.begin(), subset.end()), v, CriterionId::OS};
    } catch (const SingularMatrixError&) {
    }
  });
  return best;
}

// K jammers from outside the relaying set, fewest inter-relay interference
// towards the relaying set first.
inline IndexSet select_jammers(const LegitimateChannels& legit, std::span<const std::size_t> relaying,
                               std::size_t k) {
  const std::size_t n = legit.relay_count();
  std::vector<bool> candidate(n, true);
  for (std::size_t a : relaying) candidate.at(a) = false;
  std::vector<double> score(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (!candidate[j]) continue;
    double iri = 0.0;
    for (std::size_t a : relaying) iri += frobenius_norm_sq(legit.relay_relay(j, a));
    score[j] = -iri;
  }
  return top_relays(score, candidate, k);
}

}  // namespace secrelay

#endif  // SECRELAY_SELECTION_HPP

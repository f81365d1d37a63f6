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


#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

namespace secrelay {
namespace {

SystemConfig small_mimo() { return SystemConfig{}; }

TEST(Gammas, ZeroJammingAndIdentityChannel) {
  SystemConfig cfg = siso_preset();
  cfg.n_t = 2;
  cfg.n_i = 2;
  cfg.n_r = 1;
  cfg.m_users = 1;
  cfg.s_select = 1;
  cfg.k_jammers = 1;
  cfg.n_eaves = 1;
  cfg.n_e = 1;
  auto ch = testing::realization(cfg, 1);
  ch.legit.h_relays[0] = ComplexMatrix::identity(2);
  Precoder p;
  p.u_full = ComplexMatrix::identity(2);
  p.u_blocks = {p.u_full};
  auto sig = testing::signals(cfg, 2);
  for (auto& j : sig.j_blocks) j = ComplexMatrix(j.rows(), 1);
  const std::size_t sel[] = {0}, jam[] = {1, 2};
  const auto g = compute_gammas(ch.legit, ch.eaves, p, sig, sel, 0, 0, 0, jam);
  EXPECT_DOUBLE_EQ(g.g_src_relay, 2.0);
  EXPECT_EQ(g.g_jam_relay, 0.0);
  EXPECT_EQ(g.g_jam_eave, 0.0);
  EXPECT_EQ(g.g_intf_relay, 0.0);
}

TEST(Gammas, MatchesRecomputation) {
  const SystemConfig cfg = small_mimo();
  const auto ch = testing::realization(cfg, 3);
  const auto sig = testing::signals(cfg, 3);
  const std::size_t sel[] = {0, 2, 4}, jam[] = {1, 3, 5};
  std::vector<ComplexMatrix> rows;
  for (std::size_t a : sel) rows.push_back(ch.legit.h_relays[a]);
  const auto p = zf_precoder(vstack(rows), 2);
  const auto g = compute_gammas(ch.legit, ch.eaves, p, sig, sel, 1, 2, 0, jam);

  const auto& h = ch.legit.h_relays[2];
  EXPECT_NEAR(g.g_src_relay, frobenius_norm_sq(h * p.u_blocks[1]), 1e-12);
  EXPECT_NEAR(g.g_intf_relay, frobenius_norm_sq(h * p.u_blocks[0]) + frobenius_norm_sq(h * p.u_blocks[2]), 1e-12);
  ComplexMatrix jr(2, 1), je(2, 1);
  for (std::size_t k : jam) {
    jr += ch.legit.relay_relay(k, 2) * sig.j_blocks[k];
    je += ch.eaves.h_relay_eave[k][2] * sig.j_blocks[k];
  }
  EXPECT_NEAR(g.g_jam_relay, frobenius_norm_sq(jr), 1e-12);
  EXPECT_NEAR(g.g_jam_eave, frobenius_norm_sq(je), 1e-12);
  EXPECT_NEAR(g.g_src_eave, frobenius_norm_sq(ch.eaves.h_eaves[2] * p.u_blocks[1]), 1e-12);

  const auto plain = compute_gammas(ch.legit, ch.eaves, p, sig, sel, 1, 2, 0, jam, false);
  EXPECT_NEAR(plain.g_src_relay, std::sqrt(g.g_src_relay), 1e-12);

  const std::size_t bad_jam[] = {2};
  EXPECT_THROW(compute_gammas(ch.legit, ch.eaves, p, sig, sel, 1, 0, 0, bad_jam), std::invalid_argument);
}

TEST(Sinr, Arithmetic) {
  LinkGammas g;
  g.g_src_relay = 4;
  g.g_jam_relay = 2;
  g.g_intf_relay = 1;
  EXPECT_DOUBLE_EQ(sinr_relay(g, 1, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(sinr_relay(g, 0, 1.0), 2.0);
}

TEST(Sinr, CancellationNeverHurts) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    LinkGammas g;
    g.g_src_relay = u(rng);
    g.g_jam_relay = u(rng);
    g.g_intf_relay = u(rng);
    EXPECT_GE(sinr_relay(g, 0, 1.0), sinr_relay(g, 1, 1.0));
  }
}

TEST(Sinr, EavesdropperAndUser) {
  LinkGammas g;
  g.g_src_eave = 3.0;
  EXPECT_DOUBLE_EQ(sinr_eave(g, 2.0), 1.5);
  g.g_jam_eave = 1.0;
  const double low = sinr_eave(g, 2.0);
  g.g_jam_eave = 10.0;
  EXPECT_LT(sinr_eave(g, 2.0), low);
  g.g_intf_eave = 2.0;
  EXPECT_DOUBLE_EQ(sinr_eave(g, 1.0), 3.0 / 13.0);

  g.g_relay_user = 6.0;
  EXPECT_DOUBLE_EQ(sinr_user(g, 2.0), 3.0);
  g.g_resid_user = 4.0;
  EXPECT_DOUBLE_EQ(sinr_user(g, 2.0), 1.0);
}

TEST(IcFeasibility, Cases) {
  EXPECT_EQ(ic_feasibility(ComplexMatrix{{1}}, ComplexMatrix{{0}}, 0.1), 1);
  EXPECT_EQ(ic_feasibility(ComplexMatrix{{1}}, ComplexMatrix{{2}}, 1.0), 0);
  EXPECT_EQ(ic_feasibility(ComplexMatrix{{1}}, ComplexMatrix{{2}}, 2.5), 1);
  EXPECT_THROW(ic_feasibility(ComplexMatrix{{1}}, ComplexMatrix{{1}, {1}}, 1.0), ShapeError);
}

TEST(IcFeasibility, MatchesDirectDeterminant) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto h = testing::random_matrix(2, 6, 700 + seed);
    const auto k = testing::random_matrix(2, 6, 800 + seed);
    ComplexMatrix a = gram(h);
    a.add_identity();
    const double ratio = std::abs(det(gram(k)) / det(a));
    for (double g0 : {0.05, 0.5, 2.0}) EXPECT_EQ(ic_feasibility(h, k, g0), ratio >= g0 ? 0 : 1);
  }
}

TEST(MimoRate, ZeroChannelAndScalarReduction) {
  const ComplexMatrix c = ComplexMatrix::identity(2);
  EXPECT_EQ(rate_user_mimo(ComplexMatrix::zeros(2, 2), c, c), 0.0);
  const ComplexMatrix h{{Complex(1.0, 2.0)}}, cd{{3.0}}, ci{{0.5}}, q{{0.7}};
  const double g = std::norm(h(0, 0));
  EXPECT_NEAR(rate_user_mimo(h, cd, ci, &q), std::log2(1.0 + g * 3.0 / (1.0 + 0.7 + g * 0.5)), 1e-12);
  EXPECT_NEAR(rate_eave_mimo(h, cd, ci), std::log2(1.0 + g * 3.0 / (1.0 + g * 0.5)), 1e-12);
}

TEST(MimoRate, MonotoneInPower) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto h = testing::random_matrix(2, 4, 900 + seed);
    const auto p = zf_precoder(testing::random_matrix(4, 4, 5000 + seed), 2);
    const auto lo = signal_covariances(p, 0, 1.0);
    ComplexMatrix d2 = lo.r_d;
    d2 *= 2.0;
    EXPECT_GE(rate_user_mimo(h, d2, lo.r_i) + 1e-12, rate_user_mimo(h, lo.r_d, lo.r_i));
  }
}

TEST(MimoRate, EavesdropperJammingReducesRate) {
  const auto h = testing::random_matrix(2, 4, 1);
  const auto p = zf_precoder(testing::random_matrix(4, 4, 2), 2);
  const auto c = signal_covariances(p, 0);
  EXPECT_EQ(rate_eave_mimo(ComplexMatrix::zeros(2, 4), c.r_d, c.r_i), 0.0);
  const ComplexMatrix small = ComplexMatrix::identity(2), big = 5.0 * ComplexMatrix::identity(2);
  EXPECT_LT(rate_eave_mimo(h, c.r_d, c.r_i, &big), rate_eave_mimo(h, c.r_d, c.r_i, &small));
}

TEST(SecrecyRate, Hinge) {
  const RatePair a[] = {{3, 1}};
  const RatePair b[] = {{1, 3}};
  const RatePair mixed[] = {{3, 1}, {1, 3}};
  EXPECT_EQ(secrecy_rate(a), 2.0);
  EXPECT_EQ(secrecy_rate(b), 0.0);
  EXPECT_EQ(secrecy_rate(mixed), 2.0);
}

TEST(SecrecyCapacity, Siso) {
  EXPECT_DOUBLE_EQ(secrecy_capacity_siso(1.0, 1.0, 0.0, 0.0, 3.0), 1.0);
  EXPECT_EQ(secrecy_capacity_siso(0.1, 0.1, 5.0, 5.0, 3.0), 0.0);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Complex hsr(n(rng), n(rng)), hrd(n(rng), n(rng)), hse(n(rng), n(rng)), hre(n(rng), n(rng));
    const double p = 4.0;
    // Capacity of the weaker hop minus the leakage term.
    const double first = 0.5 * std::log2(std::min(1 + p * std::norm(hsr), 1 + p * std::norm(hrd)));
    const double second = 0.5 * std::log2(1 + p * std::norm(hse) + p * std::norm(hre));
    EXPECT_NEAR(secrecy_capacity_siso(hsr, hrd, hse, hre, p), std::max(0.0, first - second), 1e-12);
  }
}

TEST(SecrecyCapacity, Mimo) {
  EXPECT_DOUBLE_EQ(secrecy_capacity_mimo(16.0, 16.0, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(secrecy_capacity_mimo(4.0, 16.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(secrecy_capacity_mimo(16.0, 4.0, 0.0), 1.0);
  EXPECT_EQ(secrecy_capacity_mimo(4.0, 4.0, 3.0), 0.0);
  EXPECT_THROW(secrecy_capacity_mimo(0.0, 4.0, 0.0), DomainError);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = testing::random_hpd(3, 40 + seed), b = testing::random_hpd(3, 60 + seed);
    const auto e = testing::random_hpd(3, 80 + seed);
    const double mi = det(a).real(), mr = det(b).real(), le = log_det_herm(e);
    EXPECT_NEAR(secrecy_capacity_mimo(mi, mr, le),
                std::max(0.0, 0.5 * std::log2(std::min(mi, mr)) - 0.5 * std::log2(det(e).real())), 1e-9);
  }
}

TEST(BufferGainBound, Cases) {
  EXPECT_EQ(buffer_gain_bound(3.0, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(buffer_gain_bound(4.0, 1.0), 1.0);
  EXPECT_EQ(buffer_gain_bound(1.0, 4.0), 0.0);
  EXPECT_THROW(buffer_gain_bound(0.5, 1.0), DomainError);
}

TEST(OpportunisticSecrecy, Forms) {
  EXPECT_DOUBLE_EQ(opportunistic_secrecy(1.5, true), 3.0);
  EXPECT_THROW(opportunistic_secrecy(1.5, false), std::invalid_argument);

  const auto h = testing::random_matrix(2, 4, 3);
  const auto p = zf_precoder(testing::random_matrix(4, 4, 4), 2);
  const ComplexMatrix signal = congruence(h, gram(p.u_blocks[0]));
  OpportunisticTerms zero{signal, ComplexMatrix::zeros(2, 2), 0.25};
  ComplexMatrix ident = signal;
  ident.add_identity();
  EXPECT_NEAR(opportunistic_secrecy(0.0, false, zero), log_det_herm(ident) - 0.25, 1e-12);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    OpportunisticTerms t{signal, gram(testing::random_matrix(2, 2, 100 + seed)), 0.25};
    EXPECT_LE(opportunistic_secrecy(0.0, false, t), opportunistic_secrecy(0.0, false, zero) + 1e-12);
  }
}

TEST(LinkOnePlan, PowerAndInterference) {
  const SystemConfig cfg = small_mimo();
  const auto ch = testing::realization(cfg, 7);
  const std::size_t rel[] = {0, 1, 2}, jam[] = {3, 4, 5};
  const auto plan = make_link_one_plan(ch.legit, rel, jam, 8.0, 12.0, true, cfg.gamma0);
  EXPECT_NEAR(trace(plan.c_total).real(), 8.0, 1e-9);
  EXPECT_NEAR(plan.jam_power * 3 * cfg.n_k, 12.0, 1e-12);
  ComplexMatrix iri(2, 2);
  for (std::size_t k : jam) iri += gram(ch.legit.relay_relay(k, 1));
  iri *= plan.jam_power;
  EXPECT_LT(frobenius_norm(plan.iri[1] - iri), 1e-12);

  const auto no_ic = make_link_one_plan(ch.legit, rel, jam, 8.0, 12.0, false, cfg.gamma0);
  for (int phi : no_ic.phi) EXPECT_EQ(phi, 1);
  const auto ic_rates = link_one_rates(plan, ch.legit, ch.eaves);
  const auto noic_rates = link_one_rates(no_ic, ch.legit, ch.eaves);
  for (std::size_t p = 0; p < 3; ++p) EXPECT_GE(ic_rates[p].rate_user + 1e-12, noic_rates[p].rate_user);
}

TEST(LinkTwoPlan, ZeroForcesUsers) {
  const SystemConfig cfg = small_mimo();
  const auto ch = testing::realization(cfg, 8);
  const std::size_t fwd[] = {1, 3, 5};
  const auto plan = make_link_two_plan(ch.legit, fwd, 10.0);
  EXPECT_NEAR(trace(plan.c_total).real(), 10.0, 1e-9);
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 3; ++v) {
      const double leak = frobenius_norm(plan.h_users[u] * plan.prec.u_blocks[v]);
      if (u == v) EXPECT_NEAR(leak, std::sqrt(2.0), 1e-9);
      else EXPECT_LT(leak, 1e-9);
    }
  EXPECT_EQ(link_two_rates(plan, ch.eaves).size(), 3u);
}

}  // namespace
}  // namespace secrelay

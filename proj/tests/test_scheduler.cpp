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

using Score = std::function<std::optional<double>(std::span<const std::size_t>)>;

IndexSet no_jammers(std::span<const std::size_t>) { return {}; }

// Score table keyed by subset, values from a fixed generator.
Score table_score(std::uint64_t seed) {
  return [seed](std::span<const std::size_t> s) -> std::optional<double> {
    std::uint64_t h = seed;
    for (std::size_t a : s) h = mix64(h ^ (a + 1));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  };
}

TEST(EnumerateSubsets, Cases) {
  EXPECT_EQ(enumerate_subsets(3, 3), (std::vector<IndexSet>{{0, 1, 2}}));
  const auto four = enumerate_subsets(4, 2);
  ASSERT_EQ(four.size(), 6u);
  EXPECT_EQ(four.front(), (IndexSet{0, 1}));
  EXPECT_EQ(four.back(), (IndexSet{2, 3}));
  EXPECT_EQ(enumerate_subsets(10, 3).size(), 120u);
}

TEST(ComplexityCounts, Formulas) {
  EXPECT_EQ(complexity_counts(10, 3), (ComplexityCounts{120, 27}));
  EXPECT_EQ(complexity_counts(8, 2), (ComplexityCounts{28, 15}));
  for (std::size_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(complexity_counts(n, 1), (ComplexityCounts{n, n}));
    EXPECT_EQ(complexity_counts(n, n), (ComplexityCounts{1, n * (n + 1) / 2}));
  }
  EXPECT_THROW(complexity_counts(3, 4), std::invalid_argument);
}

TEST(InitialState, FullSetAndDominantRelay) {
  SystemConfig cfg;
  auto ch = testing::realization(cfg, 1);
  EXPECT_EQ(initial_state(ch.legit, cfg.s_total), (IndexSet{0, 1, 2, 3, 4, 5}));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto c = testing::realization(cfg, 100 + seed);
    c.legit.h_relays[4] *= 10.0;
    const auto pick = initial_state(c.legit, cfg.s_select);
    EXPECT_NE(std::find(pick.begin(), pick.end(), 4u), pick.end());
  }
}

TEST(InitialState, PermutationConsistent) {
  SystemConfig cfg;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto ch = testing::realization(cfg, 200 + seed);
    auto pick = initial_state(ch.legit, cfg.s_select);
    const auto swapped = testing::swap_relays(ch, 1, 4);
    for (auto& a : pick) a = a == 1 ? 4 : a == 4 ? 1 : a;
    std::sort(pick.begin(), pick.end());
    EXPECT_EQ(initial_state(swapped.legit, cfg.s_select), pick);
  }
}

TEST(RjfsSelect, ForcedSubset) {
  const auto out = rjfs_select(3, 3, table_score(1), no_jammers);
  EXPECT_EQ(out.relaying_set, (IndexSet{0, 1, 2}));
  EXPECT_EQ(out.visited_sets, 1u);
}

TEST(RjfsSelect, DominantSubset) {
  const auto score = [](std::span<const std::size_t> s) -> std::optional<double> {
    return IndexSet(s.begin(), s.end()) == IndexSet{1, 4} ? 100.0 : 1.0;
  };
  EXPECT_EQ(rjfs_select(6, 2, score, no_jammers).relaying_set, (IndexSet{1, 4}));
}

TEST(RjfsSelect, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto score = table_score(seed);
    IndexSet want;
    double best = -1.0;
    for (const auto& s : enumerate_subsets(6, 3)) {
      const double v = *score(s);
      if (v > best) best = v, want = s;
    }
    const auto out = rjfs_select(6, 3, score, [](std::span<const std::size_t> r) {
      IndexSet j;
      for (std::size_t k = 0; k < 6; ++k)
        if (std::find(r.begin(), r.end(), k) == r.end()) j.push_back(k);
      return j;
    });
    EXPECT_EQ(out.relaying_set, want);
    EXPECT_EQ(out.jamming_set.size(), 3u);
    EXPECT_DOUBLE_EQ(out.eta_link_i, best);
  }
}

TEST(RjfsSelect, InfeasibleEverywhereIsDegenerate) {
  const auto none = [](std::span<const std::size_t>) -> std::optional<double> { return std::nullopt; };
  EXPECT_TRUE(rjfs_select(5, 2, none, no_jammers).degenerate);
}

TEST(GreedyRjfs, SinglePickEqualsExhaustive) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto score = table_score(seed);
    EXPECT_EQ(greedy_rjfs_select(7, 1, score, no_jammers).relaying_set,
              rjfs_select(7, 1, score, no_jammers).relaying_set);
  }
  EXPECT_EQ(greedy_rjfs_select(10, 3, table_score(1), no_jammers).visited_sets, 27u);
}

TEST(GreedyRjfs, NeverBeatsExhaustive) {
  SystemConfig cfg;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto ch = testing::realization(cfg, 300 + seed);
    const auto score = [&](std::span<const std::size_t> rel) -> std::optional<double> {
      try {
        const auto jam = select_jammers(ch.legit, rel, cfg.k_jammers);
        return esr_subset_score(make_link_one_plan(ch.legit, rel, jam, 10.0, 10.0, true, cfg.gamma0), ch.legit);
      } catch (const SingularMatrixError&) {
        return std::nullopt;
      }
    };
    const auto jam = [](std::span<const std::size_t>) { return IndexSet{}; };
    const auto g = greedy_rjfs_select(6, 3, score, jam);
    const auto e = rjfs_select(6, 3, score, jam);
    EXPECT_LE(*score(g.relaying_set), e.eta_link_i + 1e-12);
  }
}

class BfSelect : public ::testing::Test {
 protected:
  Score one = [](std::span<const std::size_t>) -> std::optional<double> { return 2.0; };
  Score two = [](std::span<const std::size_t>) -> std::optional<double> { return 3.0; };
  std::vector<double> fwd{1, 2, 3, 4};
};

TEST_F(BfSelect, EmptyBuffersForceLinkOne) {
  for (bool greedy : {false, true}) {
    BufferState buf(4, 2);
    LinkCounter ctr;
    const auto out = bf_rjfs_select(4, 2, one, two, no_jammers, fwd, buf, ctr, greedy);
    EXPECT_EQ(out.link, Link::I);
  }
}

TEST_F(BfSelect, FullBuffersForceLinkTwo) {
  for (bool greedy : {false, true}) {
    BufferState buf(4, 1);
    for (std::size_t k = 0; k < 4; ++k) buf.push(k, {ComplexMatrix{{1}}, 0});
    LinkCounter ctr;
    const auto out = bf_rjfs_select(4, 2, two, one, no_jammers, fwd, buf, ctr, greedy);
    EXPECT_EQ(out.link, Link::II);
    EXPECT_EQ(out.relaying_set, (IndexSet{2, 3}));
  }
}

TEST_F(BfSelect, LargerScoreWins) {
  BufferState buf(4, 3);
  for (std::size_t k = 0; k < 4; ++k) buf.push(k, {ComplexMatrix{{1}}, 0});
  LinkCounter ctr;
  const auto out = bf_rjfs_select(4, 2, one, two, no_jammers, fwd, buf, ctr);
  EXPECT_EQ(out.link, Link::II);
  EXPECT_EQ(out.eta_link_i, 2.0);
  EXPECT_EQ(out.eta_link_ii, 3.0);
}

TEST_F(BfSelect, GreedyEqualsExhaustiveWhenForced) {
  SystemConfig cfg;
  cfg.s_total = 3;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    BufferState buf(3, 2);
    LinkCounter a, b;
    const auto s1 = table_score(seed), s2 = table_score(seed + 99);
    const std::vector<double> g{1, 2, 3};
    const auto x = bf_rjfs_select(3, 3, s1, s2, no_jammers, g, buf, a, false);
    const auto y = greedy_bf_rjfs_select(3, 3, s1, s2, no_jammers, g, buf, b);
    EXPECT_EQ(x.relaying_set, y.relaying_set);
    EXPECT_EQ(x.link, y.link);
  }
}

TEST_F(BfSelect, StarvationCounterForcesSwitch) {
  BufferState buf(4, 100);
  for (std::size_t k = 0; k < 4; ++k) buf.push(k, {ComplexMatrix{{1}}, 0});
  LinkCounter ctr{0, 5, Link::I};
  std::size_t run = 0;
  for (int t = 0; t < 12; ++t) {
    const auto out = bf_rjfs_select(4, 2, two, one, no_jammers, fwd, buf, ctr);
    run = out.link == Link::I ? run + 1 : 0;
    EXPECT_LE(run, 5u);
  }
}

TEST(Buffer, PushPopContract) {
  BufferState buf(2, 3);
  buf.push(0, {ComplexMatrix{{1}}, 1});
  EXPECT_EQ(buf.size(0), 1u);
  buf.push(0, {ComplexMatrix{{2}}, 2});
  buf.push(0, {ComplexMatrix{{3}}, 3});
  EXPECT_TRUE(buf.full(0));
  EXPECT_THROW(buf.push(0, {ComplexMatrix{{4}}, 4}), BufferOverflowError);
  EXPECT_EQ(buf.pop(0).slot, 1u);
  EXPECT_THROW(buf.push(0, {ComplexMatrix{{4}}, 3}), std::invalid_argument);
  EXPECT_THROW(buf.pop(1), BufferUnderflowError);
  EXPECT_THROW(BufferState(2, 0), std::invalid_argument);
}

TEST(Buffer, ValueSemanticsWrappers) {
  BufferState empty(1, 2);
  const auto one = buffer_push(empty, 0, {ComplexMatrix{{1}}, 0});
  EXPECT_TRUE(empty.empty(0));
  auto [p, rest] = buffer_pop(one, 0);
  EXPECT_EQ(p.signal, ComplexMatrix{{1}});
  EXPECT_TRUE(rest.empty(0));
  EXPECT_EQ(one.size(0), 1u);
  EXPECT_THROW(buffer_pop(rest, 0), BufferUnderflowError);
}

TEST(Buffer, RandomSequencesKeepInvariants) {
  std::mt19937_64 rng(7);
  BufferState buf(4, 3);
  std::vector<std::deque<std::size_t>> model(4);
  for (std::size_t t = 1; t <= 20000; ++t) {
    const std::size_t k = rng() % 4;
    if (rng() % 2) {
      if (model[k].size() < 3) {
        buf.push(k, {ComplexMatrix{}, t});
        model[k].push_back(t);
      } else {
        EXPECT_THROW(buf.push(k, {ComplexMatrix{}, t}), BufferOverflowError);
      }
    } else if (!model[k].empty()) {
      EXPECT_EQ(buf.pop(k).slot, model[k].front());
      model[k].pop_front();
    } else {
      EXPECT_THROW(buf.pop(k), BufferUnderflowError);
    }
    EXPECT_EQ(buf.size(k), model[k].size());
  }
}

TEST(LinkCounter, SwitchAfterLimit) {
  LinkCounter c{0, 5, Link::I};
  for (int i = 0; i < 4; ++i) c.record(Link::I);
  EXPECT_FALSE(c.must_switch(Link::I));
  c.record(Link::I);
  EXPECT_TRUE(c.must_switch(Link::I));
  EXPECT_FALSE(c.must_switch(Link::II));
  c.record(Link::II);
  EXPECT_EQ(c.consecutive_same_link, 1u);
}

}  // namespace
}  // namespace secrelay

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

// Relaying/jamming function selection: exhaustive and greedy subset search,
// the per-relay packet buffers and the link-starvation counter.
//
// The search routines are templates over the scoring callables so the same
// code drives E-SR, SR and OS scoring and can be fed injected scores in
// tests. A score callable maps a relay subset to std::optional<double>;
// std::nullopt marks an infeasible subset (e.g. a singular ZF channel).

#ifndef SECRELAY_SCHEDULER_HPP
#define SECRELAY_SCHEDULER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "channel.hpp"
#include "numerics.hpp"
#include "selection.hpp"
#include "subsets.hpp"

namespace secrelay {

inline std::vector<IndexSet> enumerate_subsets(std::size_t s_total, std::size_t s) {
  std::vector<IndexSet> out;
  out.reserve(binomial(s_total, s));
  for_each_subset(s_total, s, [&](std::span<const std::size_t> v) { out.emplace_back(v.begin(), v.end()); });
  return out;
}

struct ComplexityCounts {
  std::uint64_t exhaustive = 0;
  std::uint64_t greedy = 0;
  friend bool operator==(const ComplexityCounts&, const ComplexityCounts&) = default;
};

inline ComplexityCounts complexity_counts(std::size_t s_total, std::size_t s) {
  if (s > s_total) throw std::invalid_argument("complexity_counts: s > s_total");
  const std::uint64_t n = s_total, k = s;
  return {binomial(n, k), n * k - k * (k - 1) / 2};
}

// Subset maximizing det(H_Omega H_Omega^H) over the stacked source -> relay
// channels. Used for the first slot, where no jamming takes place.
inline IndexSet initial_state(const LegitimateChannels& legit, std::size_t s) {
  IndexSet best;
  double best_v = -std::numeric_limits<double>::infinity();
  std::vector<ComplexMatrix> rows;
  for_each_subset(legit.relay_count(), s, [&](std::span<const std::size_t> subset) {
    rows.clear();
    for (std::size_t a : subset) rows.push_back(legit.h_relays[a]);
    const double v = det(gram(vstack(rows))).real();
    if (v > best_v) {
      best_v = v;
      best.assign(subset.begin(), subset.end());
    }
  });
  return best;
}

// ---------------------------------------------------------------------------
// Buffers

struct Packet {
  ComplexMatrix signal;  // received vector y_i
  std::size_t slot = 0;
};

class BufferOverflowError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class BufferUnderflowError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class BufferState {
 public:
  BufferState(std::size_t relays, std::size_t capacity) : queues_(relays), capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("BufferState: capacity must be >= 1");
  }

  std::size_t relays() const noexcept { return queues_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  std::size_t size(std::size_t relay) const { return queues_.at(relay).size(); }
  bool full(std::size_t relay) const { return size(relay) >= capacity_; }
  bool empty(std::size_t relay) const { return queues_.at(relay).empty(); }
  const std::deque<Packet>& queue(std::size_t relay) const { return queues_.at(relay); }

  std::vector<std::size_t> occupancy() const {
    std::vector<std::size_t> o;
    o.reserve(queues_.size());
    for (const auto& q : queues_) o.push_back(q.size());
    return o;
  }

  void push(std::size_t relay, Packet packet) {
    auto& q = queues_.at(relay);
    if (q.size() >= capacity_) throw BufferOverflowError("buffer of relay " + std::to_string(relay) + " is full");
    if (!q.empty() && packet.slot <= q.back().slot)
      throw std::invalid_argument("buffer of relay " + std::to_string(relay) + ": packet slot not increasing");
    q.push_back(std::move(packet));
  }

  Packet pop(std::size_t relay) {
    auto& q = queues_.at(relay);
    if (q.empty()) throw BufferUnderflowError("buffer of relay " + std::to_string(relay) + " is empty");
    Packet p = std::move(q.front());
    q.pop_front();
    return p;
  }

 private:
  std::vector<std::deque<Packet>> queues_;
  std::size_t capacity_;
};

inline BufferState buffer_push(BufferState buf, std::size_t relay, Packet packet) {
  buf.push(relay, std::move(packet));
  return buf;
}

inline std::pair<Packet, BufferState> buffer_pop(BufferState buf, std::size_t relay) {
  Packet p = buf.pop(relay);
  return {std::move(p), std::move(buf)};
}

// Consecutive uses of the same link; once it reaches the limit the other
// link is activated if it can be.
struct LinkCounter {
  std::size_t consecutive_same_link = 0;
  std::size_t limit = 5;
  Link last = Link::I;

  bool must_switch(Link preferred) const noexcept {
    return consecutive_same_link >= limit && last == preferred;
  }

  void record(Link l) noexcept {
    if (consecutive_same_link > 0 && l == last) {
      consecutive_same_link = std::min(consecutive_same_link + 1, limit);
    } else {
      last = l;
      consecutive_same_link = 1;
    }
  }
};

// ---------------------------------------------------------------------------
// Search

struct SearchResult {
  IndexSet subset;
  double score = 0.0;
  bool feasible = false;
};

// Argmax over all s-subsets in lexicographic order; the first maximum wins.
// Subsets containing an inadmissible relay are skipped.
template <class Score>
SearchResult exhaustive_search(std::size_t s_total, std::size_t s, Score&& score,
                               const std::vector<bool>& admissible = {}) {
  SearchResult best;
  for_each_subset(s_total, s, [&](std::span<const std::size_t> subset) {
    if (!admissible.empty())
      for (std::size_t a : subset)
        if (!admissible[a]) return;
    const std::optional<double> v = score(subset);
    if (v && (!best.feasible || *v > best.score)) {
      best.subset.assign(subset.begin(), subset.end());
      best.score = *v;
      best.feasible = true;
    }
  });
  return best;
}

// S rounds; each adds the remaining relay whose addition scores best.
template <class Score>
SearchResult greedy_search(std::size_t s_total, std::size_t s, Score&& score,
                           const std::vector<bool>& admissible = {}) {
  if (s > s_total) throw std::invalid_argument("greedy_search: s > s_total");
  SearchResult out;
  IndexSet chosen;
  std::vector<bool> taken(s_total, false);
  IndexSet trial;
  double last_score = 0.0;
  bool last_feasible = false;
  for (std::size_t round = 0; round < s; ++round) {
    std::optional<std::size_t> pick;
    std::optional<std::size_t> fallback;
    double pick_score = 0.0;
    for (std::size_t m = 0; m < s_total; ++m) {
      if (taken[m] || (!admissible.empty() && !admissible[m])) continue;
      if (!fallback) fallback = m;
      trial = chosen;
      trial.insert(std::upper_bound(trial.begin(), trial.end(), m), m);
      const std::optional<double> v = score(std::span<const std::size_t>(trial));
      if (v && (!pick || *v > pick_score)) {
        pick = m;
        pick_score = *v;
      }
    }
    if (!pick && !fallback) return out;  // not enough admissible relays
    const std::size_t m = pick ? *pick : *fallback;
    taken[m] = true;
    chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), m), m);
    last_feasible = pick.has_value();
    last_score = pick_score;
  }
  out.subset = std::move(chosen);
  out.score = last_score;
  out.feasible = last_feasible;
  return out;
}

struct SelectionOutcome {
  IndexSet relaying_set;
  IndexSet jamming_set;
  Link link = Link::I;
  double eta_link_i = 0.0;
  double eta_link_ii = 0.0;
  std::uint64_t visited_sets = 0;
  bool degenerate = false;
};

// Memoryless relaying/jamming selection: best relaying set for Link I by
// exhaustive search. `jammers` maps a relaying set to its jamming set.
template <class ScoreI, class Jammers>
SelectionOutcome rjfs_select(std::size_t s_total, std::size_t s, ScoreI&& score, Jammers&& jammers) {
  SelectionOutcome out;
  out.visited_sets = complexity_counts(s_total, s).exhaustive;
  const SearchResult r = exhaustive_search(s_total, s, score);
  out.degenerate = !r.feasible;
  if (r.feasible) {
    out.relaying_set = r.subset;
    out.jamming_set = jammers(std::span<const std::size_t>(r.subset));
    out.eta_link_i = r.score;
  }
  return out;
}

template <class ScoreI, class Jammers>
SelectionOutcome greedy_rjfs_select(std::size_t s_total, std::size_t s, ScoreI&& score, Jammers&& jammers) {
  SelectionOutcome out;
  out.visited_sets = complexity_counts(s_total, s).greedy;
  const SearchResult r = greedy_search(s_total, s, score);
  out.degenerate = !r.feasible;
  if (r.feasible) {
    out.relaying_set = r.subset;
    out.jamming_set = jammers(std::span<const std::size_t>(r.subset));
    out.eta_link_i = r.score;
  }
  return out;
}

// Buffer-aided selection. Link I may use only relays with room in their
// buffer; Link II forwards from the S non-empty relays with the strongest
// relay -> user channels. The link with the larger score is used unless
// the counter forces a switch.
template <class ScoreI, class ScoreII, class Jammers>
SelectionOutcome bf_rjfs_select(std::size_t s_total, std::size_t s, ScoreI&& score_i, ScoreII&& score_ii,
                                Jammers&& jammers, std::span<const double> forward_gain, const BufferState& buf,
                                LinkCounter& ctr, bool greedy = false) {
  SelectionOutcome out;
  const auto counts = complexity_counts(s_total, s);
  out.visited_sets = greedy ? counts.greedy : counts.exhaustive;

  std::vector<bool> room(s_total), loaded(s_total);
  std::size_t n_room = 0, n_loaded = 0;
  for (std::size_t k = 0; k < s_total; ++k) {
    room[k] = !buf.full(k);
    loaded[k] = !buf.empty(k);
    n_room += room[k];
    n_loaded += loaded[k];
  }

  SearchResult one;
  if (n_room >= s) one = greedy ? greedy_search(s_total, s, score_i, room) : exhaustive_search(s_total, s, score_i, room);
  IndexSet forwarding;
  std::optional<double> two;
  if (n_loaded >= s) {
    forwarding = top_relays(forward_gain, loaded, s);
    two = score_ii(std::span<const std::size_t>(forwarding));
  }
  out.eta_link_i = one.feasible ? one.score : 0.0;
  out.eta_link_ii = two ? *two : 0.0;

  if (!one.feasible && !two) {
    out.degenerate = true;
    return out;
  }
  Link link;
  if (!two) link = Link::I;
  else if (!one.feasible) link = Link::II;
  else link = out.eta_link_ii > out.eta_link_i ? Link::II : Link::I;
  const bool other_ok = link == Link::I ? two.has_value() : one.feasible;
  if (ctr.must_switch(link) && other_ok) link = link == Link::I ? Link::II : Link::I;
  ctr.record(link);

  out.link = link;
  if (link == Link::I) {
    out.relaying_set = one.subset;
    out.jamming_set = jammers(std::span<const std::size_t>(one.subset));
  } else {
    out.relaying_set = forwarding;
  }
  return out;
}

template <class ScoreI, class ScoreII, class Jammers>
SelectionOutcome greedy_bf_rjfs_select(std::size_t s_total, std::size_t s, ScoreI&& score_i, ScoreII&& score_ii,
                                       Jammers&& jammers, std::span<const double> forward_gain,
                                       const BufferState& buf, LinkCounter& ctr) {
  return bf_rjfs_select(s_total, s, score_i, score_ii, jammers, forward_gain, buf, ctr, true);
}

}  // namespace secrelay

#endif  // SECRELAY_SCHEDULER_HPP

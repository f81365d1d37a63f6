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

// Monte Carlo driver.
//
// Every slot draws a fresh block-fading realization from a generator keyed
// on (seed, trial, slot), so different algorithms and sweep points see the
// same channels. Trials run on a worker pool and are reduced in trial order.

#ifndef SECRELAY_SIM_HPP
#define SECRELAY_SIM_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "channel.hpp"
#include "config.hpp"
#include "link_metrics.hpp"
#include "numerics.hpp"
#include "precoding.hpp"
#include "scheduler.hpp"
#include "selection.hpp"

namespace secrelay {

enum class AlgorithmKind { MaxMin, MaxLink, MaxRatio, OS, SR, RJFS, BfRjfs, GreedyRjfs, GreedyBfRjfs };

class UnknownAlgorithmError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Algorithm {
  AlgorithmKind kind = AlgorithmKind::RJFS;
  bool ic = true;

  static constexpr std::pair<AlgorithmKind, const char*> kNames[] = {
      {AlgorithmKind::MaxMin, "maxmin"},   {AlgorithmKind::MaxLink, "maxlink"},
      {AlgorithmKind::MaxRatio, "maxratio"}, {AlgorithmKind::OS, "os"},
      {AlgorithmKind::SR, "sr"},           {AlgorithmKind::RJFS, "rjfs"},
      {AlgorithmKind::BfRjfs, "bf-rjfs"},  {AlgorithmKind::GreedyRjfs, "greedy-rjfs"},
      {AlgorithmKind::GreedyBfRjfs, "greedy-bf-rjfs"}};

  // "<name>" or "<name>-noic".
  static Algorithm parse(const std::string& text) {
    std::string base = text;
    bool ic = true;
    constexpr std::string_view suffix = "-noic";
    if (base.size() > suffix.size() && base.ends_with(suffix)) {
      base.resize(base.size() - suffix.size());
      ic = false;
    }
    for (const auto& [kind, name] : kNames)
      if (base == name) return {kind, ic};
    throw UnknownAlgorithmError("unknown algorithm '" + text + "'");
  }

  std::string name() const {
    for (const auto& [kind_, n] : kNames)
      if (kind_ == kind) return std::string(n) + (ic ? "" : "-noic");
    return "?";
  }

  bool uses_jamming() const noexcept {
    return kind == AlgorithmKind::SR || kind == AlgorithmKind::RJFS || kind == AlgorithmKind::BfRjfs ||
           kind == AlgorithmKind::GreedyRjfs || kind == AlgorithmKind::GreedyBfRjfs;
  }

  bool greedy() const noexcept { return kind == AlgorithmKind::GreedyRjfs || kind == AlgorithmKind::GreedyBfRjfs; }

  bool buffer_aided(const SystemConfig& cfg) const noexcept {
    if (kind == AlgorithmKind::MaxLink || kind == AlgorithmKind::MaxRatio) return true;
    if (kind == AlgorithmKind::BfRjfs || kind == AlgorithmKind::GreedyBfRjfs) return cfg.buffer_len > 1;
    return false;
  }

  friend bool operator==(const Algorithm&, const Algorithm&) = default;
};

inline std::vector<Algorithm> parse_algorithms(const std::string& csv) {
  std::vector<Algorithm> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t end = std::min(csv.find(',', start), csv.size());
    std::string item = csv.substr(start, end - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(Algorithm::parse(item));
    start = end + 1;
  }
  if (out.empty()) throw UnknownAlgorithmError("empty algorithm list");
  return out;
}

// Subsets examined per selection.
inline std::uint64_t visited_sets_for(const Algorithm& a, const SystemConfig& cfg) {
  const auto c = complexity_counts(cfg.s_total, cfg.s_select);
  switch (a.kind) {
    case AlgorithmKind::MaxMin:
    case AlgorithmKind::MaxLink:
    case AlgorithmKind::MaxRatio:
      return cfg.s_total;
    case AlgorithmKind::GreedyRjfs:
    case AlgorithmKind::GreedyBfRjfs:
      return c.greedy;
    default:
      return c.exhaustive;
  }
}

inline double snr_to_power(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

// ---------------------------------------------------------------------------
// One slot

struct SlotState {
  BufferState buffers;
  LinkCounter counter;
  IndexSet pending;  // relays holding the last Link I packets (memoryless)
  std::size_t slot = 0;

  explicit SlotState(const SystemConfig& cfg)
      : buffers(cfg.s_total, cfg.buffer_len), counter{0, cfg.eta_l_max, Link::I} {}
};

struct SlotResult {
  double secrecy = 0.0;
  Link link = Link::I;
  IndexSet relaying;
  IndexSet jamming;
  std::uint64_t visited = 0;
  std::size_t ic_events = 0;
  std::size_t redraws = 0;
  bool degenerate = false;
};

inline constexpr std::size_t kMaxRedraws = 10;
inline constexpr std::uint64_t kChannelStream = 0;
inline constexpr std::uint64_t kSignalStream = 1;

namespace detail {

inline bool rjfs_family(const Algorithm& a) { return a.uses_jamming(); }

struct SlotScorers {
  const SystemConfig& cfg;
  const ChannelRealization& chan;
  bool ic;

  IndexSet jammers(std::span<const std::size_t> relaying) const {
    return select_jammers(chan.legit, relaying, cfg.k_jammers);
  }

  LinkOnePlan plan_one(std::span<const std::size_t> relaying, std::span<const std::size_t> jamming) const {
    return make_link_one_plan(chan.legit, relaying, jamming, cfg.source_power(), cfg.relay_power(), ic, cfg.gamma0);
  }

  std::optional<double> esr_one(std::span<const std::size_t> relaying) const {
    try {
      const IndexSet jam = jammers(relaying);
      return esr_subset_score(plan_one(relaying, jam), chan.legit);
    } catch (const SingularMatrixError&) {
      return std::nullopt;
    }
  }

  std::optional<double> sr_one(std::span<const std::size_t> relaying) const {
    try {
      const IndexSet jam = jammers(relaying);
      return sr_subset_score(plan_one(relaying, jam), chan.legit, chan.eaves);
    } catch (const SingularMatrixError&) {
      return std::nullopt;
    }
  }

  std::optional<double> os_one(std::span<const std::size_t> relaying, const SignalSet& sig) const {
    try {
      return os_subset_score(plan_one(relaying, {}), chan.legit, chan.eaves, sig);
    } catch (const SingularMatrixError&) {
      return std::nullopt;
    }
  }

  std::optional<double> esr_two(std::span<const std::size_t> forwarding) const {
    try {
      return esr_link_two_score(make_link_two_plan(chan.legit, forwarding, cfg.relay_power()));
    } catch (const SingularMatrixError&) {
      return std::nullopt;
    }
  }
};

inline std::size_t count_true(const std::vector<bool>& v) {
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), true));
}

}  // namespace detail

// Actual secrecy of Link I with the given sets. Fills ic_events; the
// received packets are returned through `packets` when non-null.
inline double execute_link_one(const SystemConfig& cfg, const ChannelRealization& chan, std::span<const std::size_t> relaying,
                               std::span<const std::size_t> jamming, bool ic, const SignalSet& sig, Rng& noise_rng,
                               std::size_t* ic_events, std::vector<ComplexMatrix>* packets) {
  const LinkOnePlan plan =
      make_link_one_plan(chan.legit, relaying, jamming, cfg.source_power(), cfg.relay_power(), ic, cfg.gamma0);
  const auto rates = link_one_rates(plan, chan.legit, chan.eaves);
  if (ic_events != nullptr && !jamming.empty())
    *ic_events += static_cast<std::size_t>(std::count(plan.phi.begin(), plan.phi.end(), 0));
  if (packets != nullptr) {
    const double amp = std::sqrt(plan.beta);
    const double jam_amp = std::sqrt(plan.jam_power);
    for (std::size_t p = 0; p < relaying.size(); ++p) {
      const std::size_t a = relaying[p];
      ComplexMatrix y = sig.s_blocks[p % sig.s_blocks.size()] * amp;
      if (plan.phi[p] == 1)
        for (std::size_t k : jamming) y += matmul(chan.legit.relay_relay(k, a), sig.j_blocks[k]) * jam_amp;
      y += draw_gaussian_matrix(y.rows(), 1, noise_rng);
      packets->push_back(std::move(y));
    }
  }
  return secrecy_rate(rates);
}

inline double execute_link_two(const SystemConfig& cfg, const ChannelRealization& chan,
                               std::span<const std::size_t> forwarding) {
  const LinkTwoPlan plan = make_link_two_plan(chan.legit, forwarding, cfg.relay_power());
  return secrecy_rate(link_two_rates(plan, chan.eaves));
}

// Runs one slot on a given realization. Throws SingularMatrixError when the
// chosen action cannot be zero-forced; `state` is left untouched then.
inline SlotResult execute_slot(const SystemConfig& cfg, SlotState& state, const Algorithm& algo,
                               const ChannelRealization& chan, Rng& signal_rng) {
  const detail::SlotScorers sc{cfg, chan, algo.ic};
  const SignalSet sig = draw_signals(cfg, signal_rng);
  const std::size_t n = cfg.s_total, s = cfg.s_select;
  const bool buffered = algo.buffer_aided(cfg);
  LinkCounter counter = state.counter;
  SlotResult r;

  // Decide.
  if (state.slot == 0 && detail::rjfs_family(algo)) {
    r.link = Link::I;
    r.relaying = initial_state(chan.legit, s);
    counter.record(Link::I);
  } else if (!buffered) {
    if (!state.pending.empty()) {
      r.link = Link::II;
      r.relaying = state.pending;
    } else {
      r.link = Link::I;
      r.visited = visited_sets_for(algo, cfg);
      auto jam = [&](std::span<const std::size_t> a) { return sc.jammers(a); };
      SelectionOutcome out;
      switch (algo.kind) {
        case AlgorithmKind::MaxMin: {
          const auto src = source_gains(chan.legit);
          const auto dst = forward_gains(chan.legit);
          std::vector<double> score(n);
          for (std::size_t k = 0; k < n; ++k) score[k] = std::min(src[k], dst[k]);
          out.relaying_set = top_relays(score, {}, s);
          break;
        }
        case AlgorithmKind::OS:
          out = rjfs_select(n, s, [&](std::span<const std::size_t> a) { return sc.os_one(a, sig); },
                            [](std::span<const std::size_t>) { return IndexSet{}; });
          break;
        case AlgorithmKind::SR:
          out = rjfs_select(n, s, [&](std::span<const std::size_t> a) { return sc.sr_one(a); }, jam);
          break;
        case AlgorithmKind::GreedyRjfs:
        case AlgorithmKind::GreedyBfRjfs:
          out = greedy_rjfs_select(n, s, [&](std::span<const std::size_t> a) { return sc.esr_one(a); }, jam);
          break;
        default:
          out = rjfs_select(n, s, [&](std::span<const std::size_t> a) { return sc.esr_one(a); }, jam);
          break;
      }
      if (out.degenerate)
        throw SingularMatrixError("no relaying set can be zero-forced", std::numeric_limits<double>::infinity());
      r.relaying = out.relaying_set;
      r.jamming = out.jamming_set;
    }
  } else if (algo.kind == AlgorithmKind::BfRjfs || algo.kind == AlgorithmKind::GreedyBfRjfs) {
    const auto fwd = forward_gains(chan.legit);
    const auto out = bf_rjfs_select(
        n, s, [&](std::span<const std::size_t> a) { return sc.esr_one(a); },
        [&](std::span<const std::size_t> f) { return sc.esr_two(f); },
        [&](std::span<const std::size_t> a) { return sc.jammers(a); }, fwd, state.buffers, counter, algo.greedy());
    r.visited = out.visited_sets;
    if (out.degenerate) {
      r.degenerate = true;
      state.counter = counter;
      ++state.slot;
      return r;
    }
    r.link = out.link;
    r.relaying = out.relaying_set;
    r.jamming = out.jamming_set;
  } else {
    // max-link / max-ratio: the per-relay rule picks the hop, then the S
    // best admissible relays of that hop are used.
    const auto occ = state.buffers.occupancy();
    std::vector<bool> room(n), loaded(n);
    for (std::size_t k = 0; k < n; ++k) {
      room[k] = occ[k] < cfg.buffer_len;
      loaded[k] = occ[k] > 0;
    }
    const bool one_ok = detail::count_true(room) >= s;
    const bool two_ok = detail::count_true(loaded) >= s;
    r.visited = visited_sets_for(algo, cfg);
    if (!one_ok && !two_ok) {
      r.degenerate = true;
      ++state.slot;
      return r;
    }
    const auto src = source_gains(chan.legit);
    const auto dst = forward_gains(chan.legit);
    std::vector<double> src_score = src, dst_score = dst;
    Link link;
    if (algo.kind == AlgorithmKind::MaxLink) {
      link = max_link_select(src, dst, occ, cfg.buffer_len).link;
    } else {
      const double se = source_eave_gain(chan.eaves);
      const auto de = relay_eave_gains(chan.eaves);
      link = max_ratio_select(src, se, dst, de, occ, cfg.buffer_len).link;
      for (std::size_t k = 0; k < n; ++k) dst_score[k] = dst[k] / std::max(de[k], kRatioFloor);
    }
    if (link == Link::I && !one_ok) link = Link::II;
    if (link == Link::II && !two_ok) link = Link::I;
    r.link = link;
    r.relaying = link == Link::I ? top_relays(src_score, room, s) : top_relays(dst_score, loaded, s);
  }

  // Transmit.
  std::vector<ComplexMatrix> packets;
  if (r.link == Link::I) {
    r.secrecy = execute_link_one(cfg, chan, r.relaying, r.jamming, algo.ic, sig, signal_rng, &r.ic_events,
                                 buffered ? &packets : nullptr);
  } else {
    r.secrecy = execute_link_two(cfg, chan, r.relaying);
  }

  // Commit.
  if (buffered) {
    if (r.link == Link::I) {
      for (std::size_t p = 0; p < r.relaying.size(); ++p)
        state.buffers.push(r.relaying[p], Packet{std::move(packets[p]), state.slot});
    } else {
      for (std::size_t f : r.relaying) state.buffers.pop(f);
    }
  } else {
    state.pending = r.link == Link::I ? r.relaying : IndexSet{};
  }
  state.counter = counter;
  ++state.slot;
  return r;
}

// Draws the slot's channels and runs it, redrawing on singular zero-forcing
// up to kMaxRedraws times before giving up on the slot.
inline SlotResult run_slot(const SystemConfig& cfg, SlotState& state, const Algorithm& algo,
                           const ChannelGenerator& gen, std::uint64_t trial) {
  Rng chan_rng = make_rng(cfg.seed, trial, state.slot, kChannelStream);
  Rng sig_rng = make_rng(cfg.seed, trial, state.slot, kSignalStream);
  for (std::size_t attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    const ChannelRealization chan = gen(chan_rng);
    try {
      SlotResult r = execute_slot(cfg, state, algo, chan, sig_rng);
      r.redraws = attempt;
      return r;
    } catch (const SingularMatrixError&) {
    }
  }
  SlotResult r;
  r.degenerate = true;
  r.redraws = kMaxRedraws;
  state.pending.clear();
  ++state.slot;
  return r;
}

// ---------------------------------------------------------------------------
// Trials

struct TrialRecord {
  std::vector<double> slot_secrecy;
  std::vector<Link> link_history;
  std::uint64_t visited_sets_total = 0;
  std::size_t ic_events = 0;
  std::size_t degenerate_slots = 0;

  // Mean over the slots after the first `warmup`.
  double mean(std::size_t warmup = 0) const {
    if (slot_secrecy.size() <= warmup) return 0.0;
    double s = 0.0;
    for (std::size_t t = warmup; t < slot_secrecy.size(); ++t) s += slot_secrecy[t];
    return s / static_cast<double>(slot_secrecy.size() - warmup);
  }
};

inline TrialRecord run_trial(const SystemConfig& cfg, const Algorithm& algo, std::size_t slots, std::uint64_t trial) {
  if (slots == 0) throw std::invalid_argument("run_trial: slots must be >= 1");
  const ChannelGenerator gen(cfg, cfg.correlated);
  SlotState state(cfg);
  TrialRecord rec;
  rec.slot_secrecy.reserve(slots);
  rec.link_history.reserve(slots);
  for (std::size_t t = 0; t < slots; ++t) {
    const SlotResult r = run_slot(cfg, state, algo, gen, trial);
    rec.slot_secrecy.push_back(r.secrecy);
    rec.link_history.push_back(r.link);
    rec.visited_sets_total += r.visited;
    rec.ic_events += r.ic_events;
    rec.degenerate_slots += r.degenerate;
  }
  return rec;
}

// Best secrecy any single action could reach on this realization: every
// relaying set in Link I and every forwarding set in Link II, as if buffers
// never constrained the choice.
inline double ideal_slot_secrecy(const SystemConfig& cfg, const ChannelRealization& chan, bool ic) {
  const detail::SlotScorers sc{cfg, chan, ic};
  double best = 0.0;
  for_each_subset(cfg.s_total, cfg.s_select, [&](std::span<const std::size_t> a) {
    try {
      const LinkOnePlan plan = sc.plan_one(a, sc.jammers(a));
      best = std::max(best, secrecy_rate(link_one_rates(plan, chan.legit, chan.eaves)));
    } catch (const SingularMatrixError&) {
    }
    try {
      best = std::max(best, execute_link_two(cfg, chan, a));
    } catch (const SingularMatrixError&) {
    }
  });
  return best;
}

struct BufferBoundRecord {
  double ideal_mean = 0.0;  // mean of ideal_slot_secrecy
  double bound_mean = 0.0;  // mean per-slot buffer_gain_bound against the L = 1 scheme
};

// Runs `algo` without buffers and evaluates, slot by slot on the same draws,
// the ideal secrecy and the buffer gain bound
// buffer_gain_bound(2^{2 S_best}, 2^{2 S_1}) = [S_best - S_1]^+.
inline BufferBoundRecord buffer_bound_trial(const SystemConfig& cfg, const Algorithm& algo, std::uint64_t trial) {
  SystemConfig c1 = cfg;
  c1.buffer_len = 1;
  const ChannelGenerator gen(c1, c1.correlated);
  SlotState state(c1);
  BufferBoundRecord rec;
  std::size_t counted = 0;
  for (std::size_t t = 0; t < c1.slots; ++t) {
    Rng chan_rng = make_rng(c1.seed, trial, t, kChannelStream);
    const ChannelRealization chan = gen(chan_rng);
    const SlotResult r = run_slot(c1, state, algo, gen, trial);
    if (t < c1.warmup) continue;
    const double best = std::max(ideal_slot_secrecy(c1, chan, algo.ic), r.secrecy);
    rec.ideal_mean += best;
    rec.bound_mean += buffer_gain_bound(std::exp2(2.0 * best), std::exp2(2.0 * r.secrecy));
    ++counted;
  }
  if (counted > 0) {
    rec.ideal_mean /= static_cast<double>(counted);
    rec.bound_mean /= static_cast<double>(counted);
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Sweeps

// Calls f(i) for i in [0, n) on up to `threads` workers (0 = hardware).
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f, std::size_t threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          const std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct MeanStdErr {
  double mean = 0.0;
  double std_error = 0.0;
};

// Sample mean and standard error of the mean, summed in index order.
inline MeanStdErr mean_std_error(std::span<const double> v) {
  MeanStdErr out;
  if (v.empty()) return out;
  double s = 0.0;
  for (double x : v) s += x;
  out.mean = s / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.std_error = std::sqrt(ss / static_cast<double>(v.size() - 1)) / std::sqrt(static_cast<double>(v.size()));
  }
  return out;
}

struct SweepRow {
  double axis = 0.0;
  std::string algorithm;
  double mean_secrecy = 0.0;
  double std_error = 0.0;
  std::uint64_t visited_sets = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepResult {
  std::string axis_name;
  std::vector<double> axis;
  std::map<std::string, std::vector<double>> mean;
  std::map<std::string, std::vector<double>> std_error;
  std::map<std::string, std::uint64_t> visited_sets;

  void add(std::size_t point, const std::string& algo, MeanStdErr m, std::uint64_t visited) {
    auto& mv = mean[algo];
    auto& sv = std_error[algo];
    mv.resize(axis.size(), 0.0);
    sv.resize(axis.size(), 0.0);
    mv.at(point) = m.mean;
    sv.at(point) = m.std_error;
    visited_sets[algo] = visited;
  }

  // Sorted by axis value, then algorithm name.
  std::vector<SweepRow> rows() const {
    std::vector<SweepRow> out;
    for (const auto& [name, means] : mean)
      for (std::size_t i = 0; i < axis.size() && i < means.size(); ++i)
        out.push_back({axis[i], name, means[i], std_error.at(name).at(i), visited_sets.at(name)});
    std::stable_sort(out.begin(), out.end(), [](const SweepRow& a, const SweepRow& b) {
      return a.axis != b.axis ? a.axis < b.axis : a.algorithm < b.algorithm;
    });
    return out;
  }
};

struct SweepOptions {
  std::size_t threads = 0;
};

// Per-trial means of `algo` under `cfg`, in trial order.
inline std::vector<double> trial_means(const SystemConfig& cfg, const Algorithm& algo, const SweepOptions& opt = {}) {
  std::vector<double> means(cfg.trials);
  parallel_for(
      cfg.trials,
      [&](std::size_t t) { means[t] = run_trial(cfg, algo, cfg.slots, t).mean(cfg.warmup); }, opt.threads);
  return means;
}

inline MeanStdErr run_point(const SystemConfig& cfg, const Algorithm& algo, const SweepOptions& opt = {}) {
  const auto m = trial_means(cfg, algo, opt);
  return mean_std_error(m);
}

inline SweepResult sweep_snr(const SystemConfig& cfg, std::span<const Algorithm> algos, const SweepOptions& opt = {}) {
  validate(cfg);
  SweepResult res;
  res.axis_name = "snr_db";
  res.axis = cfg.snr_grid_db;
  for (std::size_t i = 0; i < res.axis.size(); ++i) {
    SystemConfig c = cfg;
    c.power = snr_to_power(res.axis[i]);
    for (const auto& a : algos) res.add(i, a.name(), run_point(c, a, opt), visited_sets_for(a, c));
  }
  return res;
}

inline SweepResult sweep_eta(const SystemConfig& cfg, std::span<const Algorithm> algos, const SweepOptions& opt = {}) {
  for (double e : cfg.eta_grid)
    if (!(e >= 0.0 && e <= 2.0)) throw std::invalid_argument("sweep_eta: eta " + std::to_string(e) + " outside [0, 2]");
  validate(cfg);
  SweepResult res;
  res.axis_name = "eta";
  res.axis = cfg.eta_grid;
  for (std::size_t i = 0; i < res.axis.size(); ++i) {
    SystemConfig c = cfg;
    c.eta = res.axis[i];
    for (const auto& a : algos) res.add(i, a.name(), run_point(c, a, opt), visited_sets_for(a, c));
  }
  return res;
}

inline constexpr const char* kIdealBufferRow = "ideal-buffer";
inline constexpr const char* kBufferBoundRow = "buffer-gain-bound";

// Sweeps the buffer size. Two extra rows per point come from the first
// algorithm: the infinite-buffer ideal and the averaged buffer gain bound
// over its L = 1 operation (both independent of L).
inline SweepResult sweep_buffer(const SystemConfig& cfg, std::span<const std::size_t> l_grid,
                                std::span<const Algorithm> algos, const SweepOptions& opt = {}) {
  validate(cfg);
  SweepResult res;
  res.axis_name = "buffer_len";
  for (std::size_t l : l_grid) {
    if (l == 0) throw std::invalid_argument("sweep_buffer: buffer length must be >= 1");
    res.axis.push_back(static_cast<double>(l));
  }
  for (std::size_t i = 0; i < l_grid.size(); ++i) {
    SystemConfig c = cfg;
    c.buffer_len = l_grid[i];
    for (const auto& a : algos) res.add(i, a.name(), run_point(c, a, opt), visited_sets_for(a, c));
  }
  if (!algos.empty() && !l_grid.empty()) {
    std::vector<BufferBoundRecord> recs(cfg.trials);
    parallel_for(
        cfg.trials, [&](std::size_t t) { recs[t] = buffer_bound_trial(cfg, algos.front(), t); }, opt.threads);
    std::vector<double> ideal, bound;
    for (const auto& r : recs) {
      ideal.push_back(r.ideal_mean);
      bound.push_back(r.bound_mean);
    }
    const auto visited = complexity_counts(cfg.s_total, cfg.s_select).exhaustive;
    for (std::size_t i = 0; i < l_grid.size(); ++i) {
      res.add(i, kIdealBufferRow, mean_std_error(ideal), visited);
      res.add(i, kBufferBoundRow, mean_std_error(bound), visited);
    }
  }
  return res;
}

}  // namespace secrelay

#endif  // SECRELAY_SIM_HPP

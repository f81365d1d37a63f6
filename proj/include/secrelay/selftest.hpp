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

// Quick built-in checks run by `secrelay --cmd selftest`. The unit tests
// cover the same ground in more depth.

#ifndef SECRELAY_SELFTEST_HPP
#define SECRELAY_SELFTEST_HPP

#include <cmath>
#include <cstddef>
#include <exception>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "channel.hpp"
#include "cli_io.hpp"
#include "config.hpp"
#include "link_metrics.hpp"
#include "numerics.hpp"
#include "precoding.hpp"
#include "scheduler.hpp"
#include "selection.hpp"
#include "sim.hpp"

namespace secrelay {

struct SelftestReport {
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool ok() const noexcept { return failed == 0; }
};

namespace detail {

struct Check {
  const char* name;
  std::function<bool()> run;
};

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0);
  return draw_gaussian_matrix(r, c, rng);
}

inline std::vector<Check> selftest_checks() {
  std::vector<Check> c;
  c.push_back({"conj_transpose involution", [] {
                 const auto a = random_matrix(3, 2, 11);
                 return conj_transpose(conj_transpose(a)) == a;
               }});
  c.push_back({"matmul diagonal scaling", [] {
                 const ComplexMatrix p = ComplexMatrix{{1, 0}, {0, 2}} * ComplexMatrix{{3}, {4}};
                 return p == ComplexMatrix{{3}, {8}};
               }});
  c.push_back({"det of diagonal", [] { return near(det(ComplexMatrix{{2, 0}, {0, 3}}).real(), 6.0, 1e-12); }});
  c.push_back({"inverse residual", [] {
                 auto a = random_matrix(4, 4, 12);
                 a.add_identity(4.0);
                 return frobenius_norm(a * inverse(a) - ComplexMatrix::identity(4)) < 1e-9;
               }});
  c.push_back({"frobenius 3-4-5", [] { return near(frobenius_norm(ComplexMatrix{{3, 4}}), 5.0, 1e-15); }});
  c.push_back({"psd_sqrt reconstructs correlation", [] {
                 const auto r = exponential_correlation(4, 0.5);
                 const auto s = psd_sqrt(r);
                 return frobenius_norm(s * s - r) < 1e-8;
               }});
  c.push_back({"log_det of 2I", [] {
                 auto m = ComplexMatrix::identity(2);
                 m *= 2.0;
                 return near(log_det_herm(m), 2.0, 1e-12);
               }});
  c.push_back({"channel draw determinism", [] {
                 const SystemConfig cfg;
                 Rng a = make_rng(7, 3), b = make_rng(7, 3);
                 return draw_realization(cfg, false, a) == draw_realization(cfg, false, b);
               }});
  c.push_back({"zf on diagonal channel", [] {
                 const auto p = zf_precoder(ComplexMatrix{{2, 0}, {0, 4}});
                 return frobenius_norm(p.u_full - ComplexMatrix{{0.5, 0}, {0, 0.25}}) < 1e-15;
               }});
  c.push_back({"zf residual 4x6", [] {
                 const auto h = random_matrix(4, 6, 13);
                 return frobenius_norm(h * zf_precoder(h).u_full - ComplexMatrix::identity(4)) < 1e-9;
               }});
  c.push_back({"sinr_relay arithmetic", [] {
                 LinkGammas g;
                 g.g_src_relay = 4.0;
                 g.g_jam_relay = 2.0;
                 g.g_intf_relay = 1.0;
                 return near(sinr_relay(g, 1, 1.0), 1.0, 1e-15) && near(sinr_relay(g, 0, 1.0), 2.0, 1e-15);
               }});
  c.push_back({"ic_feasibility scalar", [] {
                 return ic_feasibility(ComplexMatrix{{1}}, ComplexMatrix{{2}}, 1.0) == 0 &&
                        ic_feasibility(ComplexMatrix{{1}}, ComplexMatrix{{0}}, 1.0) == 1;
               }});
  c.push_back({"secrecy hinge per pair", [] {
                 const RatePair pairs[] = {{3, 1}, {1, 3}};
                 return near(secrecy_rate(pairs), 2.0, 1e-15);
               }});
  c.push_back({"siso capacity without leakage", [] {
                 return near(secrecy_capacity_siso(1.0, 1.0, 0.0, 0.0, 3.0), 1.0, 1e-15);
               }});
  c.push_back({"buffer gain bound", [] {
                 return near(buffer_gain_bound(4.0, 1.0), 1.0, 1e-15) && buffer_gain_bound(2.0, 2.0) == 0.0;
               }});
  c.push_back({"max-min selection", [] {
                 const double src[] = {4, 1}, dst[] = {2, 9};
                 return max_min_select(src, dst) == 0;
               }});
  c.push_back({"esr equals sr on square channels", [] {
                 SystemConfig cfg;
                 Rng rng = make_rng(99, 0);
                 const auto ch = draw_realization(cfg, false, rng);
                 const std::size_t rel[] = {0, 1, 2}, jam[] = {3, 4, 5};
                 const auto plan = make_link_one_plan(ch.legit, rel, jam, 10.0, 10.0, true, cfg.gamma0);
                 const double a = esr_subset_score(plan, ch.legit);
                 const double b = sr_subset_score(plan, ch.legit, ch.eaves);
                 return std::abs(a - b) / std::max(1.0, std::abs(b)) < 1e-8;
               }});
  c.push_back({"complexity counts", [] {
                 return complexity_counts(10, 3) == ComplexityCounts{120, 27} &&
                        complexity_counts(8, 2) == ComplexityCounts{28, 15};
               }});
  c.push_back({"buffer fifo and bounds", [] {
                 BufferState b(1, 2);
                 b.push(0, {ComplexMatrix{{1}}, 1});
                 b.push(0, {ComplexMatrix{{2}}, 2});
                 bool overflow = false;
                 try {
                   b.push(0, {ComplexMatrix{{3}}, 3});
                 } catch (const BufferOverflowError&) {
                   overflow = true;
                 }
                 return overflow && b.pop(0).slot == 1 && b.pop(0).slot == 2 && b.empty(0);
               }});
  c.push_back({"config round trip", [] { return parse_config(serialize_config(siso_preset())) == siso_preset(); }});
  c.push_back({"empty config is mimo preset", [] { return parse_config("") == mimo_preset(); }});
  c.push_back({"short trial determinism", [] {
                 SystemConfig cfg;
                 const auto a = Algorithm::parse("bf-rjfs");
                 return run_trial(cfg, a, 6, 2).slot_secrecy == run_trial(cfg, a, 6, 2).slot_secrecy;
               }});
  return c;
}

}  // namespace detail

inline SelftestReport run_selftest(std::ostream& log) {
  SelftestReport rep;
  for (const auto& check : detail::selftest_checks()) {
    bool ok = false;
    std::string why;
    try {
      ok = check.run();
    } catch (const std::exception& e) {
      why = std::string(" (") + e.what() + ")";
    }
    ++(ok ? rep.passed : rep.failed);
    log << (ok ? "ok   " : "FAIL ") << check.name << why << "\n";
  }
  log << "selftest: " << rep.passed << " passed, " << rep.failed << " failed\n";
  return rep;
}

}  // namespace secrelay

#endif  // SECRELAY_SELFTEST_HPP

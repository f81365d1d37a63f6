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

#ifndef SECRELAY_SUBSETS_HPP
#define SECRELAY_SUBSETS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace secrelay {

using IndexSet = std::vector<std::size_t>;

// Calls f(std::span<const std::size_t>) for every s-subset of {0..n-1} in
// lexicographic order.
template <class F>
void for_each_subset(std::size_t n, std::size_t s, F&& f) {
  if (s > n)
    throw std::invalid_argument("subset size " + std::to_string(s) + " exceeds " + std::to_string(n));
  IndexSet idx(s);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    f(std::span<const std::size_t>(idx));
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == n - s + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace secrelay

#endif  // SECRELAY_SUBSETS_HPP

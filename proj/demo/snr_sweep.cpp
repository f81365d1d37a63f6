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


// Compares relay selection schemes over a short SNR sweep in the
// single-antenna scenario and prints the CSV table.

#include <iostream>

#include "secrelay/secrelay.hpp"

int main() {
  secrelay::SystemConfig cfg = secrelay::siso_preset();
  cfg.trials = 20;
  cfg.slots = 60;
  cfg.warmup = 10;
  cfg.snr_grid_db = {0.0, 10.0, 20.0};

  const auto algos = secrelay::parse_algorithms("os,maxratio,rjfs,bf-rjfs");
  const auto result = secrelay::sweep_snr(cfg, algos);
  std::cout << secrelay::format_results(result);
  return 0;
}

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

#ifndef SECRELAY_TOOLS_CLI_HPP
#define SECRELAY_TOOLS_CLI_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "secrelay/secrelay.hpp"
#include "secrelay/selftest.hpp"

namespace secrelay::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kRuntimeError = 2 };

inline const char* default_algorithms(const std::string& cmd) {
  if (cmd == "sweep-eta") return "bf-rjfs,bf-rjfs-noic";
  if (cmd == "sweep-buffer") return "bf-rjfs";
  return "rjfs,bf-rjfs,greedy-rjfs,greedy-bf-rjfs";
}

// args[0] is the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Secrecy-rate simulator for buffer-aided multiuser MIMO relay networks", "secrelay"};
  std::string config_path;
  std::string cmd;
  std::string algos;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  app.add_option("--config", config_path, "Config file (key = value lines); defaults to the MIMO scenario");
  app.add_option("--cmd", cmd, "Command to run")
      ->required()
      ->check(CLI::IsMember({"sweep-snr", "sweep-eta", "sweep-buffer", "selftest"}));
  app.add_option("--algos", algos, "Comma-separated algorithm names");
  app.add_option("--out", out_path, "CSV output path; stdout when omitted");
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--trials", trials, "Override the number of trials");

  if (!args.empty()) args.erase(args.begin());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  if (cmd == "selftest") return run_selftest(out).ok() ? kOk : kRuntimeError;

  SystemConfig cfg;
  std::vector<Algorithm> algorithms;
  try {
    cfg = config_path.empty() ? mimo_preset() : load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (trials) cfg.trials = *trials;
    validate(cfg);
    algorithms = parse_algorithms(algos.empty() ? default_algorithms(cmd) : algos);
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    SweepResult result;
    if (cmd == "sweep-snr") result = sweep_snr(cfg, algorithms);
    else if (cmd == "sweep-eta") result = sweep_eta(cfg, algorithms);
    else result = sweep_buffer(cfg, cfg.buffer_grid, algorithms);
    if (out_path.empty()) out << format_results(result);
    else write_results(result, out_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kOk;
}

inline int run_cli(int argc, char** argv) { return run_cli(std::vector<std::string>(argv, argv + argc)); }

}  // namespace secrelay::cli

#endif  // SECRELAY_TOOLS_CLI_HPP

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

#ifndef SECRELAY_SECRELAY_HPP
#define SECRELAY_SECRELAY_HPP

#include "channel.hpp"
#include "cli_io.hpp"
#include "config.hpp"
#include "link_metrics.hpp"
#include "numerics.hpp"
#include "precoding.hpp"
#include "scheduler.hpp"
#include "selection.hpp"
#include "selftest.hpp"
#include "sim.hpp"
#include "subsets.hpp"

#endif  // SECRELAY_SECRELAY_HPP

/*
 * Copyright 2026 The hird-sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hird/engine.hpp"

namespace hird {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Configurations shipped under configs/, by file stem.
std::vector<std::pair<std::string, SimConfig>> bundled_configs();

/// Every (src, dest) pair: the up-then-down walk reaches dest's ring within
/// 2 * (levels - 1) transfers and every ring position has a finite route.
SuiteResult verify_routing_exhaustive(const TopologyConfig& cfg);

/// Runs `cycles` with the per-cycle audit on, twice, and checks the two
/// reports are identical.
SuiteResult verify_conservation(const std::string& name, SimConfig cfg, Cycle cycles);

/// Random traffic bursts, then injection halt: the network must empty
/// within drain_bound().
SuiteResult verify_drain(int trials, std::uint64_t seed);

struct SwapDeadlockOutcome {
  bool progressed = false;   // some flit crossed within one circulation
  bool drained = false;      // the constructed state fully drained
  Cycle first_cross = 0;
  std::uint64_t transfers = 0;
  std::uint64_t ejected = 0;
};

/// Two-level, one bridge per child, single-lane rings. Both transfer FIFOs
/// of bridge 0 are full and every slot of its two rings holds a flit that
/// must cross it. Runs `cycles` with node injection halted.
SwapDeadlockOutcome run_swap_deadlock(bool swap_rule, Cycle cycles);
SuiteResult verify_swap_deadlock();

/// All four suites over the bundled configurations.
std::vector<SuiteResult> run_all_suites();

}  // namespace hird

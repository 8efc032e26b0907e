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

#include <array>
#include <optional>
#include <vector>

#include "hird/flit.hpp"
#include "hird/ring.hpp"
#include "hird/topology.hpp"

namespace hird {

/// Ejection stage of a node router. Removes at most one flit per direction
/// (lowest lane first) whose destination is `node`; everything else passes
/// through untouched. The returned flits go straight to reassembly, which
/// never refuses them.
std::vector<Flit> eject_stage(RingStop& stop, int node);

/// Direction a new flit at (ring, pos) should enqueue in.
Direction choose_injection_direction(const TopologyGraph& topo, int ring, int pos, int dest_node);

/// Lowest-index lane whose slot in d is empty, if any.
std::optional<int> lane_select(const RingStop& stop, Direction d);

/// Injection stage for one direction. Places the queue head into an empty
/// slot unless throttled; occupied slots are never displaced. Returns the
/// lane used, or nothing when no injection happened.
std::optional<int> inject_stage(RingStop& stop, Direction d, InjectionQueue& fifo, PacketFactory& factory,
                                bool throttled, Cycle now);

}  // namespace hird

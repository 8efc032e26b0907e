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

#include "hird/node_router.hpp"

namespace hird {

std::vector<Flit> eject_stage(RingStop& stop, int node) {
  std::vector<Flit> out;
  for (Direction d : kDirections) {
    for (int lane = 0; lane < stop.lanes(); ++lane) {
      auto& slot = stop.slot(d, lane);
      if (slot && slot->dest == node) {
        out.push_back(*slot);
        slot.reset();
        break;  // one ejector per direction
      }
    }
  }
  return out;
}

Direction choose_injection_direction(const TopologyGraph& topo, int ring, int pos, int dest_node) {
  return topo.preferred_direction(ring, pos, dest_node);
}

std::optional<int> lane_select(const RingStop& stop, Direction d) {
  for (int lane = 0; lane < stop.lanes(); ++lane)
    if (!stop.slot(d, lane)) return lane;
  return std::nullopt;
}

std::optional<int> inject_stage(RingStop& stop, Direction d, InjectionQueue& fifo, PacketFactory& factory,
                                bool throttled, Cycle now) {
  if (throttled || fifo.empty()) return std::nullopt;
  const auto lane = lane_select(stop, d);
  if (!lane) return std::nullopt;
  Flit f = fifo.pop(factory);
  f.injected = now;
  stop.slot(d, *lane) = f;
  return lane;
}

}  // namespace hird

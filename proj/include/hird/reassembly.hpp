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

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hird/flit.hpp"

namespace hird {

enum class RetransmitTransport { kOutOfBand, kInNetwork };

/// What the receiver asks a source to resend.
struct RetransmitRequest {
  int src = -1;  // original sender, which resends
  std::uint64_t packet_id = 0;
  int length = 1;
  Cycle created = 0;
};

struct ReceiveResult {
  enum class Kind { kStored, kPacketComplete, kDroppedRetransmitMarked } kind;
  std::optional<Packet> completed;
};

/// Retransmit-Once receiver. Every arriving flit is stored or dropped in the
/// cycle it arrives, so ejection never backs up into the ring.
///
/// A packet either owns a slot for all of its flits or has none: once any
/// flit of a packet is dropped the packet is marked for retransmission and
/// its remaining original flits are dropped too. When a slot frees, the
/// oldest marked packet gets it reserved and is re-requested from its
/// source; only the retransmitted copy may fill a reserved slot.
class ReassemblyBuffer {
 public:
  explicit ReassemblyBuffer(int capacity = 16);

  ReceiveResult receive_flit(const Flit& f, Cycle now);
  std::optional<RetransmitRequest> grant_retransmit();

  int capacity() const { return static_cast<int>(slots_.size()); }
  int occupied() const;
  int reserved() const;
  int free_slots() const;
  std::size_t pending_retransmits() const { return queue_.size(); }

 private:
  struct Slot {
    enum class State { kFree, kOccupied, kReserved } state = State::kFree;
    std::uint64_t packet_id = 0;
    int src = -1;
    int length = 0;
    Cycle created = 0;
    int received = 0;
    std::vector<bool> have;
  };

  Slot* find(std::uint64_t packet_id);
  Slot* find_free();

  std::vector<Slot> slots_;
  std::deque<RetransmitRequest> queue_;
  // Marked packet -> original flits still expected (and to be dropped).
  std::unordered_map<std::uint64_t, int> stale_;
};

}  // namespace hird

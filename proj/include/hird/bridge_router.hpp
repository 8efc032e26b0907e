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

#include <deque>
#include <functional>
#include <optional>
#include <vector>

#include "hird/flit.hpp"
#include "hird/ring.hpp"

namespace hird {

/// Bounded transfer FIFO between two rings. Tracks when its current head
/// reached the head so head-of-queue waits can be measured.
class TransferFifo {
 public:
  explicit TransferFifo(int capacity) : capacity_(capacity) {}

  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool full() const { return size() >= capacity_; }
  bool empty() const { return entries_.empty(); }

  /// Throws InvariantViolation on overflow.
  void push(Flit f, Cycle now);
  const Flit& head() const { return entries_.front().flit; }
  Cycle head_since() const { return head_since_; }
  Cycle head_enqueued() const { return entries_.front().enqueued; }
  Flit pop(Cycle now);

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const auto& e : entries_) fn(e.flit);
  }

 private:
  struct Entry {
    Flit flit;
    Cycle enqueued;
  };
  int capacity_;
  std::deque<Entry> entries_;
  Cycle head_since_ = 0;
};

/// The per-lane FIFOs carrying one transfer direction through a bridge,
/// plus the transfer-guarantee reservation covering all of them.
struct TransferPool {
  std::vector<TransferFifo> fifos;
  std::optional<std::uint64_t> reserved_for;  // flit uid

  TransferPool() = default;
  TransferPool(int lanes, int depth) : fifos(lanes, TransferFifo(depth)) {}

  int occupancy() const;
  int free_entries() const;
  bool has_room() const;
};

enum class TransferOutcome { kAccepted, kDeflected };

/// A flit in `slot` must leave its ring here. It is accepted into the
/// lowest-index FIFO with a free entry when the reservation allows it;
/// otherwise it stays in its slot and its deflection count grows.
TransferOutcome transfer_eject(std::optional<Flit>& slot, TransferPool& pool, Cycle now);

struct InjectedTransfer {
  int fifo;  // index within the pool
  Flit flit;
  Direction dir;
  int lane;
  Cycle head_wait;    // cycles spent at the FIFO head
  Cycle queue_wait;   // cycles from enqueue to injection
};

/// Moves FIFO heads onto the destination ring, one per FIFO per cycle, into
/// the lowest free lane of the direction `direction_of` picks for each head.
std::vector<InjectedTransfer> transfer_inject(TransferPool& pool, RingStop& dest,
                                              const std::function<Direction(const Flit&)>& direction_of,
                                              Cycle now);

/// Swap Rule: both slots hold a flit that wants to cross this bridge in
/// opposite directions, so the flits exchange places directly, bypassing the
/// FIFOs. Returns false (and changes nothing) unless both are present.
bool swap_rule(std::optional<Flit>& child_slot, std::optional<Flit>& parent_slot);

}  // namespace hird

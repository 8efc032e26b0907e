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

#include "hird/bridge_router.hpp"

#include <utility>

#include "hird/guarantees.hpp"
#include "hird/node_router.hpp"

namespace hird {

void TransferFifo::push(Flit f, Cycle now) {
  if (full()) throw InvariantViolation(now, "transfer FIFO overflow");
  if (entries_.empty()) head_since_ = now;
  entries_.push_back(Entry{std::move(f), now});
}

Flit TransferFifo::pop(Cycle now) {
  Flit f = std::move(entries_.front().flit);
  entries_.pop_front();
  head_since_ = now;
  return f;
}

int TransferPool::occupancy() const {
  int n = 0;
  for (const auto& f : fifos) n += f.size();
  return n;
}

int TransferPool::free_entries() const {
  int n = 0;
  for (const auto& f : fifos) n += f.capacity() - f.size();
  return n;
}

bool TransferPool::has_room() const {
  for (const auto& f : fifos)
    if (!f.full()) return true;
  return false;
}

TransferOutcome transfer_eject(std::optional<Flit>& slot, TransferPool& pool, Cycle now) {
  Flit& f = *slot;
  if (reservation_gate(pool.reserved_for, f, pool.free_entries())) {
    for (auto& fifo : pool.fifos) {
      if (fifo.full()) continue;
      if (pool.reserved_for == f.uid) pool.reserved_for.reset();
      ++f.transfers;
      fifo.push(std::move(f), now);
      slot.reset();
      return TransferOutcome::kAccepted;
    }
  }
  ++f.deflections;
  return TransferOutcome::kDeflected;
}

std::vector<InjectedTransfer> transfer_inject(TransferPool& pool, RingStop& dest,
                                              const std::function<Direction(const Flit&)>& direction_of,
                                              Cycle now) {
  std::vector<InjectedTransfer> out;
  for (std::size_t i = 0; i < pool.fifos.size(); ++i) {
    auto& fifo = pool.fifos[i];
    if (fifo.empty()) continue;
    const Direction d = direction_of(fifo.head());
    const auto lane = lane_select(dest, d);
    if (!lane) continue;
    const Cycle head_wait = now - fifo.head_since();
    const Cycle queue_wait = now - fifo.head_enqueued();
    Flit f = fifo.pop(now);
    f.injected = now;
    dest.slot(d, *lane) = f;
    out.push_back(InjectedTransfer{static_cast<int>(i), std::move(f), d, *lane, head_wait, queue_wait});
  }
  return out;
}

bool swap_rule(std::optional<Flit>& child_slot, std::optional<Flit>& parent_slot) {
  if (!child_slot || !parent_slot) return false;
  std::swap(child_slot, parent_slot);
  ++child_slot->transfers;
  ++parent_slot->transfers;
  return true;
}

}  // namespace hird

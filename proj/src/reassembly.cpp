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

#include "hird/reassembly.hpp"

#include <stdexcept>

namespace hird {

ReassemblyBuffer::ReassemblyBuffer(int capacity) : slots_(static_cast<std::size_t>(capacity)) {
  if (capacity < 1) throw std::invalid_argument("reassembly capacity must be >= 1");
}

ReassemblyBuffer::Slot* ReassemblyBuffer::find(std::uint64_t packet_id) {
  for (auto& s : slots_)
    if (s.state != Slot::State::kFree && s.packet_id == packet_id) return &s;
  return nullptr;
}

ReassemblyBuffer::Slot* ReassemblyBuffer::find_free() {
  for (auto& s : slots_)
    if (s.state == Slot::State::kFree) return &s;
  return nullptr;
}

ReceiveResult ReassemblyBuffer::receive_flit(const Flit& f, Cycle now) {
  using Kind = ReceiveResult::Kind;
  if (!f.is_retransmit()) {
    // Originals of a packet already marked for retransmission are stale.
    if (auto it = stale_.find(f.packet_id); it != stale_.end()) {
      if (--it->second == 0) stale_.erase(it);
      return {Kind::kDroppedRetransmitMarked, {}};
    }
  }
  Slot* slot = find(f.packet_id);
  if (slot && slot->state == Slot::State::kReserved) slot->state = Slot::State::kOccupied;
  if (!slot) {
    if (f.is_retransmit()) throw std::logic_error("retransmitted flit without a reserved slot");
    slot = find_free();
    if (!slot) {
      if (f.length > 1) stale_[f.packet_id] = f.length - 1;
      queue_.push_back(RetransmitRequest{f.src, f.packet_id, f.length, f.created});
      return {Kind::kDroppedRetransmitMarked, {}};
    }
    slot->state = Slot::State::kOccupied;
    slot->packet_id = f.packet_id;
    slot->src = f.src;
    slot->length = f.length;
    slot->created = f.created;
    slot->received = 0;
    slot->have.assign(f.length, false);
  }
  if (f.seq >= slot->have.size()) throw std::logic_error("flit seq beyond packet length");
  if (!slot->have[f.seq]) {
    slot->have[f.seq] = true;
    ++slot->received;
  }
  if (slot->received < slot->length) return {Kind::kStored, {}};

  Packet p;
  p.packet_id = slot->packet_id;
  p.src = slot->src;
  p.dest = f.dest;
  p.length_flits = slot->length;
  p.created = slot->created;
  p.attempt = f.attempt;
  p.delivered = now;
  slot->state = Slot::State::kFree;
  slot->have.clear();
  return {Kind::kPacketComplete, p};
}

std::optional<RetransmitRequest> ReassemblyBuffer::grant_retransmit() {
  if (queue_.empty()) return std::nullopt;
  Slot* slot = find_free();
  if (!slot) return std::nullopt;
  RetransmitRequest req = queue_.front();
  queue_.pop_front();
  slot->state = Slot::State::kReserved;
  slot->packet_id = req.packet_id;
  slot->src = req.src;
  slot->length = req.length;
  slot->created = req.created;
  slot->received = 0;
  slot->have.assign(req.length, false);
  return req;
}

int ReassemblyBuffer::occupied() const {
  int n = 0;
  for (const auto& s : slots_) n += s.state == Slot::State::kOccupied;
  return n;
}

int ReassemblyBuffer::reserved() const {
  int n = 0;
  for (const auto& s : slots_) n += s.state == Slot::State::kReserved;
  return n;
}

int ReassemblyBuffer::free_slots() const {
  int n = 0;
  for (const auto& s : slots_) n += s.state == Slot::State::kFree;
  return n;
}

}  // namespace hird

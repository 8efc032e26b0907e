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

#include "hird/flit.hpp"

#include <stdexcept>

namespace hird {

Packet PacketFactory::make_packet(int src, int dest, int length_flits, Cycle cycle) {
  if (src == dest) throw std::invalid_argument("make_packet: src == dest (" + std::to_string(src) + ")");
  if (length_flits < 1) throw std::invalid_argument("make_packet: length must be >= 1");
  Packet p;
  p.packet_id = next_packet_id_++;
  p.src = src;
  p.dest = dest;
  p.length_flits = length_flits;
  p.created = cycle;
  return p;
}

Flit PacketFactory::make_flit(const Packet& p, int seq) {
  Flit f;
  f.uid = next_uid_++;
  f.packet_id = p.packet_id;
  f.seq = static_cast<std::uint16_t>(seq);
  f.length = static_cast<std::uint16_t>(p.length_flits);
  f.src = p.src;
  f.dest = p.dest;
  f.created = p.created;
  f.attempt = p.attempt;
  return f;
}

std::vector<Flit> PacketFactory::make_flits(const Packet& p) {
  std::vector<Flit> flits;
  flits.reserve(p.length_flits);
  for (int s = 0; s < p.length_flits; ++s) flits.push_back(make_flit(p, s));
  return flits;
}

Flit PacketFactory::make_control_flit(int src, int dest, const Packet& about, Cycle cycle) {
  Flit f;
  f.uid = next_uid_++;
  f.packet_id = about.packet_id;
  f.length = static_cast<std::uint16_t>(about.length_flits);
  f.src = src;
  f.dest = dest;
  // The request carries the original creation cycle so the source can
  // rebuild the packet with honest latency accounting.
  f.created = about.created;
  f.injected = cycle;
  f.kind = FlitKind::kRetransmitRequest;
  return f;
}

void InjectionQueue::materialize(PacketFactory& factory) {
  if (head_) return;
  if (!singles_.empty()) {
    head_ = singles_.front();
    singles_.pop_front();
    return;
  }
  auto& from = retransmits_.empty() ? packets_ : retransmits_;
  Pending& p = from.front();
  head_ = factory.make_flit(p.packet, p.next_seq);
  if (++p.next_seq == p.packet.length_flits) from.pop_front();
}

const Flit& InjectionQueue::front(PacketFactory& factory) {
  if (empty()) throw std::logic_error("InjectionQueue::front on empty queue");
  materialize(factory);
  return *head_;
}

Flit InjectionQueue::pop(PacketFactory& factory) {
  front(factory);
  Flit f = *head_;
  head_.reset();
  --flits_;
  return f;
}

std::optional<Cycle> InjectionQueue::head_created() const {
  if (head_) return head_->created;
  if (!singles_.empty()) return singles_.front().created;
  if (!retransmits_.empty()) return retransmits_.front().packet.created;
  if (!packets_.empty()) return packets_.front().packet.created;
  return std::nullopt;
}

}  // namespace hird

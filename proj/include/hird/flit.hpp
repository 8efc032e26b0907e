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
#include <vector>

#include "hird/types.hpp"

namespace hird {

enum class FlitKind : std::uint8_t {
  kData,
  // Receiver-to-source request for a packet whose flits were dropped. Only
  // present when retransmit requests travel through the network.
  kRetransmitRequest,
};

/// Unit of transfer. Deflection and transfer counters only ever grow.
struct Flit {
  std::uint64_t uid = 0;  // unique per physical flit, retransmitted copies included
  std::uint64_t packet_id = 0;
  std::uint16_t seq = 0;
  std::uint16_t length = 1;
  std::int32_t src = -1;
  std::int32_t dest = -1;
  Cycle created = 0;
  Cycle injected = 0;
  std::uint32_t deflections = 0;
  std::uint32_t transfers = 0;
  std::uint8_t attempt = 0;  // 0 = original, 1 = retransmitted copy
  FlitKind kind = FlitKind::kData;

  bool is_retransmit() const { return attempt > 0; }
};

struct Packet {
  std::uint64_t packet_id = 0;
  int src = -1;
  int dest = -1;
  int length_flits = 1;
  Cycle created = 0;
  std::uint8_t attempt = 0;
  std::optional<Cycle> delivered;
};

/// Hands out packet ids (monotone) and flit uids for one simulation.
class PacketFactory {
 public:
  /// Throws std::invalid_argument when src == dest or length < 1.
  Packet make_packet(int src, int dest, int length_flits, Cycle cycle);
  std::vector<Flit> make_flits(const Packet& p);
  Flit make_flit(const Packet& p, int seq);
  Flit make_control_flit(int src, int dest, const Packet& about, Cycle cycle);

  std::uint64_t packets_made() const { return next_packet_id_; }

 private:
  std::uint64_t next_packet_id_ = 0;
  std::uint64_t next_uid_ = 0;
};

/// Source-side injection FIFO. Holds whole packets and materializes flits
/// one at a time, so saturated sources do not store every flit up front.
class InjectionQueue {
 public:
  void push(const Packet& p) { packets_.push_back(Pending{p, 0}); flits_ += p.length_flits; }
  /// Retransmitted packets go ahead of fresh traffic (behind control flits)
  /// so a reserved reassembly slot is not held for a whole source backlog.
  void push_retransmit(const Packet& p) { retransmits_.push_back(Pending{p, 0}); flits_ += p.length_flits; }
  void push_flit(const Flit& f) { singles_.push_back(f); ++flits_; }

  bool empty() const { return flits_ == 0; }
  std::size_t flits() const { return flits_; }
  std::size_t packets() const { return packets_.size() + retransmits_.size() + singles_.size(); }

  /// Head flit, materialized on demand.
  const Flit& front(PacketFactory& factory);
  Flit pop(PacketFactory& factory);
  /// Cycle at which the current head packet was created.
  std::optional<Cycle> head_created() const;

 private:
  struct Pending {
    Packet packet;
    int next_seq;
  };
  void materialize(PacketFactory& factory);

  // Control flits go ahead of data so requests are never stuck behind a
  // long source backlog.
  std::deque<Flit> singles_;
  std::deque<Pending> retransmits_;
  std::deque<Pending> packets_;
  std::optional<Flit> head_;
  std::size_t flits_ = 0;
};

}  // namespace hird

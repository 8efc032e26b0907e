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

#include <gtest/gtest.h>

#include "hird/reassembly.hpp"

namespace hird {
namespace {

using Kind = ReceiveResult::Kind;

Flit part(std::uint64_t packet, int seq, int length, int src = 1, bool again = false) {
  Flit f;
  f.uid = packet * 100 + seq + (again ? 50 : 0);
  f.packet_id = packet;
  f.seq = static_cast<std::uint16_t>(seq);
  f.length = static_cast<std::uint16_t>(length);
  f.src = src;
  f.dest = 0;
  f.created = packet;
  f.attempt = again ? 1 : 0;
  return f;
}

void check_accounting(const ReassemblyBuffer& b) {
  EXPECT_EQ(b.occupied() + b.reserved() + b.free_slots(), b.capacity());
}

TEST(Reassembly, StoresIntoLastSlot) {
  ReassemblyBuffer b(4);
  for (int p = 0; p < 3; ++p) EXPECT_EQ(b.receive_flit(part(p, 0, 2), 0).kind, Kind::kStored);
  EXPECT_EQ(b.receive_flit(part(3, 0, 2), 0).kind, Kind::kStored);
  EXPECT_EQ(b.free_slots(), 0);
  check_accounting(b);
}

TEST(Reassembly, FullBufferDropsAndMarks) {
  ReassemblyBuffer b(1);
  b.receive_flit(part(0, 0, 2), 0);
  EXPECT_EQ(b.receive_flit(part(1, 0, 2), 0).kind, Kind::kDroppedRetransmitMarked);
  EXPECT_EQ(b.pending_retransmits(), 1u);
  // The rest of a marked packet's originals are dropped as well.
  EXPECT_EQ(b.receive_flit(part(1, 1, 2), 0).kind, Kind::kDroppedRetransmitMarked);
  check_accounting(b);
}

TEST(Reassembly, OutOfOrderCompletes) {
  ReassemblyBuffer b(2);
  EXPECT_EQ(b.receive_flit(part(7, 2, 3), 1).kind, Kind::kStored);
  EXPECT_EQ(b.receive_flit(part(7, 0, 3), 2).kind, Kind::kStored);
  const auto r = b.receive_flit(part(7, 1, 3), 3);
  ASSERT_EQ(r.kind, Kind::kPacketComplete);
  ASSERT_TRUE(r.completed);
  EXPECT_EQ(r.completed->packet_id, 7u);
  EXPECT_EQ(r.completed->delivered, 3u);
  EXPECT_EQ(b.free_slots(), 2);
}

TEST(Reassembly, RetransmitLifecycle) {
  ReassemblyBuffer b(1);
  b.receive_flit(part(0, 0, 2), 0);
  b.receive_flit(part(1, 0, 2), 0);
  EXPECT_FALSE(b.grant_retransmit());
  b.receive_flit(part(0, 1, 2), 1);
  const auto req = b.grant_retransmit();
  ASSERT_TRUE(req);
  EXPECT_EQ(req->packet_id, 1u);
  EXPECT_EQ(req->length, 2);
  EXPECT_EQ(b.reserved(), 1);
  check_accounting(b);
  // A fresh packet cannot take the reserved slot.
  EXPECT_EQ(b.receive_flit(part(2, 0, 1), 2).kind, Kind::kDroppedRetransmitMarked);
  b.receive_flit(part(1, 1, 2, 1, true), 3);
  const auto done = b.receive_flit(part(1, 0, 2, 1, true), 4);
  ASSERT_EQ(done.kind, Kind::kPacketComplete);
  EXPECT_EQ(done.completed->created, 1u);
  check_accounting(b);
}

TEST(Reassembly, OldestMarkedFirst) {
  ReassemblyBuffer b(1);
  b.receive_flit(part(0, 0, 1), 0);  // completes at once, slot stays free
  b.receive_flit(part(10, 0, 2), 0);
  b.receive_flit(part(11, 0, 1), 0);
  b.receive_flit(part(12, 0, 1), 0);
  EXPECT_EQ(b.pending_retransmits(), 2u);
  b.receive_flit(part(10, 1, 2), 0);
  EXPECT_EQ(b.grant_retransmit()->packet_id, 11u);
  b.receive_flit(part(11, 0, 1, 1, true), 1);
  EXPECT_EQ(b.grant_retransmit()->packet_id, 12u);
}

TEST(Reassembly, NoPendingNoGrant) {
  ReassemblyBuffer b(2);
  EXPECT_FALSE(b.grant_retransmit());
  EXPECT_EQ(b.free_slots(), 2);
}

}  // namespace
}  // namespace hird

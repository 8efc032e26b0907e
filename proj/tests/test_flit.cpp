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

#include <set>
#include <stdexcept>

#include "hird/flit.hpp"

namespace hird {
namespace {

TEST(PacketFactory, SingleFlit) {
  PacketFactory f;
  const Packet p = f.make_packet(0, 1, 1, 5);
  const auto flits = f.make_flits(p);
  ASSERT_EQ(flits.size(), 1u);
  EXPECT_EQ(flits[0].seq, 0);
  EXPECT_EQ(flits[0].created, 5u);
}

TEST(PacketFactory, FourFlitsShareId) {
  PacketFactory f;
  const Packet p = f.make_packet(2, 7, 4, 0);
  const auto flits = f.make_flits(p);
  ASSERT_EQ(flits.size(), 4u);
  std::set<std::uint64_t> uids;
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(flits[i].seq, i);
    EXPECT_EQ(flits[i].packet_id, p.packet_id);
    EXPECT_EQ(flits[i].length, 4);
    uids.insert(flits[i].uid);
  }
  EXPECT_EQ(uids.size(), 4u);
}

TEST(PacketFactory, MonotoneIds) {
  PacketFactory f;
  const Packet a = f.make_packet(0, 1, 1, 0);
  const Packet b = f.make_packet(0, 1, 1, 0);
  EXPECT_LT(a.packet_id, b.packet_id);
  EXPECT_EQ(f.packets_made(), 2u);
}

TEST(PacketFactory, RejectsBadPackets) {
  PacketFactory f;
  EXPECT_THROW(f.make_packet(3, 3, 1, 0), std::invalid_argument);
  EXPECT_THROW(f.make_packet(0, 1, 0, 0), std::invalid_argument);
}

TEST(InjectionQueue, MaterializesInOrder) {
  PacketFactory f;
  InjectionQueue q;
  q.push(f.make_packet(0, 1, 3, 0));
  EXPECT_EQ(q.flits(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(q.pop(f).seq, i);
  EXPECT_TRUE(q.empty());
}

TEST(InjectionQueue, ControlThenRetransmitThenFresh) {
  PacketFactory f;
  InjectionQueue q;
  const Packet fresh = f.make_packet(0, 1, 1, 0);
  Packet again = f.make_packet(0, 2, 1, 0);
  again.attempt = 1;
  const Packet about = f.make_packet(0, 3, 1, 0);
  q.push(fresh);
  q.push_retransmit(again);
  q.push_flit(f.make_control_flit(0, 3, about, 0));
  EXPECT_EQ(q.packets(), 3u);
  EXPECT_EQ(q.pop(f).kind, FlitKind::kRetransmitRequest);
  const Flit r = q.pop(f);
  EXPECT_EQ(r.packet_id, again.packet_id);
  EXPECT_TRUE(r.is_retransmit());
  EXPECT_EQ(q.pop(f).packet_id, fresh.packet_id);
}

TEST(InjectionQueue, HeadCreated) {
  PacketFactory f;
  InjectionQueue q;
  EXPECT_FALSE(q.head_created());
  q.push(f.make_packet(0, 1, 2, 42));
  EXPECT_EQ(q.head_created(), 42u);
}

}  // namespace
}  // namespace hird

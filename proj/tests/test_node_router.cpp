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

#include "hird/node_router.hpp"
#include "oracle.hpp"

namespace hird {
namespace {

Flit flit_to(int dest, std::uint64_t uid = 1) {
  Flit f;
  f.uid = uid;
  f.src = 9;
  f.dest = dest;
  return f;
}

TEST(Eject, MatchingFlitLeaves) {
  RingState ring(8, 1);
  RingStop stop(ring, 2);
  stop.slot(Direction::kCW, 0) = flit_to(3);
  const auto out = eject_stage(stop, 3);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_FALSE(stop.slot(Direction::kCW, 0));
}

TEST(Eject, BothDirectionsSameCycle) {
  RingState ring(8, 1);
  RingStop stop(ring, 2);
  stop.slot(Direction::kCW, 0) = flit_to(3, 1);
  stop.slot(Direction::kCCW, 0) = flit_to(3, 2);
  EXPECT_EQ(eject_stage(stop, 3).size(), 2u);
}

TEST(Eject, OnePerDirection) {
  RingState ring(8, 2);
  RingStop stop(ring, 0);
  stop.slot(Direction::kCW, 0) = flit_to(3, 1);
  stop.slot(Direction::kCW, 1) = flit_to(3, 2);
  const auto out = eject_stage(stop, 3);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].uid, 1u);
  EXPECT_TRUE(stop.slot(Direction::kCW, 1));
}

TEST(Eject, OthersPassThrough) {
  RingState ring(8, 1);
  RingStop stop(ring, 0);
  stop.slot(Direction::kCW, 0) = flit_to(4);
  EXPECT_TRUE(eject_stage(stop, 3).empty());
  EXPECT_TRUE(stop.slot(Direction::kCW, 0));
}

TEST(LaneSelect, LowestFree) {
  RingState ring(4, 2);
  RingStop stop(ring, 0);
  EXPECT_EQ(lane_select(stop, Direction::kCW), 0);
  stop.slot(Direction::kCW, 0) = flit_to(1);
  EXPECT_EQ(lane_select(stop, Direction::kCW), 1);
  stop.slot(Direction::kCW, 1) = flit_to(1, 2);
  EXPECT_FALSE(lane_select(stop, Direction::kCW));
  EXPECT_EQ(lane_select(stop, Direction::kCCW), 0);
}

class InjectTest : public ::testing::Test {
 protected:
  RingState ring{4, 1};
  RingStop stop{ring, 1};
  PacketFactory factory;
  InjectionQueue queue;
  void SetUp() override { queue.push(factory.make_packet(0, 1, 1, 0)); }
};

TEST_F(InjectTest, EmptySlotInjects) {
  EXPECT_EQ(inject_stage(stop, Direction::kCW, queue, factory, false, 7), 0);
  ASSERT_TRUE(stop.slot(Direction::kCW, 0));
  EXPECT_EQ(stop.slot(Direction::kCW, 0)->injected, 7u);
  EXPECT_TRUE(queue.empty());
}

TEST_F(InjectTest, NeverDisplaces) {
  stop.slot(Direction::kCW, 0) = flit_to(2, 99);
  EXPECT_FALSE(inject_stage(stop, Direction::kCW, queue, factory, false, 0));
  EXPECT_EQ(stop.slot(Direction::kCW, 0)->uid, 99u);
  EXPECT_FALSE(queue.empty());
}

TEST_F(InjectTest, ThrottledWaits) {
  EXPECT_FALSE(inject_stage(stop, Direction::kCW, queue, factory, true, 0));
  EXPECT_FALSE(stop.slot(Direction::kCW, 0));
  EXPECT_FALSE(queue.empty());
}

TEST(InjectionDirection, ShorterWayAndTies) {
  TopologyConfig c;
  c.levels = 1;
  c.fanout = {4};
  c.lanes = {1};
  const TopologyGraph g = build_topology(c);
  EXPECT_EQ(choose_injection_direction(g, 0, 0, 1), Direction::kCW);
  EXPECT_EQ(choose_injection_direction(g, 0, 0, 3), Direction::kCCW);
  EXPECT_EQ(choose_injection_direction(g, 0, 0, 2), Direction::kCW);
}

// The chosen direction lies on a shortest path, as found by the oracle.
TEST(InjectionDirection, OnShortestPath) {
  TopologyConfig c;
  c.levels = 2;
  c.fanout = {4, 4};
  c.lanes = {2, 1};
  c.bridges_per_child = 2;
  const TopologyGraph g = build_topology(c);
  for (int n = 0; n < g.node_count(); ++n)
    for (int dest = 0; dest < g.node_count(); ++dest) {
      if (n == dest) continue;
      const NodeInfo& s = g.nodes()[n];
      const Direction d = choose_injection_direction(g, s.ring, s.pos, dest);
      const Ring& ring = g.rings()[s.ring];
      const int hops = g.hops_to_exit(s.ring, s.pos, dest, d);
      const int P = ring.positions();
      const int exit = d == Direction::kCW ? (s.pos + hops) % P : (s.pos - hops % P + P) % P;
      const RingMember& m = ring.members[exit];
      int rest = 0;
      if (m.kind == MemberKind::kUpBridge) {
        const Bridge& b = g.bridges()[m.index];
        rest = g.cost_to_go(b.parent_ring, b.parent_pos, dest);
      } else if (m.kind == MemberKind::kDownBridge) {
        const Bridge& b = g.bridges()[m.index];
        rest = g.cost_to_go(b.child_ring, b.child_pos, dest);
      }
      const int via = hops * ring.hop_latency + rest;
      EXPECT_EQ(via, testing::oracle_path_cycles(g, n, dest)) << n << "->" << dest;
    }
}

TEST(Ring, AdvanceMovesOneStage) {
  RingState ring(4, 1);
  ring.at(0, Direction::kCW, 0) = flit_to(1, 5);
  ring.at(0, Direction::kCCW, 0) = flit_to(1, 6);
  ring.advance();
  EXPECT_EQ(ring.at(0, Direction::kCW, 1)->uid, 5u);
  EXPECT_EQ(ring.at(0, Direction::kCCW, 3)->uid, 6u);
  EXPECT_EQ(ring.occupancy(), 2u);
}

}  // namespace
}  // namespace hird

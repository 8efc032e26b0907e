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

#include "hird/engine.hpp"
#include "oracle.hpp"

namespace hird {
namespace {

SimConfig small(double rate, std::uint64_t seed = 1) {
  SimConfig cfg;
  cfg.traffic.rate = rate;
  cfg.traffic.seed = seed;
  cfg.warmup_cycles = 1'000;
  cfg.measure_cycles = 5'000;
  cfg.audit = true;
  return cfg;
}

TEST(Engine, QueuedFlitEntersNextCycle) {
  SimConfig cfg = small(0.0);
  Simulator sim(cfg);
  sim.enqueue_packet(0, 1, 1);
  EXPECT_EQ(sim.flits_in_network(), 0u);
  sim.step();
  EXPECT_EQ(sim.flits_in_network(), 1u);
}

TEST(Engine, SingleRingNeighbour) {
  SimConfig cfg = small(0.0);
  cfg.topology.levels = 1;
  cfg.topology.fanout = {4};
  cfg.topology.lanes = {1};
  Simulator sim(cfg);
  sim.set_window(0, 1000);
  sim.enqueue_packet(0, 1, 1);
  while (sim.packets_delivered() == 0) sim.step();
  EXPECT_EQ(sim.ledger().latency.at(0), 2u);
}

TEST(Engine, SingleRingAllPairs) {
  SimConfig cfg = small(0.0);
  cfg.topology.levels = 1;
  cfg.topology.fanout = {4};
  cfg.topology.lanes = {1};
  for (int s = 0; s < 4; ++s)
    for (int d = 0; d < 4; ++d) {
      if (s == d) continue;
      Simulator sim(cfg);
      sim.set_window(0, 1000);
      sim.enqueue_packet(s, d, 1);
      while (sim.packets_delivered() == 0) sim.step();
      const int hops = std::min((d - s + 4) % 4, (s - d + 4) % 4);
      EXPECT_EQ(sim.ledger().latency.at(0), static_cast<Cycle>(hops * 2)) << s << "->" << d;
    }
}

TEST(Engine, AuditedRunStaysBalanced) {
  Simulator sim(small(0.4));
  for (int i = 0; i < 3000; ++i) {
    sim.step();
    ASSERT_TRUE(sim.census().balanced()) << "cycle " << sim.cycle();
  }
}

TEST(Engine, Reproducible) {
  const SimConfig cfg = small(0.3, 7);
  EXPECT_EQ(run(cfg), run(cfg));
  SimConfig other = cfg;
  other.traffic.seed = 8;
  EXPECT_NE(run(cfg).avg_latency, run(other).avg_latency);
}

TEST(Engine, DrainsAfterHalt) {
  Simulator sim(small(0.6));
  sim.run_for(1500);
  const std::size_t flits = sim.flits_in_network();
  ASSERT_GT(flits, 0u);
  const DrainResult d = drain_test(sim, drain_bound(sim.topology(), flits));
  EXPECT_TRUE(d.drained);
  EXPECT_TRUE(sim.network_empty());
}

TEST(Engine, PlaceFlitRejectsOccupiedSlot) {
  Simulator sim(small(0.0));
  const Flit a = sim.make_test_flit(0, 5);
  const Flit b = sim.make_test_flit(1, 5);
  sim.place_flit(1, 0, Direction::kCW, 0, a);
  EXPECT_THROW(sim.place_flit(1, 0, Direction::kCW, 0, b), InvariantViolation);
}

TEST(Engine, EveryPacketDeliveredWithGuarantees) {
  SimConfig cfg = small(0.5, 3);
  Simulator sim(cfg);
  sim.run_for(4000);
  sim.set_traffic_enabled(false);
  while ((sim.packets_delivered() < sim.packets_created() || !sim.network_empty()) && sim.cycle() < 100'000)
    sim.step();
  EXPECT_EQ(sim.packets_delivered(), sim.packets_created());
  EXPECT_TRUE(sim.census().balanced());
}

TEST(Engine, SmallReassemblyStillDelivers) {
  SimConfig cfg = small(0.5, 4);
  cfg.reassembly_slots = 1;
  Simulator sim(cfg);
  sim.run_for(3000);
  sim.set_traffic_enabled(false);
  while ((sim.packets_delivered() < sim.packets_created() || !sim.network_empty()) && sim.cycle() < 200'000)
    sim.step();
  EXPECT_EQ(sim.packets_delivered(), sim.packets_created());
  EXPECT_GT(sim.census().dropped, 0u);
}

TEST(Engine, InNetworkRetransmitRequests) {
  SimConfig cfg = small(0.4, 5);
  cfg.reassembly_slots = 1;
  cfg.retransmit_transport = RetransmitTransport::kInNetwork;
  Simulator sim(cfg);
  sim.run_for(3000);
  sim.set_traffic_enabled(false);
  while ((sim.packets_delivered() < sim.packets_created() || !sim.network_empty()) && sim.cycle() < 200'000)
    sim.step();
  EXPECT_EQ(sim.packets_delivered(), sim.packets_created());
}

TEST(Engine, ZeroLoadMatchesOracleThreeLevel) {
  SimConfig cfg = small(0.0);
  cfg.topology.levels = 3;
  cfg.topology.fanout = {4, 4, 4};
  cfg.topology.lanes = {4, 2, 1};
  const TopologyGraph g = build_topology(cfg.topology);
  for (int s = 0; s < g.node_count(); s += 7)
    for (int d = 0; d < g.node_count(); d += 5) {
      if (s == d) continue;
      EXPECT_EQ(zero_load_latency(g, s, d, 4), static_cast<Cycle>(testing::oracle_packet_latency(g, s, d, 4) + 1));
    }
}

}  // namespace
}  // namespace hird

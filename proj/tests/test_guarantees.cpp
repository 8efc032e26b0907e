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

#include "hird/guarantees.hpp"

namespace hird {
namespace {

TopologyGraph three_level() {
  TopologyConfig c;
  c.levels = 3;
  c.fanout = {4, 4, 4};
  c.lanes = {4, 2, 1};
  c.bridges_per_child = 2;
  return build_topology(c);
}

TEST(ThrottleLevel, Escalates) {
  EXPECT_FALSE(throttle_level(99, 100, 2));
  EXPECT_EQ(throttle_level(100, 100, 2), 0);
  EXPECT_EQ(throttle_level(199, 100, 2), 0);
  EXPECT_EQ(throttle_level(200, 100, 2), 1);
  EXPECT_EQ(throttle_level(5000, 100, 2), 2);
}

class MonitorTest : public ::testing::Test {
 protected:
  TopologyGraph topo = three_level();
  GuaranteeConfig cfg{true, 100, 1, 0};
  InjectionMonitor mon{topo, cfg};
  int leaf(std::vector<int> digits) { return topo.local_ring_of(topo.node_index(NodeAddress{std::move(digits)})); }
};

TEST_F(MonitorTest, CounterResetsOnInjection) {
  const int p = mon.add_point({leaf({0, 0, 0}), -1, 0});
  for (int i = 0; i < 50; ++i) mon.injection_monitor_tick(p, true, false, false, i);
  EXPECT_EQ(mon.counter(p), 50);
  mon.injection_monitor_tick(p, true, true, false, 50);
  EXPECT_EQ(mon.counter(p), 0);
}

TEST_F(MonitorTest, NoWaitingNoCount) {
  const int p = mon.add_point({leaf({0, 0, 0}), -1, 0});
  for (int i = 0; i < 500; ++i) mon.injection_monitor_tick(p, false, false, false, i);
  EXPECT_EQ(mon.counter(p), 0);
  mon.end_cycle(500);
  EXPECT_TRUE(mon.active_requests().empty());
}

TEST_F(MonitorTest, ThrottleSpreadsWithStarvation) {
  const int starved = mon.add_point({leaf({0, 0, 0}), -1, 0});
  const int sibling = mon.add_point({leaf({0, 0, 1}), -1, 1});
  const int same_mid = mon.add_point({leaf({0, 1, 0}), -1, 2});
  const int far = mon.add_point({leaf({3, 3, 3}), -1, 3});
  const int bridge = mon.add_point({leaf({0, 0, 0}), topo.ring_index(RingId{{0}}), 4});
  Cycle t = 0;
  auto starve = [&](int cycles) {
    for (int i = 0; i < cycles; ++i, ++t) {
      mon.injection_monitor_tick(starved, true, false, false, t);
      mon.end_cycle(t);
    }
  };
  starve(99);
  EXPECT_FALSE(mon.throttled(sibling));
  starve(1);
  EXPECT_EQ(mon.activations(), 1u);
  EXPECT_TRUE(mon.throttled(sibling));
  EXPECT_FALSE(mon.throttled(starved));
  EXPECT_FALSE(mon.throttled(same_mid));
  EXPECT_FALSE(mon.throttled(bridge));
  starve(100);
  EXPECT_TRUE(mon.throttled(same_mid));
  EXPECT_FALSE(mon.throttled(far));
  starve(100);
  EXPECT_TRUE(mon.throttled(far));
  EXPECT_FALSE(mon.throttled(bridge));
  mon.injection_monitor_tick(starved, true, true, false, t);
  mon.end_cycle(t);
  EXPECT_FALSE(mon.throttled(sibling));
  EXPECT_FALSE(mon.throttled(far));
}

TEST_F(MonitorTest, FrozenWhileThrottled) {
  const int p = mon.add_point({leaf({0, 0, 0}), -1, 0});
  for (int i = 0; i < 10; ++i) mon.injection_monitor_tick(p, true, false, true, i);
  EXPECT_EQ(mon.counter(p), 0);
}

TEST_F(MonitorTest, OlderRequestWins) {
  const int a = mon.add_point({leaf({0, 0, 0}), -1, 0});
  const int b = mon.add_point({leaf({0, 0, 0}), -1, 1});
  std::vector<ThrottleRequest> reqs{{a, 10, 0}, {b, 20, 0}};
  std::vector<InjectionPoint> pts{mon.point(a), mon.point(b)};
  EXPECT_FALSE(throttle_applies(topo, pts, reqs, a, &reqs[0]));
  EXPECT_TRUE(throttle_applies(topo, pts, reqs, b, &reqs[1]));
}

TEST_F(MonitorTest, SignalLatencyDelaysVisibility) {
  GuaranteeConfig slow = cfg;
  slow.throttle_signal_latency = 5;
  InjectionMonitor m(topo, slow);
  const int starved = m.add_point({leaf({0, 0, 0}), -1, 0});
  const int other = m.add_point({leaf({0, 0, 0}), -1, 1});
  Cycle t = 0;
  for (; t < 100; ++t) {
    m.injection_monitor_tick(starved, true, false, false, t);
    m.end_cycle(t);
  }
  EXPECT_FALSE(m.active_requests().empty());
  EXPECT_FALSE(m.throttled(other));
  for (int i = 0; i < 5; ++i, ++t) {
    m.injection_monitor_tick(starved, true, false, false, t);
    m.end_cycle(t);
  }
  EXPECT_TRUE(m.throttled(other));
}

TEST(SlotObserver, ReservesOnSecondSighting) {
  SlotObserver obs(3, 1);
  Flit f;
  f.uid = 42;
  EXPECT_EQ(obs.observer_tick(3, &f, true, 4).action, SlotObserver::Action::kNone);
  EXPECT_EQ(obs.observed_flit(), 42u);
  const auto r = obs.observer_tick(3, &f, true, 4);
  EXPECT_EQ(r.action, SlotObserver::Action::kReserve);
  EXPECT_EQ(r.uid, 42u);
}

TEST(SlotObserver, HigherThresholdWaitsLonger) {
  SlotObserver obs(0, 3);
  Flit f;
  f.uid = 1;
  obs.observer_tick(0, &f, true, 1);
  EXPECT_EQ(obs.observer_tick(0, &f, true, 1).action, SlotObserver::Action::kNone);
  EXPECT_EQ(obs.observer_tick(0, &f, true, 1).action, SlotObserver::Action::kNone);
  EXPECT_EQ(obs.observer_tick(0, &f, true, 1).action, SlotObserver::Action::kReserve);
}

TEST(SlotObserver, EmptySlotAdvances) {
  SlotObserver obs(3, 1);
  EXPECT_EQ(obs.observer_tick(3, nullptr, false, 4).action, SlotObserver::Action::kNone);
  EXPECT_EQ(obs.observed_slot(), 4);
}

TEST(SlotObserver, IgnoresOtherRegisters) {
  SlotObserver obs(3, 1);
  Flit f;
  f.uid = 9;
  obs.observer_tick(5, &f, true, 6);
  EXPECT_EQ(obs.observed_slot(), 3);
  EXPECT_FALSE(obs.observed_flit());
}

TEST(SlotObserver, ReleaseWhenReservedFlitLeaves) {
  SlotObserver obs(0, 1);
  Flit f;
  f.uid = 5;
  obs.observer_tick(0, &f, true, 1);
  obs.observer_tick(0, &f, true, 1);
  const auto r = obs.observer_tick(0, nullptr, false, 1);
  EXPECT_EQ(r.action, SlotObserver::Action::kRelease);
  EXPECT_EQ(r.uid, 5u);
  EXPECT_EQ(obs.observed_slot(), 1);
}

TEST(SlotObserver, VisitsEverySlot) {
  const int stages = 8;
  SlotObserver obs(0, 1);
  std::vector<bool> seen(stages, false);
  // An always-empty ring: the observer advances one register per check.
  for (int c = 0; c < 4 * stages; ++c) {
    const int reg = c % stages;
    if (reg == obs.observed_slot()) seen[reg] = true;
    obs.observer_tick(reg, nullptr, false, (reg + 1) % stages);
  }
  for (bool s : seen) EXPECT_TRUE(s);
}

TEST(ReservationGate, Cases) {
  Flit x, y;
  x.uid = 1;
  y.uid = 2;
  EXPECT_FALSE(reservation_gate(std::optional<std::uint64_t>{1}, y, 1));
  EXPECT_TRUE(reservation_gate(std::optional<std::uint64_t>{1}, x, 1));
  EXPECT_TRUE(reservation_gate(std::nullopt, y, 1));
  EXPECT_FALSE(reservation_gate(std::nullopt, y, 0));
  EXPECT_FALSE(reservation_gate(std::optional<std::uint64_t>{1}, x, 0));
}

}  // namespace
}  // namespace hird

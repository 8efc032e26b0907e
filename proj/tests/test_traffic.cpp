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

#include <map>

#include "hird/traffic.hpp"

namespace hird {
namespace {

TopologyGraph four_by_four() {
  TopologyConfig c;
  c.levels = 2;
  c.fanout = {4, 4};
  c.lanes = {2, 1};
  c.bridges_per_child = 2;
  return build_topology(c);
}

TEST(Patterns, BitComplement) {
  EXPECT_EQ(bit_complement_destination(3, 16), 12);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(bit_complement_destination(bit_complement_destination(i, 64), 64), i);
}

TEST(Patterns, Transpose) {
  EXPECT_EQ(transpose_destination(1 * 4 + 2, 16), 2 * 4 + 1);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(transpose_destination(transpose_destination(i, 64), 64), i);
}

TEST(Patterns, ParseNames) {
  for (Pattern p : {Pattern::kUniformRandom, Pattern::kTranspose, Pattern::kBitComplement, Pattern::kWorstCaseABC})
    EXPECT_EQ(parse_pattern(to_string(p)), p);
  EXPECT_THROW(parse_pattern("tornado"), ConfigError);
}

TEST(Generator, SameSeedSameStream) {
  const TopologyGraph g = four_by_four();
  TrafficGenerator a(g, {Pattern::kUniformRandom, 0.3, 4, 9});
  TrafficGenerator b(g, {Pattern::kUniformRandom, 0.3, 4, 9});
  for (Cycle c = 0; c < 2000; ++c)
    for (int n = 0; n < g.node_count(); ++n) ASSERT_EQ(a.tick(n, c), b.tick(n, c));
}

TEST(Generator, RateWithinTwoPercent) {
  const TopologyGraph g = four_by_four();
  const TrafficSpec spec{Pattern::kUniformRandom, 0.2, 4, 3};
  TrafficGenerator gen(g, spec);
  const Cycle cycles = 200'000;
  std::uint64_t flits = 0;
  for (Cycle c = 0; c < cycles; ++c)
    for (int n = 0; n < g.node_count(); ++n)
      if (const auto d = gen.tick(n, c)) {
        EXPECT_NE(*d, n);
        flits += spec.packet_length;
      }
  const double rate = static_cast<double>(flits) / (static_cast<double>(cycles) * g.node_count());
  EXPECT_NEAR(rate, spec.rate, 0.02 * spec.rate);
}

TEST(Generator, WorstCaseDestinations) {
  const TopologyGraph g = four_by_four();
  const auto ordinal = local_ring_ordinals(g);
  TrafficGenerator gen(g, {Pattern::kWorstCaseABC, 1.0, 1, 5});
  std::map<int, std::map<int, int>> hits;  // source ring -> dest ring -> count
  for (Cycle c = 0; c < 4000; ++c)
    for (int n = 0; n < g.node_count(); ++n)
      if (const auto d = gen.tick(n, c)) ++hits[ordinal[g.local_ring_of(n)]][ordinal[g.local_ring_of(*d)]];
  using G = TrafficGenerator;
  EXPECT_EQ(hits[G::kRingA], (std::map<int, int>{{G::kRingC, hits[G::kRingA][G::kRingC]}}));
  EXPECT_EQ(hits[G::kRingC], (std::map<int, int>{{G::kRingA, hits[G::kRingC][G::kRingA]}}));
  EXPECT_GT(hits[G::kRingA][G::kRingC], 0);
  EXPECT_GT(hits[G::kRingC][G::kRingA], 0);
  EXPECT_EQ(hits[G::kRingB].count(G::kRingB), 0u);
  EXPECT_EQ(hits[G::kRingB].size(), 3u);
  EXPECT_EQ(hits.size(), 3u);
  // Every A/B/C node sends every cycle.
  EXPECT_DOUBLE_EQ(gen.packet_probability(0), 1.0);
}

TEST(Generator, TransposeDiagonalIsSilent) {
  const TopologyGraph g = four_by_four();
  TrafficGenerator gen(g, {Pattern::kTranspose, 1.0, 1, 1});
  EXPECT_FALSE(gen.active(0));
  EXPECT_FALSE(gen.active(5));
  EXPECT_TRUE(gen.active(1));
}

TEST(SplitMix, BelowStaysInRange) {
  SplitMix64 r(1);
  for (int i = 0; i < 10'000; ++i) {
    EXPECT_LT(r.below(7), 7u);
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

}  // namespace
}  // namespace hird

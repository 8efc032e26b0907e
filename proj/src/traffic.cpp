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

#include "hird/traffic.hpp"

#include <cmath>

namespace hird {

Pattern parse_pattern(const std::string& name) {
  if (name == "uniform_random") return Pattern::kUniformRandom;
  if (name == "transpose") return Pattern::kTranspose;
  if (name == "bit_complement") return Pattern::kBitComplement;
  if (name == "worst_case_abc") return Pattern::kWorstCaseABC;
  throw ConfigError("unknown traffic pattern '" + name + "'");
}

std::string to_string(Pattern p) {
  switch (p) {
    case Pattern::kUniformRandom: return "uniform_random";
    case Pattern::kTranspose: return "transpose";
    case Pattern::kBitComplement: return "bit_complement";
    case Pattern::kWorstCaseABC: return "worst_case_abc";
  }
  return "?";
}

void TrafficSpec::validate() const {
  if (!(rate >= 0.0 && rate <= 1.0)) throw ConfigError("traffic: rate must be in [0, 1]");
  if (packet_length < 1) throw ConfigError("traffic: packet_length must be >= 1");
}

int transpose_destination(int node, int nodes) {
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nodes))));
  if (side * side != nodes) throw ConfigError("transpose needs a square node count, got " + std::to_string(nodes));
  const int row = node / side;
  const int col = node % side;
  return col * side + row;
}

int bit_complement_destination(int node, int nodes) {
  if (nodes < 2 || (nodes & (nodes - 1)) != 0)
    throw ConfigError("bit_complement needs a power-of-two node count, got " + std::to_string(nodes));
  return ~node & (nodes - 1);
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t SplitMix64::below(std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

std::vector<int> local_ring_ordinals(const TopologyGraph& topo) {
  std::vector<int> ordinal(topo.ring_count(), -1);
  int k = 0;
  for (int r = 0; r < topo.ring_count(); ++r)
    if (topo.rings()[r].local) ordinal[r] = k++;
  return ordinal;
}

TrafficGenerator::TrafficGenerator(const TopologyGraph& topo, TrafficSpec spec) : topo_(&topo), spec_(spec) {
  spec_.validate();
  const int n = topo.node_count();
  // Per-node streams keyed off the master seed so results do not depend on
  // the order nodes are visited in.
  SplitMix64 seeder(spec.seed);
  for (int i = 0; i < n; ++i) streams_.emplace_back(seeder.next() ^ (0xA24BAED4963EE407ULL * (i + 1)));

  const auto ordinals = local_ring_ordinals(topo);
  local_ordinal_.resize(n);
  for (int i = 0; i < n; ++i) {
    local_ordinal_[i] = ordinals[topo.local_ring_of(i)];
    if (static_cast<int>(ring_nodes_.size()) <= local_ordinal_[i]) ring_nodes_.resize(local_ordinal_[i] + 1);
    ring_nodes_[local_ordinal_[i]].push_back(i);
  }

  if (spec_.pattern == Pattern::kTranspose) transpose_destination(0, n);
  if (spec_.pattern == Pattern::kBitComplement) bit_complement_destination(0, n);
  if (spec_.pattern == Pattern::kWorstCaseABC && ring_nodes_.size() < 3)
    throw ConfigError("worst_case_abc needs at least 3 local rings");
}

bool TrafficGenerator::active(int node) const {
  switch (spec_.pattern) {
    case Pattern::kWorstCaseABC:
      return local_ordinal_[node] <= kRingC;
    case Pattern::kTranspose:
      return transpose_destination(node, topo_->node_count()) != node;
    default:
      return true;
  }
}

double TrafficGenerator::packet_probability(int node) const {
  if (!active(node)) return 0.0;
  // Ring A/B/C sources inject continuously.
  const double rate = spec_.pattern == Pattern::kWorstCaseABC ? 1.0 : spec_.rate;
  return rate / spec_.packet_length;
}

int TrafficGenerator::pick_in_ring(int ordinal, SplitMix64& rng) const {
  const auto& nodes = ring_nodes_[ordinal];
  return nodes[rng.below(nodes.size())];
}

int TrafficGenerator::pick_outside_ring(int ordinal, SplitMix64& rng) const {
  const int n = topo_->node_count();
  const int inside = static_cast<int>(ring_nodes_[ordinal].size());
  int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - inside)));
  for (int i = 0; i < n; ++i) {
    if (local_ordinal_[i] == ordinal) continue;
    if (k-- == 0) return i;
  }
  return -1;
}

std::optional<int> TrafficGenerator::tick(int node, Cycle) {
  const double p = packet_probability(node);
  if (p <= 0.0) return std::nullopt;
  SplitMix64& rng = streams_[node];
  if (rng.uniform() >= p) return std::nullopt;
  const int n = topo_->node_count();
  switch (spec_.pattern) {
    case Pattern::kUniformRandom: {
      int dest;
      do {
        dest = static_cast<int>(rng.below(n));
      } while (dest == node);
      return dest;
    }
    case Pattern::kTranspose:
      return transpose_destination(node, n);
    case Pattern::kBitComplement:
      return bit_complement_destination(node, n);
    case Pattern::kWorstCaseABC: {
      const int ring = local_ordinal_[node];
      if (ring == kRingA) return pick_in_ring(kRingC, rng);
      if (ring == kRingC) return pick_in_ring(kRingA, rng);
      return pick_outside_ring(kRingB, rng);
    }
  }
  return std::nullopt;
}

}  // namespace hird

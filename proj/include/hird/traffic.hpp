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
#include <optional>
#include <string>
#include <vector>

#include "hird/topology.hpp"

namespace hird {

enum class Pattern { kUniformRandom, kTranspose, kBitComplement, kWorstCaseABC };

Pattern parse_pattern(const std::string& name);
std::string to_string(Pattern p);

struct TrafficSpec {
  Pattern pattern = Pattern::kUniformRandom;
  double rate = 0.1;  // flits per node per cycle
  int packet_length = 4;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Transpose on a sqrt(N) x sqrt(N) grid laid out row-major by node index.
int transpose_destination(int node, int nodes);
/// Bitwise complement of the node index within log2(N) bits.
int bit_complement_destination(int node, int nodes);

/// Small deterministic generator (splitmix64). Used instead of the standard
/// distributions so streams are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();                     // [0, 1)
  std::uint64_t below(std::uint64_t n);  // [0, n), unbiased

 private:
  std::uint64_t state_;
};

/// Bernoulli packet sources, one independent stream per node.
class TrafficGenerator {
 public:
  TrafficGenerator(const TopologyGraph& topo, TrafficSpec spec);

  /// Destination of the packet node emits this cycle, if any.
  std::optional<int> tick(int node, Cycle cycle);

  /// Per-cycle packet probability for a node.
  double packet_probability(int node) const;
  /// Whether the pattern can ever send from this node.
  bool active(int node) const;

  const TrafficSpec& spec() const { return spec_; }

  /// Local rings playing rings A, B, C in the worst-case pattern.
  static constexpr int kRingA = 0, kRingB = 1, kRingC = 2;

 private:
  int pick_in_ring(int local_ring_ordinal, SplitMix64& rng) const;
  int pick_outside_ring(int local_ring_ordinal, SplitMix64& rng) const;

  const TopologyGraph* topo_;
  TrafficSpec spec_;
  std::vector<SplitMix64> streams_;
  std::vector<int> local_ordinal_;              // node -> ordinal of its local ring
  std::vector<std::vector<int>> ring_nodes_;    // ordinal -> nodes
};

/// Ordinal (0-based, in ring order) of each local ring.
std::vector<int> local_ring_ordinals(const TopologyGraph& topo);

}  // namespace hird

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

#include <compare>
#include <string>
#include <vector>

#include "hird/types.hpp"

namespace hird {

/// Hierarchical node address, most-global digit first. Prefixes of an
/// address name the rings the node sits under.
struct NodeAddress {
  std::vector<int> digits;

  auto operator<=>(const NodeAddress&) const = default;
  std::string str() const;
};

/// A ring is named by the digit prefix shared by everything on it. The root
/// ring has the empty prefix.
struct RingId {
  std::vector<int> prefix;

  int level() const { return static_cast<int>(prefix.size()); }
  auto operator<=>(const RingId&) const = default;
  std::string str() const;
};

struct TopologyConfig {
  int levels = 2;
  // Fan-out per level, root first. The last entry is the number of nodes on
  // each local ring.
  std::vector<int> fanout{4, 4};
  // Bridges joining each non-root ring to its parent. For the 16-node
  // two-level network 1, 2 and 4 give the 4-, 8- and 16-bridge arrangements.
  int bridges_per_child = 2;
  // Lanes (flit-wide sub-rings) per level, root first.
  std::vector<int> lanes{2, 1};
  int local_hop_latency = 2;
  int global_hop_latency = 3;
  int l2g_fifo_depth = 1;
  int g2l_fifo_depth = 4;

  int nodes_per_local_ring() const { return fanout.empty() ? 0 : fanout.back(); }
  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
};

enum class MemberKind { kNode, kUpBridge, kDownBridge };

/// Occupant of one ring position: a node router, or one side of a bridge.
struct RingMember {
  MemberKind kind;
  int index;  // node index or bridge index
};

struct Ring {
  RingId id;
  int parent = -1;
  std::vector<int> children;
  std::vector<RingMember> members;  // position order, CW increasing
  int lanes = 1;
  int hop_latency = 1;
  bool local = false;

  int positions() const { return static_cast<int>(members.size()); }
  /// Slot stages per direction per lane; also the circulation time in cycles.
  int stages() const { return positions() * hop_latency; }
};

struct Bridge {
  int parent_ring = -1;
  int child_ring = -1;
  int parent_pos = -1;
  int child_pos = -1;
};

struct NodeInfo {
  NodeAddress addr;
  int ring = -1;
  int pos = -1;
};

enum class RouteKind { kEjectHere, kStayOnRing, kTransferUp, kTransferDown };

struct RouteDecision {
  RouteKind kind;
  int child_ring = -1;  // set for kTransferDown

  bool operator==(const RouteDecision&) const = default;
};

/// Immutable ring tree plus the precomputed routing tables. Safe to share
/// read-only between simulations.
class TopologyGraph {
 public:
  const TopologyConfig& config() const { return cfg_; }
  const std::vector<Ring>& rings() const { return rings_; }
  const std::vector<Bridge>& bridges() const { return bridges_; }
  const std::vector<NodeInfo>& nodes() const { return nodes_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int ring_count() const { return static_cast<int>(rings_.size()); }
  int depth() const { return cfg_.levels; }

  int ring_index(const RingId& id) const;
  int node_index(const NodeAddress& addr) const;
  const NodeAddress& address(int node) const { return nodes_.at(node).addr; }

  /// Local ring hosting addr.
  RingId ring_of(const NodeAddress& addr) const;
  int local_ring_of(int node) const { return nodes_.at(node).ring; }

  /// Up-then-down tree routing. For the destination's own local ring this
  /// reports kStayOnRing; eject_here() decides at which position it leaves.
  RouteDecision route_decision(const NodeAddress& dest, const RingId& current) const;
  RouteDecision route(int dest_node, int ring) const {
    return route_table_[static_cast<std::size_t>(ring) * nodes_.size() + dest_node];
  }

  /// True when a flit bound for dest_node leaves `ring` at position pos:
  /// ejection at the destination node, or a bridge matching the route.
  bool exits_at(int ring, int pos, int dest_node) const;

  /// Remaining zero-load cycles from (ring, pos) to dest_node, assuming the
  /// flit sits at pos and will travel on. Zero when pos is the exit.
  int cost_to_go(int ring, int pos, int dest_node) const;
  /// Direction that reaches dest_node soonest from (ring, pos); ties go CW.
  Direction preferred_direction(int ring, int pos, int dest_node) const;
  /// Hops to the first exit for dest_node when travelling in d from pos.
  int hops_to_exit(int ring, int pos, int dest_node, Direction d) const;

  /// Tree distance (ring hops) between two rings.
  int ring_tree_distance(int a, int b) const;
  /// The ring `up` levels above `ring`, stopping at the root.
  int ancestor(int ring, int up) const;
  /// Whether `ring` lies in the subtree rooted at `top`.
  bool in_subtree(int ring, int top) const;

  /// Human-readable listing used by `hird_sim topo --dump`.
  std::string dump() const;

 private:
  friend TopologyGraph build_topology(const TopologyConfig& cfg);

  void build_routing();
  int exit_cost(int ring, int pos, int dest_node) const;
  std::size_t pos_key(int ring, int pos) const { return ring_pos_base_[ring] + pos; }

  TopologyConfig cfg_;
  std::vector<Ring> rings_;
  std::vector<Bridge> bridges_;
  std::vector<NodeInfo> nodes_;
  std::vector<RouteDecision> route_table_;  // [ring][dest]
  std::vector<std::size_t> ring_pos_base_;
  std::vector<int> cost_;                   // [(ring,pos)][dest]
  std::vector<Direction> dir_;              // [(ring,pos)][dest]
};

/// Builds the ring tree: rings in breadth-first (level, prefix) order,
/// bridges evenly spaced around every ring.
TopologyGraph build_topology(const TopologyConfig& cfg);

/// Hop count from `from` to `to` travelling in d on a ring of the given size.
int ring_distance(int positions, int from, int to, Direction d);

/// Mixed-radix index of an address (digits concatenated).
int address_to_index(const NodeAddress& addr, const std::vector<int>& fanout);
NodeAddress index_to_address(int index, const std::vector<int>& fanout);

}  // namespace hird

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

#include "hird/topology.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace hird {

namespace {

std::string join_digits(const std::vector<int>& digits) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) os << ',';
    os << digits[i];
  }
  os << ']';
  return os.str();
}

bool is_prefix(const std::vector<int>& prefix, const std::vector<int>& digits) {
  return prefix.size() <= digits.size() && std::equal(prefix.begin(), prefix.end(), digits.begin());
}

constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

}  // namespace

std::string NodeAddress::str() const { return join_digits(digits); }
std::string RingId::str() const { return join_digits(prefix); }

void TopologyConfig::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("topology: " + what); };
  if (levels < 1) fail("levels must be >= 1");
  if (static_cast<int>(fanout.size()) != levels) fail("fanout must list one entry per level");
  if (static_cast<int>(lanes.size()) != levels) fail("lanes must list one entry per level");
  for (int f : fanout)
    if (f < 1) fail("every fanout entry must be >= 1");
  if (nodes_per_local_ring() < 2) fail("nodes_per_local_ring must be >= 2");
  for (int l : lanes)
    if (l < 1) fail("every lane count must be >= 1");
  for (std::size_t i = 1; i < lanes.size(); ++i)
    if (lanes[i - 1] < lanes[i]) fail("lanes must be non-decreasing toward the root");
  if (local_hop_latency < 1 || global_hop_latency < 1) fail("hop latencies must be >= 1");
  if (l2g_fifo_depth < 1) fail("l2g_fifo_depth must be >= 1");
  if (g2l_fifo_depth < 1) fail("g2l_fifo_depth must be >= 1");
  if (levels >= 2) {
    if (bridges_per_child < 1) fail("bridges_per_child must be >= 1 for a multi-level hierarchy");
    if (nodes_per_local_ring() % bridges_per_child != 0)
      fail("nodes_per_local_ring (" + std::to_string(nodes_per_local_ring()) +
           ") is not divisible by bridges_per_child (" + std::to_string(bridges_per_child) +
           "); bridges cannot be spaced evenly");
    if (fanout[0] * bridges_per_child < 2)
      fail("root ring needs at least 2 bridge positions (fanout[0] * bridges_per_child)");
  }
}

int ring_distance(int positions, int from, int to, Direction d) {
  const int diff = d == Direction::kCW ? to - from : from - to;
  return ((diff % positions) + positions) % positions;
}

int address_to_index(const NodeAddress& addr, const std::vector<int>& fanout) {
  int index = 0;
  for (std::size_t i = 0; i < addr.digits.size(); ++i) index = index * fanout[i] + addr.digits[i];
  return index;
}

NodeAddress index_to_address(int index, const std::vector<int>& fanout) {
  NodeAddress addr;
  addr.digits.resize(fanout.size());
  for (std::size_t i = fanout.size(); i-- > 0;) {
    addr.digits[i] = index % fanout[i];
    index /= fanout[i];
  }
  return addr;
}

TopologyGraph build_topology(const TopologyConfig& cfg) {
  cfg.validate();
  TopologyGraph g;
  g.cfg_ = cfg;
  const int L = cfg.levels;
  const int b = cfg.bridges_per_child;

  // Rings, level by level, prefixes in lexicographic order.
  std::vector<std::vector<int>> frontier{{}};
  for (int level = 0; level < L; ++level) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : frontier) {
      Ring r;
      r.id.prefix = prefix;
      r.lanes = cfg.lanes[level];
      r.local = level == L - 1;
      r.hop_latency = r.local ? cfg.local_hop_latency : cfg.global_hop_latency;
      g.rings_.push_back(std::move(r));
      if (level + 1 < L)
        for (int d = 0; d < cfg.fanout[level]; ++d) {
          auto child = prefix;
          child.push_back(d);
          next.push_back(std::move(child));
        }
    }
    frontier = std::move(next);
  }
  for (int i = 0; i < g.ring_count(); ++i) {
    auto& r = g.rings_[i];
    if (r.id.level() == 0) continue;
    RingId parent{std::vector<int>(r.id.prefix.begin(), r.id.prefix.end() - 1)};
    r.parent = g.ring_index(parent);
    g.rings_[r.parent].children.push_back(i);
  }

  // Bridges: bridge j of ring X has index base(X) + j.
  std::vector<int> first_bridge(g.rings_.size(), -1);
  for (int i = 0; i < g.ring_count(); ++i) {
    if (g.rings_[i].parent < 0) continue;
    first_bridge[i] = static_cast<int>(g.bridges_.size());
    for (int j = 0; j < b; ++j) g.bridges_.push_back(Bridge{g.rings_[i].parent, i, -1, -1});
  }

  // Nodes.
  int total = 1;
  for (int f : cfg.fanout) total *= f;
  g.nodes_.resize(total);
  for (int n = 0; n < total; ++n) g.nodes_[n].addr = index_to_address(n, cfg.fanout);

  // Members in position order. Each chunk starts with one up-bridge so that
  // up-bridges sit evenly around the ring.
  for (int i = 0; i < g.ring_count(); ++i) {
    auto& r = g.rings_[i];
    const bool root = r.parent < 0;
    if (r.local) {
      const int n = cfg.nodes_per_local_ring();
      const int base = address_to_index(NodeAddress{[&] {
                                           auto d = r.id.prefix;
                                           d.push_back(0);
                                           return d;
                                         }()},
                                        cfg.fanout);
      if (root) {
        for (int k = 0; k < n; ++k) r.members.push_back({MemberKind::kNode, base + k});
      } else {
        const int per_chunk = n / b;
        for (int j = 0; j < b; ++j) {
          r.members.push_back({MemberKind::kUpBridge, first_bridge[i] + j});
          for (int k = j * per_chunk; k < (j + 1) * per_chunk; ++k)
            r.members.push_back({MemberKind::kNode, base + k});
        }
      }
    } else {
      for (int j = 0; j < b; ++j) {
        if (!root) r.members.push_back({MemberKind::kUpBridge, first_bridge[i] + j});
        for (int child : r.children) r.members.push_back({MemberKind::kDownBridge, first_bridge[child] + j});
      }
    }
    for (int pos = 0; pos < r.positions(); ++pos) {
      const auto& m = r.members[pos];
      switch (m.kind) {
        case MemberKind::kNode:
          g.nodes_[m.index].ring = i;
          g.nodes_[m.index].pos = pos;
          break;
        case MemberKind::kUpBridge:
          g.bridges_[m.index].child_pos = pos;
          break;
        case MemberKind::kDownBridge:
          g.bridges_[m.index].parent_pos = pos;
          break;
      }
    }
  }

  g.build_routing();
  return g;
}

int TopologyGraph::ring_index(const RingId& id) const {
  for (int i = 0; i < ring_count(); ++i)
    if (rings_[i].id == id) return i;
  throw ConfigError("unknown ring " + id.str());
}

int TopologyGraph::node_index(const NodeAddress& addr) const {
  if (static_cast<int>(addr.digits.size()) != cfg_.levels)
    throw ConfigError("address " + addr.str() + " has " + std::to_string(addr.digits.size()) +
                      " digits, topology depth is " + std::to_string(cfg_.levels));
  for (int i = 0; i < cfg_.levels; ++i)
    if (addr.digits[i] < 0 || addr.digits[i] >= cfg_.fanout[i])
      throw ConfigError("address " + addr.str() + " digit " + std::to_string(i) + " out of range");
  return address_to_index(addr, cfg_.fanout);
}

RingId TopologyGraph::ring_of(const NodeAddress& addr) const {
  node_index(addr);  // validates
  return RingId{std::vector<int>(addr.digits.begin(), addr.digits.end() - 1)};
}

RouteDecision TopologyGraph::route_decision(const NodeAddress& dest, const RingId& current) const {
  if (!is_prefix(current.prefix, dest.digits)) return {RouteKind::kTransferUp};
  if (current.level() == cfg_.levels - 1) return {RouteKind::kStayOnRing};
  RingId child{current.prefix};
  child.prefix.push_back(dest.digits[current.level()]);
  return {RouteKind::kTransferDown, ring_index(child)};
}

bool TopologyGraph::exits_at(int ring, int pos, int dest_node) const {
  const RingMember& m = rings_[ring].members[pos];
  const RouteDecision rd = route(dest_node, ring);
  switch (m.kind) {
    case MemberKind::kNode:
      return m.index == dest_node;
    case MemberKind::kUpBridge:
      return rd.kind == RouteKind::kTransferUp;
    case MemberKind::kDownBridge:
      return rd.kind == RouteKind::kTransferDown && bridges_[m.index].child_ring == rd.child_ring;
  }
  return false;
}

int TopologyGraph::hops_to_exit(int ring, int pos, int dest_node, Direction d) const {
  const int P = rings_[ring].positions();
  const int step = d == Direction::kCW ? 1 : P - 1;
  int q = pos;
  for (int hops = 1; hops <= P; ++hops) {
    q = (q + step) % P;
    if (exits_at(ring, q, dest_node)) return hops;
  }
  return kUnreachable;
}

int TopologyGraph::exit_cost(int ring, int pos, int dest_node) const {
  const RingMember& m = rings_[ring].members[pos];
  switch (m.kind) {
    case MemberKind::kNode:
      return 0;
    case MemberKind::kUpBridge: {
      const Bridge& br = bridges_[m.index];
      return cost_to_go(br.parent_ring, br.parent_pos, dest_node);
    }
    case MemberKind::kDownBridge: {
      const Bridge& br = bridges_[m.index];
      return cost_to_go(br.child_ring, br.child_pos, dest_node);
    }
  }
  return kUnreachable;
}

int TopologyGraph::cost_to_go(int ring, int pos, int dest_node) const {
  return cost_[pos_key(ring, pos) * nodes_.size() + dest_node];
}

Direction TopologyGraph::preferred_direction(int ring, int pos, int dest_node) const {
  return dir_[pos_key(ring, pos) * nodes_.size() + dest_node];
}

void TopologyGraph::build_routing() {
  const std::size_t N = nodes_.size();
  route_table_.resize(rings_.size() * N);
  for (int r = 0; r < ring_count(); ++r)
    for (std::size_t d = 0; d < N; ++d)
      route_table_[r * N + d] = route_decision(nodes_[d].addr, rings_[r].id);

  ring_pos_base_.resize(rings_.size());
  std::size_t total_positions = 0;
  for (int r = 0; r < ring_count(); ++r) {
    ring_pos_base_[r] = total_positions;
    total_positions += rings_[r].positions();
  }
  cost_.assign(total_positions * N, kUnreachable);
  dir_.assign(total_positions * N, Direction::kCW);

  auto fill_ring = [&](int r, int dest) {
    const Ring& ring = rings_[r];
    for (int pos = 0; pos < ring.positions(); ++pos) {
      int best = kUnreachable;
      Direction best_dir = Direction::kCW;
      for (Direction d : kDirections) {
        const int hops = hops_to_exit(r, pos, dest, d);
        if (hops >= kUnreachable) continue;
        const int P = ring.positions();
        const int exit_pos = d == Direction::kCW ? (pos + hops) % P : ((pos - hops) % P + P) % P;
        const int c = hops * ring.hop_latency + exit_cost(r, exit_pos, dest);
        if (c < best) {  // strict: ties keep CW
          best = c;
          best_dir = d;
        }
      }
      cost_[pos_key(r, pos) * N + dest] = best;
      dir_[pos_key(r, pos) * N + dest] = best_dir;
    }
  };

  for (std::size_t dest = 0; dest < N; ++dest) {
    // Rings on the destination's root path depend on deeper path rings;
    // every other ring depends on its parent.
    std::vector<int> path;
    for (int r = nodes_[dest].ring; r >= 0; r = rings_[r].parent) path.push_back(r);
    for (int r : path) fill_ring(r, static_cast<int>(dest));
    for (int r = 0; r < ring_count(); ++r)
      if (std::find(path.begin(), path.end(), r) == path.end()) fill_ring(r, static_cast<int>(dest));
  }
}

int TopologyGraph::ring_tree_distance(int a, int b) const {
  int da = rings_[a].id.level();
  int db = rings_[b].id.level();
  int dist = 0;
  while (da > db) { a = rings_[a].parent; --da; ++dist; }
  while (db > da) { b = rings_[b].parent; --db; ++dist; }
  while (a != b) {
    a = rings_[a].parent;
    b = rings_[b].parent;
    dist += 2;
  }
  return dist;
}

int TopologyGraph::ancestor(int ring, int up) const {
  for (; up > 0 && rings_[ring].parent >= 0; --up) ring = rings_[ring].parent;
  return ring;
}

bool TopologyGraph::in_subtree(int ring, int top) const {
  for (; ring >= 0; ring = rings_[ring].parent)
    if (ring == top) return true;
  return false;
}

std::string TopologyGraph::dump() const {
  std::ostringstream os;
  os << "levels=" << cfg_.levels << " nodes=" << node_count() << " rings=" << ring_count()
     << " bridges=" << bridges_.size() << '\n';
  for (int r = 0; r < ring_count(); ++r) {
    const Ring& ring = rings_[r];
    os << "ring " << r << " prefix=" << ring.id.str() << " level=" << ring.id.level()
       << (ring.local ? " local" : " global") << " lanes=" << ring.lanes << " hop=" << ring.hop_latency
       << " parent=" << ring.parent << " positions=" << ring.positions() << "\n  ";
    for (int pos = 0; pos < ring.positions(); ++pos) {
      const auto& m = ring.members[pos];
      if (pos) os << ' ';
      switch (m.kind) {
        case MemberKind::kNode: os << 'N' << nodes_[m.index].addr.str(); break;
        case MemberKind::kUpBridge: os << "U" << m.index; break;
        case MemberKind::kDownBridge: os << "D" << m.index; break;
      }
    }
    os << '\n';
  }
  for (std::size_t i = 0; i < bridges_.size(); ++i) {
    const Bridge& br = bridges_[i];
    os << "bridge " << i << " parent=" << br.parent_ring << "@" << br.parent_pos << " child=" << br.child_ring
       << "@" << br.child_pos << '\n';
  }
  return os.str();
}

}  // namespace hird

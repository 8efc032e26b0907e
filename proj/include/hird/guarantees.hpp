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
#include <deque>
#include <optional>
#include <vector>

#include "hird/flit.hpp"
#include "hird/topology.hpp"

namespace hird {

struct GuaranteeConfig {
  bool enabled = true;
  int injection_threshold = 100;     // starved cycles before throttling
  int observer_retry_threshold = 1;  // circulations before a reservation
  int throttle_signal_latency = 0;   // cycles for throttle changes to take effect
};

// ---------------------------------------------------------------------------
// Injection guarantee
// ---------------------------------------------------------------------------

/// A place where flits enter a ring: one injection FIFO of a node router, or
/// one transfer FIFO of a bridge (which also has a source ring). Both kinds
/// raise requests; only node points are ever throttled.
struct InjectionPoint {
  int target_ring = -1;
  int source_ring = -1;  // bridge points only
  // Points of one group never throttle each other (the two directions of a
  // node).
  int group = -1;
  bool is_node() const { return source_ring < 0; }
};

struct ThrottleRequest {
  int point = -1;
  Cycle since = 0;  // cycle the request was first asserted
  int level = 0;    // the subtree this many levels above the target is throttled
  bool operator==(const ThrottleRequest&) const = default;
};

/// Per-point starvation counters and the hierarchical throttle they drive.
///
/// A point is starved in a cycle when its FIFO has a flit, it was not
/// throttled, and it failed to inject. After `threshold` starved cycles it
/// asserts a request. A request at level l covers the subtree rooted l
/// levels above the requester's target ring, and node routers on covered
/// rings stop injecting. The level grows by one every further `threshold`
/// cycles; at the top level every node stops and the network drains.
/// Bridges are never held back, since that could keep flits already in the
/// network from draining.
/// The request drops as soon as the point injects. Requesters are throttled
/// only by requests older than their own, so the oldest one always has a
/// free hand.
class InjectionMonitor {
 public:
  InjectionMonitor(const TopologyGraph& topo, GuaranteeConfig cfg);

  int add_point(InjectionPoint p);
  std::size_t point_count() const { return points_.size(); }
  const InjectionPoint& point(int id) const { return points_[id]; }

  /// Update one point's counter for the cycle that just ran.
  void injection_monitor_tick(int point, bool waiting, bool injected, bool throttled, Cycle now);
  /// Recompute requests after all points ticked; pushes the snapshot that
  /// becomes visible after the signal latency.
  void end_cycle(Cycle now);

  /// Whether node point `point` may not inject this cycle.
  bool throttled(int point) const;

  int counter(int point) const { return counters_[point]; }
  const std::vector<ThrottleRequest>& active_requests() const { return requests_; }
  const std::vector<ThrottleRequest>& visible_requests() const { return history_.front(); }
  std::uint64_t activations() const { return activations_; }
  bool any_throttle_visible() const { return !history_.front().empty(); }

 private:
  const TopologyGraph* topo_;
  GuaranteeConfig cfg_;
  std::vector<InjectionPoint> points_;
  std::vector<int> counters_;
  std::vector<std::optional<Cycle>> since_;
  std::vector<ThrottleRequest> requests_;
  // history_.front() is the snapshot routers obey this cycle.
  std::deque<std::vector<ThrottleRequest>> history_;
  std::uint64_t activations_ = 0;
};

/// Throttle level reached by a point that has been starved `counter` cycles
/// (nothing below the threshold).
std::optional<int> throttle_level(int counter, int threshold, int max_level);

/// throttle_propagate: whether `point` (with its own request `own`, if any)
/// is throttled by the set of visible requests.
bool throttle_applies(const TopologyGraph& topo, const std::vector<InjectionPoint>& points,
                      const std::vector<ThrottleRequest>& requests, int point, const ThrottleRequest* own);

// ---------------------------------------------------------------------------
// Transfer guarantee
// ---------------------------------------------------------------------------

/// Rotating slot observer of one bridge on one source ring register.
///
/// Looks at its observed slot once per circulation. A flit that keeps
/// reappearing there while it still needs this bridge is stuck; after
/// `retry_threshold` extra sightings a FIFO entry is reserved for it. When
/// the observed flit has gone the observer moves on to the slot arriving
/// next cycle.
class SlotObserver {
 public:
  enum class Action { kNone, kReserve, kRelease };
  struct Result {
    Action action = Action::kNone;
    std::uint64_t uid = 0;
  };

  SlotObserver() = default;
  SlotObserver(int observed_register, int retry_threshold)
      : observed_(observed_register), retry_threshold_(retry_threshold) {}

  /// `register_id` is the slot currently at the bridge, `flit` its content
  /// before the bridge acts, and `next_register_id` the slot arriving next
  /// cycle.
  Result observer_tick(int register_id, const Flit* flit, bool wants_transfer_here, int next_register_id);

  int observed_slot() const { return observed_; }
  int circle_count() const { return circles_; }
  std::optional<std::uint64_t> observed_flit() const { return identity_; }

 private:
  void advance(int next_register_id);

  int observed_ = 0;
  std::optional<std::uint64_t> identity_;
  int circles_ = 0;
  int retry_threshold_ = 1;
  bool reserved_ = false;
};

/// Admission check used by transfer_eject: while a reservation is held no
/// other flit is accepted, whatever the number of free entries.
inline bool reservation_gate(const std::optional<std::uint64_t>& reserved_for, const Flit& arriving,
                             int free_entries) {
  if (free_entries <= 0) return false;
  return !reserved_for || *reserved_for == arriving.uid;
}

}  // namespace hird

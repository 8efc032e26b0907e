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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "hird/bridge_router.hpp"
#include "hird/flit.hpp"
#include "hird/guarantees.hpp"
#include "hird/metrics.hpp"
#include "hird/reassembly.hpp"
#include "hird/ring.hpp"
#include "hird/topology.hpp"
#include "hird/traffic.hpp"

namespace hird {

struct SimConfig {
  TopologyConfig topology;
  TrafficSpec traffic;
  GuaranteeConfig guarantees;
  Cycle warmup_cycles = 10'000;
  Cycle measure_cycles = 100'000;
  // Hard stop. After the window the run keeps going (traffic on) until every
  // packet created in the window is delivered or this cap is hit. 0 means
  // 2 * (warmup + measure).
  Cycle max_cycles = 0;
  int reassembly_slots = 16;
  RetransmitTransport retransmit_transport = RetransmitTransport::kOutOfBand;
  // Test-only switch; the Swap Rule is part of the design and always on.
  bool swap_rule = true;
  // Per-cycle conservation and accounting audit.
  bool audit = false;

  Cycle cycle_cap() const { return max_cycles ? max_cycles : 2 * (warmup_cycles + measure_cycles); }
  void validate() const;
};

/// Flit population by location, used by the conservation audit.
struct FlitCensus {
  std::uint64_t created = 0;
  std::uint64_t queued = 0;     // source injection queues
  std::uint64_t in_ring = 0;
  std::uint64_t in_fifo = 0;    // bridge transfer FIFOs
  std::uint64_t consumed = 0;   // stored by reassembly or handled as control
  std::uint64_t dropped = 0;    // dropped by reassembly (retransmitted later)

  bool balanced() const { return created == queued + in_ring + in_fifo + consumed + dropped; }
};

/// One cycle-accurate simulation instance. Single-threaded, deterministic
/// for a given configuration.
///
/// Each cycle: every ring advances one stage; each router then works on the
/// registers at its own position only (eject, swap, transfer eject,
/// transfer inject, inject), so routers never see each other's writes from
/// the same cycle; the guarantee monitors fold in the cycle; sources
/// enqueue new packets; receivers grant retransmissions.
class Simulator {
 public:
  explicit Simulator(const SimConfig& cfg);
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  void step();
  void run_for(Cycle cycles);
  Cycle cycle() const { return now_; }

  const TopologyGraph& topology() const { return topo_; }
  const SimConfig& config() const { return cfg_; }

  /// Stops node injection and packet generation (bridges keep moving).
  void set_injection_enabled(bool on) { injection_enabled_ = on; }
  void set_traffic_enabled(bool on) { traffic_enabled_ = on; }

  /// Queue a packet at its source as the traffic generator would.
  std::uint64_t enqueue_packet(int src, int dest, int length);

  // State construction for tests and the verification suites. `stage` is a
  // slot stage of the ring; router p sits at stage p * hop_latency.
  Flit make_test_flit(int src, int dest);
  void place_flit(int ring, int lane, Direction d, int stage, const Flit& f);
  void push_transfer_fifo(int bridge, bool upward, int fifo, const Flit& f);

  std::size_t flits_in_network() const;  // ring slots + transfer FIFOs
  bool network_empty() const { return flits_in_network() == 0; }
  std::uint64_t source_backlog() const;
  FlitCensus census() const;
  /// Throws InvariantViolation describing the first broken invariant.
  void audit() const;

  /// Max deflection count over delivered flits and flits still in flight.
  std::uint64_t max_deflections() const;
  /// Max head-of-FIFO wait, including heads still waiting now.
  Cycle max_fifo_wait() const;

  const MetricsLedger& ledger() const { return ledger_; }
  const RingState& ring_state(int ring) const { return rings_[ring]; }
  const TransferPool& up_pool(int bridge) const { return bridges_[bridge].up; }
  const TransferPool& down_pool(int bridge) const { return bridges_[bridge].down; }
  const ReassemblyBuffer& reassembly(int node) const { return nodes_[node].reassembly; }
  const InjectionMonitor& monitor() const { return monitor_; }
  std::uint64_t packets_created() const { return packets_created_; }
  std::uint64_t packets_delivered() const { return packets_delivered_; }
  std::uint64_t total_transfers() const { return ledger_.transfer_accepts + 2 * ledger_.swaps; }
  std::uint64_t flits_ejected() const { return census_.consumed + census_.dropped; }

  /// Summary over the measurement window [window_start, window_end).
  MetricsReport report(Cycle window_start, Cycle window_end) const;

  // Measurement window bookkeeping used by run().
  void set_window(Cycle start, Cycle end) {
    window_start_ = start;
    window_end_ = end;
  }
  std::uint64_t window_packets_outstanding() const { return window_created_ - window_delivered_; }

 private:
  struct NodeState {
    int ring = -1;
    int pos = -1;
    std::array<InjectionQueue, 2> inject;
    std::array<int, 2> point{-1, -1};
    ReassemblyBuffer reassembly;
  };
  struct BridgeState {
    TransferPool up;    // child -> parent, one FIFO per parent lane
    TransferPool down;  // parent -> child, one FIFO per parent lane
    std::vector<int> up_points;
    std::vector<int> down_points;
    // Observers on the source ring of each pool: [dir][lane].
    std::array<std::vector<SlotObserver>, 2> child_observers;
    std::array<std::vector<SlotObserver>, 2> parent_observers;
  };

  void process_node(int node);
  void process_bridge(int bridge);
  void observe(RingStop& stop, int ring, bool upward, int child_ring,
               std::array<std::vector<SlotObserver>, 2>& observers, TransferPool& pool);
  bool wants_transfer(const Flit& f, int ring, bool upward, int child_ring) const;
  void deliver(int node, const Flit& f);
  void enqueue_at_source(int src, const Packet& p);
  void enqueue_control(int src, const Flit& f);
  void generate_traffic();
  void grant_retransmits();
  bool in_window(Cycle c) const { return c >= window_start_ && c < window_end_; }
  int stage_of(int ring, int pos) const { return pos * topo_.rings()[ring].hop_latency; }

  SimConfig cfg_;
  TopologyGraph topo_;
  std::vector<RingState> rings_;
  std::vector<NodeState> nodes_;
  std::vector<BridgeState> bridges_;
  PacketFactory factory_;
  InjectionMonitor monitor_;
  TrafficGenerator traffic_;
  MetricsLedger ledger_;
  FlitCensus census_;
  std::vector<int> local_ordinal_;
  Cycle now_ = 0;
  bool injection_enabled_ = true;
  bool traffic_enabled_ = true;
  Cycle window_start_ = 0;
  Cycle window_end_ = 0;
  std::uint64_t packets_created_ = 0;
  std::uint64_t packets_delivered_ = 0;
  std::uint64_t window_created_ = 0;
  std::uint64_t window_delivered_ = 0;
  std::uint64_t retransmits_ = 0;
  std::uint64_t max_delivered_deflections_ = 0;
  Cycle max_head_wait_ = 0;
};

/// Warmup, measurement window, then drain of window packets up to the cap.
MetricsReport run(const SimConfig& cfg);

struct DrainResult {
  bool drained = false;
  Cycle cycles = 0;  // cycles until the network held no flit
  std::size_t flits_at_start = 0;
};

/// Analytic drain bound: flits x longest ring circulation x levels.
Cycle drain_bound(const TopologyGraph& topo, std::size_t flits);

/// Halts injection and steps until no flit remains in any ring slot or
/// transfer FIFO, giving up after `limit` cycles.
DrainResult drain_test(Simulator& sim, Cycle limit);

/// Zero-load packet latency (cycles) for a flit from src to dest:
/// one cycle to enter the ring plus the routed path's hop latencies.
Cycle zero_load_latency(const TopologyGraph& topo, int src, int dest, int packet_length = 1);

/// Mean zero-load packet latency over the pairs a traffic pattern produces.
double zero_load_latency(const TopologyGraph& topo, const TrafficSpec& spec);

}  // namespace hird

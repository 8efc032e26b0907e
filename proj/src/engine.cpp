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

#include "hird/engine.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "hird/node_router.hpp"

namespace hird {

void SimConfig::validate() const {
  topology.validate();
  traffic.validate();
  if (measure_cycles < 1) throw ConfigError("run: measure_cycles must be >= 1");
  if (max_cycles != 0 && max_cycles < warmup_cycles + measure_cycles)
    throw ConfigError("run: max_cycles must be >= warmup_cycles + measure_cycles");
  if (reassembly_slots < 1) throw ConfigError("run: reassembly_slots must be >= 1");
  if (guarantees.injection_threshold < 1) throw ConfigError("guarantees: injection_threshold must be >= 1");
  if (guarantees.observer_retry_threshold < 1)
    throw ConfigError("guarantees: observer_retry_threshold must be >= 1");
  if (guarantees.throttle_signal_latency < 0 || guarantees.throttle_signal_latency > 30)
    throw ConfigError("guarantees: throttle_signal_latency must be in [0, 30]");
}

namespace {

int next_register(int current, Direction d, int stages) {
  return d == Direction::kCW ? (current + stages - 1) % stages : (current + 1) % stages;
}

TopologyGraph checked_topology(const SimConfig& cfg) {
  cfg.validate();
  return build_topology(cfg.topology);
}

}  // namespace

Simulator::Simulator(const SimConfig& cfg)
    : cfg_(cfg),
      topo_(checked_topology(cfg)),
      monitor_(topo_, cfg.guarantees),
      traffic_(topo_, cfg.traffic),
      local_ordinal_(topo_.node_count(), -1) {
  rings_.reserve(topo_.rings().size());
  for (const Ring& r : topo_.rings()) rings_.emplace_back(r.stages(), r.lanes);

  nodes_.reserve(topo_.node_count());
  for (int n = 0; n < topo_.node_count(); ++n) {
    NodeState ns;
    ns.ring = topo_.nodes()[n].ring;
    ns.pos = topo_.nodes()[n].pos;
    ns.reassembly = ReassemblyBuffer(cfg.reassembly_slots);
    for (Direction d : kDirections) ns.point[dir_index(d)] = monitor_.add_point({ns.ring, -1, n});
    nodes_.push_back(std::move(ns));
  }

  const int g = cfg.guarantees.observer_retry_threshold;
  // Bridge points get group ids past the node range.
  auto group_of = [&](int src, int dst) { return topo_.node_count() + src * topo_.ring_count() + dst; };
  for (const Bridge& br : topo_.bridges()) {
    const Ring& parent = topo_.rings()[br.parent_ring];
    const Ring& child = topo_.rings()[br.child_ring];
    BridgeState bs;
    bs.up = TransferPool(parent.lanes, cfg.topology.l2g_fifo_depth);
    bs.down = TransferPool(parent.lanes, cfg.topology.g2l_fifo_depth);
    for (int i = 0; i < parent.lanes; ++i) bs.up_points.push_back(monitor_.add_point({br.parent_ring, br.child_ring, group_of(br.child_ring, br.parent_ring)}));
    for (int i = 0; i < parent.lanes; ++i) bs.down_points.push_back(monitor_.add_point({br.child_ring, br.parent_ring, group_of(br.parent_ring, br.child_ring)}));
    for (Direction d : kDirections) {
      // Each observer starts on the register sitting at its bridge.
      bs.child_observers[dir_index(d)].assign(child.lanes, SlotObserver(stage_of(br.child_ring, br.child_pos), g));
      bs.parent_observers[dir_index(d)].assign(parent.lanes, SlotObserver(stage_of(br.parent_ring, br.parent_pos), g));
    }
    bridges_.push_back(std::move(bs));
  }

  const auto ordinals = local_ring_ordinals(topo_);
  for (int n = 0; n < topo_.node_count(); ++n) local_ordinal_[n] = ordinals[topo_.local_ring_of(n)];
  ledger_.delivered_by_src.assign(topo_.node_count(), 0);
}

void Simulator::run_for(Cycle cycles) {
  for (Cycle i = 0; i < cycles; ++i) step();
}

void Simulator::step() {
  for (auto& r : rings_) r.advance();

  for (int r = 0; r < topo_.ring_count(); ++r) {
    const Ring& ring = topo_.rings()[r];
    for (int pos = 0; pos < ring.positions(); ++pos) {
      const RingMember& m = ring.members[pos];
      if (m.kind == MemberKind::kNode)
        process_node(m.index);
      else if (m.kind == MemberKind::kUpBridge)
        process_bridge(m.index);  // handles both of its rings
    }
  }

  if (cfg_.guarantees.enabled) {
    const auto before = monitor_.activations();
    monitor_.end_cycle(now_);
    if (monitor_.activations() != before) ledger_.throttle_events.push_back(now_);
  }

  generate_traffic();
  grant_retransmits();

  if (in_window(now_)) {
    const Cycle len = window_end_ - window_start_;
    const Cycle every = std::max<Cycle>(1, len / 8);
    if ((now_ - window_start_ + 1) % every == 0 && ledger_.backlog_samples.size() < 8)
      ledger_.backlog_samples.push_back(source_backlog());
  }

  if (cfg_.audit) audit();
  ++now_;
}

void Simulator::process_node(int node) {
  NodeState& ns = nodes_[node];
  RingStop stop(rings_[ns.ring], stage_of(ns.ring, ns.pos));
  for (const Flit& f : eject_stage(stop, node)) deliver(node, f);

  for (Direction d : kDirections) {
    auto& q = ns.inject[dir_index(d)];
    const int point = ns.point[dir_index(d)];
    const bool waiting = !q.empty();
    const bool throttled = !injection_enabled_ || (cfg_.guarantees.enabled && monitor_.throttled(point));
    const auto lane = inject_stage(stop, d, q, factory_, throttled, now_);
    if (cfg_.guarantees.enabled) monitor_.injection_monitor_tick(point, waiting, lane.has_value(), throttled, now_);
  }
}

void Simulator::observe(RingStop& stop, int ring, bool upward, int child_ring,
                        std::array<std::vector<SlotObserver>, 2>& observers, TransferPool& pool) {
  const int stages = rings_[ring].stages();
  auto apply = [&](const SlotObserver::Result& res) {
    if (res.action == SlotObserver::Action::kReserve && !pool.reserved_for) {
      pool.reserved_for = res.uid;
    } else if (res.action == SlotObserver::Action::kRelease && pool.reserved_for == res.uid) {
      pool.reserved_for.reset();
    }
  };
  for (Direction d : kDirections) {
    const int reg = stop.register_id(d);
    const int next = next_register(reg, d, stages);
    for (int lane = 0; lane < stop.lanes(); ++lane) {
      const auto& slot = stop.slot(d, lane);
      const bool wants = slot && wants_transfer(*slot, ring, upward, child_ring);
      apply(observers[dir_index(d)][lane].observer_tick(reg, slot ? &*slot : nullptr, wants, next));
    }
  }
}

bool Simulator::wants_transfer(const Flit& f, int ring, bool upward, int child_ring) const {
  const RouteDecision rd = topo_.route(f.dest, ring);
  if (upward) return rd.kind == RouteKind::kTransferUp;
  return rd.kind == RouteKind::kTransferDown && rd.child_ring == child_ring;
}

void Simulator::process_bridge(int b) {
  const Bridge& br = topo_.bridges()[b];
  BridgeState& bs = bridges_[b];
  RingStop child(rings_[br.child_ring], stage_of(br.child_ring, br.child_pos));
  RingStop parent(rings_[br.parent_ring], stage_of(br.parent_ring, br.parent_pos));

  if (cfg_.guarantees.enabled) {
    observe(child, br.child_ring, true, br.child_ring, bs.child_observers, bs.up);
    observe(parent, br.parent_ring, false, br.child_ring, bs.parent_observers, bs.down);
  }

  if (cfg_.swap_rule) {
    auto first = [&](RingStop& stop, int ring, bool upward) -> std::optional<Flit>* {
      for (int lane = 0; lane < stop.lanes(); ++lane)
        for (Direction d : kDirections) {
          auto& slot = stop.slot(d, lane);
          if (slot && wants_transfer(*slot, ring, upward, br.child_ring)) return &slot;
        }
      return nullptr;
    };
    auto* up = first(child, br.child_ring, true);
    auto* down = up ? first(parent, br.parent_ring, false) : nullptr;
    if (up && down) {
      if (bs.up.reserved_for == (*up)->uid) bs.up.reserved_for.reset();
      if (bs.down.reserved_for == (*down)->uid) bs.down.reserved_for.reset();
      swap_rule(*up, *down);
      ++ledger_.swaps;
    }
  }

  auto eject_side = [&](RingStop& stop, int ring, bool upward, TransferPool& pool) {
    for (int lane = 0; lane < stop.lanes(); ++lane)
      for (Direction d : kDirections) {
        auto& slot = stop.slot(d, lane);
        if (!slot || !wants_transfer(*slot, ring, upward, br.child_ring)) continue;
        if (transfer_eject(slot, pool, now_) == TransferOutcome::kAccepted)
          ++ledger_.transfer_accepts;
        else
          ++ledger_.transfer_deflections;
      }
  };
  eject_side(child, br.child_ring, true, bs.up);
  eject_side(parent, br.parent_ring, false, bs.down);

  auto inject_side = [&](TransferPool& pool, RingStop& dest, int ring, int pos, const std::vector<int>& points) {
    const std::size_t n = pool.fifos.size();
    std::vector<bool> waiting(n), injected(n);
    for (std::size_t i = 0; i < n; ++i) waiting[i] = !pool.fifos[i].empty();
    const auto moved = transfer_inject(
        pool, dest, [&](const Flit& f) { return topo_.preferred_direction(ring, pos, f.dest); }, now_);
    for (const auto& t : moved) {
      injected[t.fifo] = true;
      max_head_wait_ = std::max(max_head_wait_, t.head_wait);
      if (in_window(now_)) {
        ledger_.fifo_head_wait.add(t.head_wait);
        ledger_.fifo_queue_wait.add(t.queue_wait);
      }
    }
    if (cfg_.guarantees.enabled)
      for (std::size_t i = 0; i < n; ++i) monitor_.injection_monitor_tick(points[i], waiting[i], injected[i], false, now_);
  };
  inject_side(bs.up, parent, br.parent_ring, br.parent_pos, bs.up_points);
  inject_side(bs.down, child, br.child_ring, br.child_pos, bs.down_points);
}

void Simulator::deliver(int node, const Flit& f) {
  max_delivered_deflections_ = std::max<std::uint64_t>(max_delivered_deflections_, f.deflections);
  if (f.kind == FlitKind::kRetransmitRequest) {
    ++census_.consumed;
    Packet p;
    p.packet_id = f.packet_id;
    p.src = node;
    p.dest = f.src;
    p.length_flits = f.length;
    p.created = f.created;
    p.attempt = 1;
    enqueue_at_source(node, p);
    return;
  }
  if (in_window(now_)) {
    ledger_.deflections.add(f.deflections);
    ++ledger_.deflection_histogram[f.deflections];
  }
  const ReceiveResult r = nodes_[node].reassembly.receive_flit(f, now_);
  if (r.kind == ReceiveResult::Kind::kDroppedRetransmitMarked) {
    ++census_.dropped;
    return;
  }
  ++census_.consumed;
  if (r.kind != ReceiveResult::Kind::kPacketComplete) return;
  const Packet& p = *r.completed;
  ++packets_delivered_;
  if (in_window(p.created)) {
    ++window_delivered_;
    ledger_.latency.push_back(now_ - p.created);
  }
  if (in_window(now_)) ledger_.delivered_by_src[p.src] += static_cast<std::uint64_t>(p.length_flits);
}

void Simulator::enqueue_at_source(int src, const Packet& p) {
  const NodeState& ns = nodes_[src];
  const Direction d = choose_injection_direction(topo_, ns.ring, ns.pos, p.dest);
  auto& q = nodes_[src].inject[dir_index(d)];
  if (p.attempt > 0)
    q.push_retransmit(p);
  else
    q.push(p);
  census_.created += static_cast<std::uint64_t>(p.length_flits);
}

void Simulator::enqueue_control(int src, const Flit& f) {
  const NodeState& ns = nodes_[src];
  const Direction d = choose_injection_direction(topo_, ns.ring, ns.pos, f.dest);
  nodes_[src].inject[dir_index(d)].push_flit(f);
  ++census_.created;
}

std::uint64_t Simulator::enqueue_packet(int src, int dest, int length) {
  const Packet p = factory_.make_packet(src, dest, length, now_);
  ++packets_created_;
  if (in_window(now_)) ++window_created_;
  enqueue_at_source(src, p);
  return p.packet_id;
}

void Simulator::generate_traffic() {
  if (!traffic_enabled_ || !injection_enabled_) return;
  for (int n = 0; n < topo_.node_count(); ++n) {
    const auto dest = traffic_.tick(n, now_);
    if (dest) enqueue_packet(n, *dest, cfg_.traffic.packet_length);
  }
}

void Simulator::grant_retransmits() {
  for (int n = 0; n < topo_.node_count(); ++n) {
    while (auto req = nodes_[n].reassembly.grant_retransmit()) {
      ++retransmits_;
      Packet about;
      about.packet_id = req->packet_id;
      about.src = req->src;
      about.dest = n;
      about.length_flits = req->length;
      about.created = req->created;
      about.attempt = 1;
      if (cfg_.retransmit_transport == RetransmitTransport::kOutOfBand)
        enqueue_at_source(req->src, about);
      else
        enqueue_control(n, factory_.make_control_flit(n, req->src, about, now_));
    }
  }
}

Flit Simulator::make_test_flit(int src, int dest) {
  const Packet p = factory_.make_packet(src, dest, 1, now_);
  ++packets_created_;
  ++census_.created;
  return factory_.make_flit(p, 0);
}

void Simulator::place_flit(int ring, int lane, Direction d, int stage, const Flit& f) {
  auto& slot = rings_.at(ring).at(lane, d, stage);
  if (slot) throw InvariantViolation(now_, "place_flit: slot already occupied");
  slot = f;
}

void Simulator::push_transfer_fifo(int bridge, bool upward, int fifo, const Flit& f) {
  auto& pool = upward ? bridges_.at(bridge).up : bridges_.at(bridge).down;
  pool.fifos.at(fifo).push(f, now_);
}

std::size_t Simulator::flits_in_network() const {
  std::size_t n = 0;
  for (const auto& r : rings_) n += r.occupancy();
  for (const auto& b : bridges_) n += static_cast<std::size_t>(b.up.occupancy() + b.down.occupancy());
  return n;
}

std::uint64_t Simulator::source_backlog() const {
  std::uint64_t n = 0;
  for (const auto& ns : nodes_)
    for (const auto& q : ns.inject) n += q.flits();
  return n;
}

FlitCensus Simulator::census() const {
  FlitCensus c = census_;
  c.queued = source_backlog();
  c.in_ring = 0;
  for (const auto& r : rings_) c.in_ring += r.occupancy();
  c.in_fifo = 0;
  for (const auto& b : bridges_) c.in_fifo += static_cast<std::uint64_t>(b.up.occupancy() + b.down.occupancy());
  return c;
}

void Simulator::audit() const {
  const FlitCensus c = census();
  if (!c.balanced()) {
    std::ostringstream os;
    os << "flit conservation broken: created=" << c.created << " queued=" << c.queued << " in_ring=" << c.in_ring
       << " in_fifo=" << c.in_fifo << " consumed=" << c.consumed << " dropped=" << c.dropped;
    throw InvariantViolation(now_, os.str());
  }
  std::unordered_set<std::uint64_t> seen;
  auto check = [&](const Flit& f) {
    if (!seen.insert(f.uid).second)
      throw InvariantViolation(now_, "flit uid " + std::to_string(f.uid) + " present twice in the network");
  };
  for (const auto& r : rings_) r.for_each_flit(check);
  for (const auto& b : bridges_)
    for (const TransferPool* pool : {&b.up, &b.down})
      for (const auto& fifo : pool->fifos) {
        if (fifo.size() > fifo.capacity()) throw InvariantViolation(now_, "transfer FIFO over capacity");
        fifo.for_each(check);
      }
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const auto& rb = nodes_[n].reassembly;
    if (rb.occupied() + rb.reserved() + rb.free_slots() != rb.capacity())
      throw InvariantViolation(now_, "reassembly slot accounting broken at node " + std::to_string(n));
  }
}

std::uint64_t Simulator::max_deflections() const {
  std::uint64_t m = max_delivered_deflections_;
  auto take = [&](const Flit& f) { m = std::max<std::uint64_t>(m, f.deflections); };
  for (const auto& r : rings_) r.for_each_flit(take);
  for (const auto& b : bridges_) {
    for (const auto& fifo : b.up.fifos) fifo.for_each(take);
    for (const auto& fifo : b.down.fifos) fifo.for_each(take);
  }
  return m;
}

Cycle Simulator::max_fifo_wait() const {
  Cycle m = max_head_wait_;
  for (const auto& b : bridges_)
    for (const TransferPool* pool : {&b.up, &b.down})
      for (const auto& fifo : pool->fifos)
        if (!fifo.empty()) m = std::max(m, now_ - fifo.head_since());
  return m;
}

MetricsReport Simulator::report(Cycle window_start, Cycle window_end) const {
  MetricsReport r;
  const Cycle measure = window_end - window_start;
  const int N = topo_.node_count();
  r.cycles_run = now_;
  r.measure_cycles = measure;
  r.packets_created = packets_created_;
  r.packets_delivered = packets_delivered_;
  r.flits_dropped = census_.dropped;
  r.retransmits = retransmits_;

  std::uint64_t flits = 0;
  for (auto v : ledger_.delivered_by_src) flits += v;
  r.flits_delivered = flits;
  const double denom = static_cast<double>(measure);
  r.throughput = measure ? static_cast<double>(flits) / (N * denom) : 0.0;

  int local_rings = 0;
  for (int o : local_ordinal_) local_rings = std::max(local_rings, o + 1);
  std::vector<std::uint64_t> ring_flits(local_rings, 0), ring_nodes(local_rings, 0);
  for (int n = 0; n < N; ++n) {
    ring_flits[local_ordinal_[n]] += ledger_.delivered_by_src[n];
    ++ring_nodes[local_ordinal_[n]];
  }
  for (int i = 0; i < local_rings; ++i)
    r.ring_throughput.push_back(measure ? static_cast<double>(ring_flits[i]) / (ring_nodes[i] * denom) : 0.0);

  if (!ledger_.latency.empty()) {
    double sum = 0.0;
    for (auto v : ledger_.latency) sum += static_cast<double>(v);
    r.avg_latency = sum / static_cast<double>(ledger_.latency.size());
    r.p95_latency = percentile(ledger_.latency, 95.0);
    r.max_latency = *std::max_element(ledger_.latency.begin(), ledger_.latency.end());
  }
  r.fifo_wait_avg = ledger_.fifo_head_wait.mean();
  r.fifo_wait_max = max_fifo_wait();
  r.fifo_queue_wait_avg = ledger_.fifo_queue_wait.mean();
  r.deflect_avg = ledger_.deflections.mean();
  r.deflect_max = max_deflections();
  r.swaps = ledger_.swaps;
  r.throttle_activations = monitor_.activations();
  r.backlog_samples = ledger_.backlog_samples;
  r.backlog_growing = monotone_growth(ledger_.backlog_samples, static_cast<std::uint64_t>(N));
  r.incomplete = window_packets_outstanding() > 0;
  return r;
}

MetricsReport run(const SimConfig& cfg) {
  Simulator sim(cfg);
  const Cycle start = cfg.warmup_cycles;
  const Cycle end = cfg.warmup_cycles + cfg.measure_cycles;
  sim.set_window(start, end);
  const Cycle cap = cfg.cycle_cap();
  while (sim.cycle() < end) sim.step();
  while (sim.window_packets_outstanding() > 0 && sim.cycle() < cap) sim.step();
  return sim.report(start, end);
}

Cycle drain_bound(const TopologyGraph& topo, std::size_t flits) {
  Cycle longest = 0;
  for (const Ring& r : topo.rings()) longest = std::max<Cycle>(longest, static_cast<Cycle>(r.stages()));
  return static_cast<Cycle>(std::max<std::size_t>(flits, 1)) * longest * static_cast<Cycle>(topo.depth());
}

DrainResult drain_test(Simulator& sim, Cycle limit) {
  DrainResult res;
  res.flits_at_start = sim.flits_in_network();
  sim.set_injection_enabled(false);
  const Cycle start = sim.cycle();
  while (!sim.network_empty()) {
    if (sim.cycle() - start >= limit) {
      res.cycles = sim.cycle() - start;
      return res;
    }
    sim.step();
  }
  res.drained = true;
  res.cycles = sim.cycle() - start;
  return res;
}

Cycle zero_load_latency(const TopologyGraph& topo, int src, int dest, int packet_length) {
  const NodeInfo& n = topo.nodes().at(src);
  return static_cast<Cycle>(packet_length) + static_cast<Cycle>(topo.cost_to_go(n.ring, n.pos, dest));
}

double zero_load_latency(const TopologyGraph& topo, const TrafficSpec& spec) {
  double sum = 0.0;
  std::uint64_t count = 0;
  const int N = topo.node_count();
  if (spec.pattern == Pattern::kUniformRandom || spec.pattern == Pattern::kWorstCaseABC) {
    for (int s = 0; s < N; ++s)
      for (int d = 0; d < N; ++d)
        if (s != d) {
          sum += static_cast<double>(zero_load_latency(topo, s, d, spec.packet_length));
          ++count;
        }
  } else {
    for (int s = 0; s < N; ++s) {
      const int d = spec.pattern == Pattern::kTranspose ? transpose_destination(s, N) : bit_complement_destination(s, N);
      if (d == s) continue;
      sum += static_cast<double>(zero_load_latency(topo, s, d, spec.packet_length));
      ++count;
    }
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

}  // namespace hird

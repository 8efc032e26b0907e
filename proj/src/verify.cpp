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

#include "hird/verify.hpp"

#include <sstream>

#include "hird/traffic.hpp"

namespace hird {

std::vector<std::pair<std::string, SimConfig>> bundled_configs() {
  std::vector<std::pair<std::string, SimConfig>> out;

  SimConfig ur;  // 4x4, 8 bridges
  ur.traffic = {Pattern::kUniformRandom, 0.1, 4, 1};
  out.emplace_back("ur4x4", ur);

  SimConfig h3;
  h3.topology.levels = 3;
  h3.topology.fanout = {4, 4, 4};
  h3.topology.lanes = {4, 2, 1};
  h3.topology.bridges_per_child = 2;
  h3.traffic = {Pattern::kUniformRandom, 0.05, 4, 1};
  out.emplace_back("hird8x8", h3);

  for (int lanes : {1, 2, 4}) {
    SimConfig sr;
    sr.topology.levels = 1;
    sr.topology.fanout = {16};
    sr.topology.lanes = {lanes};
    sr.topology.local_hop_latency = 1;
    sr.traffic = {Pattern::kUniformRandom, 0.1, 4, 1};
    out.emplace_back("ring16_" + std::to_string(lanes) + "lane", sr);
  }

  SimConfig r64;
  r64.topology.levels = 1;
  r64.topology.fanout = {64};
  r64.topology.lanes = {4};
  r64.topology.local_hop_latency = 1;
  r64.traffic = {Pattern::kUniformRandom, 0.05, 4, 1};
  out.emplace_back("ring64", r64);

  SimConfig wc;
  wc.traffic = {Pattern::kWorstCaseABC, 1.0, 4, 1};
  wc.warmup_cycles = 0;
  wc.measure_cycles = 300'000;
  wc.max_cycles = 300'000;
  out.emplace_back("wc16", wc);
  return out;
}

SuiteResult verify_routing_exhaustive(const TopologyConfig& cfg) {
  SuiteResult res{"routing-exhaustive", true, ""};
  const TopologyGraph topo = build_topology(cfg);
  const int limit = 2 * (cfg.levels - 1);
  std::ostringstream why;
  for (int s = 0; s < topo.node_count() && res.passed; ++s) {
    for (int d = 0; d < topo.node_count(); ++d) {
      int ring = topo.local_ring_of(s);
      int transfers = 0;
      for (;;) {
        const RouteDecision rd = topo.route(d, ring);
        if (rd.kind == RouteKind::kStayOnRing) break;
        ring = rd.kind == RouteKind::kTransferUp ? topo.rings()[ring].parent : rd.child_ring;
        if (ring < 0 || ++transfers > limit) break;
      }
      if (ring != topo.local_ring_of(d) || transfers > limit) {
        why << "pair " << s << "->" << d << " did not reach its ring within " << limit << " transfers";
        res.passed = false;
        break;
      }
      if (s != d && topo.cost_to_go(topo.nodes()[s].ring, topo.nodes()[s].pos, d) <= 0) {
        why << "pair " << s << "->" << d << " has no finite route";
        res.passed = false;
        break;
      }
    }
  }
  res.detail = res.passed ? std::to_string(topo.node_count()) + " nodes, all pairs" : why.str();
  return res;
}

SuiteResult verify_conservation(const std::string& name, SimConfig cfg, Cycle cycles) {
  SuiteResult res{"conservation/" + name, false, ""};
  cfg.audit = true;
  cfg.warmup_cycles = cycles / 4;
  cfg.measure_cycles = cycles - cycles / 4;
  cfg.max_cycles = cycles;
  try {
    const MetricsReport a = run(cfg);
    const MetricsReport b = run(cfg);
    if (!(a == b)) {
      res.detail = "reports differ between identical runs";
      return res;
    }
    res.passed = true;
    res.detail = std::to_string(a.packets_delivered) + " packets delivered, audit clean";
  } catch (const InvariantViolation& e) {
    res.detail = e.what();
  }
  return res;
}

SuiteResult verify_drain(int trials, std::uint64_t seed) {
  SuiteResult res{"drain", true, ""};
  SplitMix64 rng(seed);
  Cycle worst = 0;
  for (int t = 0; t < trials; ++t) {
    SimConfig cfg;
    cfg.traffic.pattern = t % 2 ? Pattern::kUniformRandom : Pattern::kTranspose;
    cfg.traffic.rate = 0.05 + 0.6 * rng.uniform();
    cfg.traffic.seed = rng.next();
    cfg.guarantees.enabled = t % 3 != 0;
    cfg.audit = true;
    Simulator sim(cfg);
    try {
      sim.run_for(50 + rng.below(2000));
      const std::size_t flits = sim.flits_in_network();
      const Cycle bound = drain_bound(sim.topology(), flits);
      const DrainResult d = drain_test(sim, bound);
      if (!d.drained) {
        res.passed = false;
        res.detail = "trial " + std::to_string(t) + ": " + std::to_string(sim.flits_in_network()) +
                     " flits left after bound " + std::to_string(bound);
        return res;
      }
      worst = std::max(worst, d.cycles);
    } catch (const InvariantViolation& e) {
      res.passed = false;
      res.detail = "trial " + std::to_string(t) + ": " + e.what();
      return res;
    }
  }
  res.detail = std::to_string(trials) + " states drained, slowest " + std::to_string(worst) + " cycles";
  return res;
}

SwapDeadlockOutcome run_swap_deadlock(bool swap_rule, Cycle cycles) {
  SimConfig cfg;
  cfg.topology.levels = 2;
  cfg.topology.fanout = {2, 4};
  cfg.topology.lanes = {1, 1};
  cfg.topology.bridges_per_child = 1;
  cfg.traffic.rate = 0.0;
  cfg.swap_rule = swap_rule;
  cfg.audit = true;
  Simulator sim(cfg);
  sim.set_injection_enabled(false);

  const TopologyGraph& topo = sim.topology();
  const Bridge& br = topo.bridges()[0];
  const int child = br.child_ring;
  const int parent = br.parent_ring;
  // Nodes 0..3 live under child ring [0]; 4..7 under the other one.
  int up_i = 0, down_i = 0;
  auto up_flit = [&] {
    const int k = up_i++ % 4;
    return sim.make_test_flit(k, 4 + k);
  };
  auto down_flit = [&] {
    const int k = down_i++ % 4;
    return sim.make_test_flit(4 + k, k);
  };

  sim.push_transfer_fifo(0, true, 0, up_flit());
  for (int i = 0; i < cfg.topology.g2l_fifo_depth; ++i) sim.push_transfer_fifo(0, false, 0, down_flit());
  for (Direction d : kDirections) {
    for (int s = 0; s < topo.rings()[child].stages(); ++s) sim.place_flit(child, 0, d, s, up_flit());
    for (int s = 0; s < topo.rings()[parent].stages(); ++s) sim.place_flit(parent, 0, d, s, down_flit());
  }

  SwapDeadlockOutcome out;
  const Cycle circulation = static_cast<Cycle>(std::max(topo.rings()[child].stages(), topo.rings()[parent].stages()));
  for (Cycle c = 0; c < cycles; ++c) {
    sim.step();
    if (!out.progressed && sim.total_transfers() > 0) {
      out.first_cross = c + 1;
      out.progressed = out.first_cross <= circulation;
    }
  }
  out.transfers = sim.total_transfers();
  out.ejected = sim.flits_ejected();
  out.drained = sim.network_empty();
  return out;
}

SuiteResult verify_swap_deadlock() {
  SuiteResult res{"swap-deadlock", false, ""};
  try {
    const auto with = run_swap_deadlock(true, 2000);
    const auto without = run_swap_deadlock(false, 2000);
    std::ostringstream os;
    os << "with swap: first cross at cycle " << with.first_cross << (with.drained ? ", drained" : ", NOT drained")
       << "; without: " << without.transfers << " transfers, " << without.ejected << " ejections";
    res.detail = os.str();
    res.passed = with.progressed && with.drained && without.transfers == 0 && without.ejected == 0;
  } catch (const InvariantViolation& e) {
    res.detail = e.what();
  }
  return res;
}

std::vector<SuiteResult> run_all_suites() {
  std::vector<SuiteResult> out;
  for (const auto& [name, cfg] : bundled_configs()) {
    auto r = verify_routing_exhaustive(cfg.topology);
    r.name += "/" + name;
    out.push_back(std::move(r));
  }
  for (const auto& [name, cfg] : bundled_configs()) out.push_back(verify_conservation(name, cfg, 5000));
  out.push_back(verify_drain(200, 7));
  out.push_back(verify_swap_deadlock());
  return out;
}

}  // namespace hird

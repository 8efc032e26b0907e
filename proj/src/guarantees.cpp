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

#include "hird/guarantees.hpp"

#include <algorithm>
#include <tuple>

namespace hird {

namespace {

bool older(const ThrottleRequest& a, const ThrottleRequest& b) {
  return std::tie(a.since, a.point) < std::tie(b.since, b.point);
}

}  // namespace

std::optional<int> throttle_level(int counter, int threshold, int max_level) {
  if (counter < threshold) return std::nullopt;
  return std::min(counter / threshold - 1, max_level);
}

bool throttle_applies(const TopologyGraph& topo, const std::vector<InjectionPoint>& points,
                      const std::vector<ThrottleRequest>& requests, int point, const ThrottleRequest* own) {
  const InjectionPoint& p = points[point];
  if (!p.is_node()) return false;
  for (const auto& q : requests) {
    if (q.point == point || points[q.point].group == p.group) continue;
    if (own && !older(q, *own)) continue;
    const int top = topo.ancestor(points[q.point].target_ring, q.level);
    if (topo.in_subtree(p.target_ring, top)) return true;
  }
  return false;
}

InjectionMonitor::InjectionMonitor(const TopologyGraph& topo, GuaranteeConfig cfg)
    : topo_(&topo), cfg_(cfg), history_(static_cast<std::size_t>(std::max(0, cfg.throttle_signal_latency)) + 1) {}

int InjectionMonitor::add_point(InjectionPoint p) {
  points_.push_back(p);
  counters_.push_back(0);
  since_.emplace_back();
  return static_cast<int>(points_.size()) - 1;
}

void InjectionMonitor::injection_monitor_tick(int point, bool waiting, bool injected, bool throttled, Cycle now) {
  int& c = counters_[point];
  if (injected || !waiting) {
    c = 0;
  } else if (!throttled) {
    ++c;
  }
  if (c >= cfg_.injection_threshold) {
    if (!since_[point]) {
      since_[point] = now;
      ++activations_;
    }
  } else {
    since_[point].reset();
  }
}

void InjectionMonitor::end_cycle(Cycle) {
  const int max_level = topo_->depth() - 1;
  requests_.clear();
  for (std::size_t p = 0; p < points_.size(); ++p) {
    if (!since_[p]) continue;
    const auto level = throttle_level(counters_[p], cfg_.injection_threshold, max_level);
    requests_.push_back(ThrottleRequest{static_cast<int>(p), *since_[p], level.value_or(0)});
  }
  history_.push_back(requests_);
  history_.pop_front();
}

bool InjectionMonitor::throttled(int point) const {
  const auto& visible = history_.front();
  if (visible.empty()) return false;
  const ThrottleRequest* own = nullptr;
  for (const auto& q : visible)
    if (q.point == point) own = &q;
  return throttle_applies(*topo_, points_, visible, point, own);
}

SlotObserver::Result SlotObserver::observer_tick(int register_id, const Flit* flit, bool wants_transfer_here,
                                                 int next_register_id) {
  if (register_id != observed_) return {};
  if (!identity_) {
    if (flit && wants_transfer_here) {
      identity_ = flit->uid;
      circles_ = 0;
    } else {
      advance(next_register_id);
    }
    return {};
  }
  if (flit && flit->uid == *identity_ && wants_transfer_here) {
    ++circles_;
    if (circles_ >= retry_threshold_) {
      reserved_ = true;
      return {Action::kReserve, *identity_};
    }
    return {};
  }
  // The observed flit left the slot (transferred or ejected).
  Result r;
  if (reserved_) r = {Action::kRelease, *identity_};
  advance(next_register_id);
  return r;
}

void SlotObserver::advance(int next_register_id) {
  observed_ = next_register_id;
  identity_.reset();
  circles_ = 0;
  reserved_ = false;
}

}  // namespace hird

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
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "hird/types.hpp"

namespace hird {

/// Running sum/count/max of a non-negative sample stream.
struct Accumulator {
  std::uint64_t count = 0;
  double sum = 0.0;
  std::uint64_t max = 0;

  void add(std::uint64_t v) {
    ++count;
    sum += static_cast<double>(v);
    if (v > max) max = v;
  }
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
};

/// Raw measurements collected by one simulation.
struct MetricsLedger {
  std::vector<Cycle> latency;                  // created -> delivered, per packet
  std::vector<std::uint64_t> delivered_by_src;  // flits, measurement window
  Accumulator fifo_head_wait;                  // cycles at the head of a transfer FIFO
  Accumulator fifo_queue_wait;                 // cycles from enqueue to injection
  Accumulator deflections;                     // per delivered flit
  std::map<std::uint32_t, std::uint64_t> deflection_histogram;
  std::vector<Cycle> throttle_events;          // cycles at which a throttle request was first asserted
  std::vector<std::uint64_t> backlog_samples;  // source-queued flits, sampled over the window
  std::uint64_t swaps = 0;
  std::uint64_t transfer_accepts = 0;
  std::uint64_t transfer_deflections = 0;
};

/// Summary of one run. Compared field by field for reproducibility checks.
struct MetricsReport {
  Cycle cycles_run = 0;
  Cycle measure_cycles = 0;
  std::uint64_t packets_created = 0;
  std::uint64_t packets_delivered = 0;
  std::uint64_t flits_delivered = 0;  // measurement window
  std::uint64_t flits_dropped = 0;
  std::uint64_t retransmits = 0;
  double avg_latency = 0.0;
  double p95_latency = 0.0;
  Cycle max_latency = 0;
  double throughput = 0.0;               // accepted flits/node/cycle
  std::vector<double> ring_throughput;   // per local ring, flits/node/cycle by source
  double fifo_wait_avg = 0.0;
  Cycle fifo_wait_max = 0;
  double fifo_queue_wait_avg = 0.0;
  double deflect_avg = 0.0;
  std::uint64_t deflect_max = 0;
  std::uint64_t swaps = 0;
  std::uint64_t throttle_activations = 0;
  std::vector<std::uint64_t> backlog_samples;
  bool backlog_growing = false;
  bool incomplete = false;  // measured packets still outstanding at the cycle cap

  bool operator==(const MetricsReport&) const = default;
};

/// 95th percentile by nearest rank; 0 for no samples.
double percentile(std::vector<Cycle> samples, double pct);

/// True when every sample exceeds the one before and the total growth is
/// more than `min_growth`.
bool monotone_growth(const std::vector<std::uint64_t>& samples, std::uint64_t min_growth);

/// Header and row for `hird_sim run`.
std::string run_csv_header(int local_rings);
std::string run_csv_row(const MetricsReport& r);

}  // namespace hird

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

#include "hird/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hird {

double percentile(std::vector<Cycle> samples, double pct) {
  if (samples.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(pct / 100.0 * static_cast<double>(samples.size())));
  const std::size_t idx = std::clamp<std::size_t>(rank, 1, samples.size()) - 1;
  std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(idx), samples.end());
  return static_cast<double>(samples[idx]);
}

bool monotone_growth(const std::vector<std::uint64_t>& samples, std::uint64_t min_growth) {
  if (samples.size() < 2) return false;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i] <= samples[i - 1]) return false;
  return samples.back() - samples.front() > min_growth;
}

namespace {

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string run_csv_header(int local_rings) {
  std::ostringstream os;
  os << "cycles,packets_created,packets_delivered,avg_latency,p95_latency,max_latency,throughput,"
        "deflect_avg,deflect_max,fifo_wait_avg,fifo_wait_max,swaps,throttle_activations,flits_dropped,"
        "retransmits,incomplete";
  for (int r = 0; r < local_rings; ++r) os << ",ring" << r << "_throughput";
  return os.str();
}

std::string run_csv_row(const MetricsReport& r) {
  std::ostringstream os;
  os << r.cycles_run << ',' << r.packets_created << ',' << r.packets_delivered << ',' << fmt(r.avg_latency, 3) << ','
     << fmt(r.p95_latency, 1) << ',' << r.max_latency << ',' << fmt(r.throughput, 4) << ','
     << fmt(r.deflect_avg, 3) << ',' << r.deflect_max << ',' << fmt(r.fifo_wait_avg, 3) << ',' << r.fifo_wait_max
     << ',' << r.swaps << ',' << r.throttle_activations << ',' << r.flits_dropped << ',' << r.retransmits << ','
     << (r.incomplete ? 1 : 0);
  for (double t : r.ring_throughput) os << ',' << fmt(t, 4);
  return os.str();
}

}  // namespace hird

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

#include "hird/sweep.hpp"

#include <cmath>
#include <future>
#include <iomanip>
#include <sstream>

namespace hird {

std::vector<double> rate_grid(double from, double to, double step) {
  if (!(step > 0.0)) throw ConfigError("rate grid: step must be > 0");
  if (to < from) throw ConfigError("rate grid: end must be >= start");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(std::min(1.0, from + static_cast<double>(i) * step));
  return out;
}

std::vector<double> parse_rate_grid(const std::string& spec) {
  std::istringstream is(spec);
  std::string a, b, c;
  if (!std::getline(is, a, ':') || !std::getline(is, b, ':') || !std::getline(is, c) || a.empty() || b.empty() ||
      c.empty())
    throw ConfigError("--rates expects start:end:step, got '" + spec + "'");
  try {
    return rate_grid(std::stod(a), std::stod(b), std::stod(c));
  } catch (const std::invalid_argument&) {
    throw ConfigError("--rates: not a number in '" + spec + "'");
  }
}

bool is_saturated(const MetricsReport& r, double zero_load) {
  return r.avg_latency > 3.0 * zero_load || r.backlog_growing || r.incomplete;
}

SweepResult saturation_sweep(const SimConfig& base, const std::vector<double>& rates, int jobs) {
  SweepResult out;
  out.zero_load_latency = zero_load_latency(build_topology(base.topology), base.traffic);
  const std::size_t batch = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t i = 0; i < rates.size(); i += batch) {
    std::vector<std::future<MetricsReport>> futures;
    const std::size_t end = std::min(rates.size(), i + batch);
    for (std::size_t k = i; k < end; ++k) {
      SimConfig cfg = base;
      cfg.traffic.rate = rates[k];
      futures.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred,
                                   [cfg] { return run(cfg); }));
    }
    for (std::size_t k = i; k < end; ++k) {
      SweepPoint p{rates[k], futures[k - i].get(), false};
      p.saturated = is_saturated(p.report, out.zero_load_latency);
      out.points.push_back(std::move(p));
      if (out.points.back().saturated) {
        out.saturation_rate = rates[k];
        return out;  // remaining futures are joined by their destructors
      }
    }
  }
  return out;
}

std::string sweep_csv_header() {
  return "rate,avg_latency,p95_latency,max_latency,throughput,deflect_avg,deflect_max,fifo_wait_avg,fifo_wait_max,"
         "saturated";
}

std::string sweep_csv_row(const SweepPoint& p) {
  const MetricsReport& r = p.report;
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << p.rate << ',' << r.avg_latency << ',' << r.p95_latency << ','
     << r.max_latency << ',' << r.throughput << ',' << r.deflect_avg << ',' << r.deflect_max << ','
     << r.fifo_wait_avg << ',' << r.fifo_wait_max << ',' << (p.saturated ? 1 : 0);
  return os.str();
}

}  // namespace hird

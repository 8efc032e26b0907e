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

#include <optional>
#include <string>
#include <vector>

#include "hird/engine.hpp"

namespace hird {

struct SweepPoint {
  double rate = 0.0;
  MetricsReport report;
  bool saturated = false;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // ascending rate, up to and including the first saturated point
  double zero_load_latency = 0.0;
  std::optional<double> saturation_rate;
};

/// Ascending grid from `from` to `to` inclusive (small tolerance on the end).
std::vector<double> rate_grid(double from, double to, double step);
/// Parses "a:b:step". Throws ConfigError.
std::vector<double> parse_rate_grid(const std::string& spec);

/// Saturated: average latency above 3x zero-load, a source backlog that kept
/// growing through the window, or a window that never drained.
bool is_saturated(const MetricsReport& r, double zero_load);

/// Runs base with each rate. `jobs` > 1 runs points concurrently in batches;
/// results are the same as a serial sweep. Points after the first saturated
/// one are dropped.
SweepResult saturation_sweep(const SimConfig& base, const std::vector<double>& rates, int jobs = 1);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepPoint& p);

}  // namespace hird

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

#include <string>

#include "hird/engine.hpp"

namespace hird {

/// Parsed experiment file.
///
///   [topology]   levels, fanout, bridges_per_child, lanes, local_hop_latency,
///                global_hop_latency, l2g_fifo_depth, g2l_fifo_depth
///   [traffic]    pattern, rate, packet_length, seed (required)
///   [guarantees] guarantees_enabled, injection_threshold,
///                observer_retry_threshold, throttle_signal_latency
///   [run]        warmup_cycles, measure_cycles, max_cycles, reassembly_slots,
///                retransmit_transport, audit
///   [output]     dir
///
/// Lists are comma separated, booleans are on/off/true/false/1/0, '#' and ';'
/// start comments.
struct ExperimentFile {
  SimConfig sim;
  std::string output_dir = ".";
};

/// Errors carry "<name>:<line>: " so they point at the offending entry.
ExperimentFile parse_experiment(const std::string& text, const std::string& name = "<config>");
ExperimentFile load_experiment(const std::string& path);

}  // namespace hird

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

#include "hird/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hird {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Located {
 public:
  Located(std::string name, int line) : prefix_(std::move(name) + ":" + std::to_string(line) + ": ") {}
  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(prefix_ + what); }

  template <typename T>
  T number(const std::string& key, const std::string& v) const {
    T out{};
    const auto* end = v.data() + v.size();
    const auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end) fail(key + ": expected a number, got '" + v + "'");
    return out;
  }

  std::vector<int> list(const std::string& key, const std::string& v) const {
    std::vector<int> out;
    std::istringstream is(v);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(number<int>(key, trim(item)));
    if (out.empty()) fail(key + ": expected a comma-separated list");
    return out;
  }

  bool boolean(const std::string& key, const std::string& v) const {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    fail(key + ": expected on/off, got '" + v + "'");
  }

 private:
  std::string prefix_;
};

}  // namespace

ExperimentFile parse_experiment(const std::string& text, const std::string& name) {
  ExperimentFile out;
  SimConfig& c = out.sim;
  using Setter = std::function<void(const Located&, const std::string&, const std::string&)>;
  const std::map<std::string, std::map<std::string, Setter>> keys{
      {"topology",
       {{"levels", [&](auto& at, auto& k, auto& v) { c.topology.levels = at.template number<int>(k, v); }},
        {"fanout", [&](auto& at, auto& k, auto& v) { c.topology.fanout = at.list(k, v); }},
        {"bridges_per_child",
         [&](auto& at, auto& k, auto& v) { c.topology.bridges_per_child = at.template number<int>(k, v); }},
        {"lanes", [&](auto& at, auto& k, auto& v) { c.topology.lanes = at.list(k, v); }},
        {"local_hop_latency",
         [&](auto& at, auto& k, auto& v) { c.topology.local_hop_latency = at.template number<int>(k, v); }},
        {"global_hop_latency",
         [&](auto& at, auto& k, auto& v) { c.topology.global_hop_latency = at.template number<int>(k, v); }},
        {"l2g_fifo_depth",
         [&](auto& at, auto& k, auto& v) { c.topology.l2g_fifo_depth = at.template number<int>(k, v); }},
        {"g2l_fifo_depth",
         [&](auto& at, auto& k, auto& v) { c.topology.g2l_fifo_depth = at.template number<int>(k, v); }}}},
      {"traffic",
       {{"pattern",
         [&](auto& at, auto&, auto& v) {
           try {
             c.traffic.pattern = parse_pattern(v);
           } catch (const ConfigError& e) {
             at.fail(e.what());
           }
         }},
        {"rate", [&](auto& at, auto& k, auto& v) { c.traffic.rate = at.template number<double>(k, v); }},
        {"packet_length",
         [&](auto& at, auto& k, auto& v) { c.traffic.packet_length = at.template number<int>(k, v); }},
        {"seed", [&](auto& at, auto& k, auto& v) { c.traffic.seed = at.template number<std::uint64_t>(k, v); }}}},
      {"guarantees",
       {{"guarantees_enabled", [&](auto& at, auto& k, auto& v) { c.guarantees.enabled = at.boolean(k, v); }},
        {"injection_threshold",
         [&](auto& at, auto& k, auto& v) { c.guarantees.injection_threshold = at.template number<int>(k, v); }},
        {"observer_retry_threshold",
         [&](auto& at, auto& k, auto& v) { c.guarantees.observer_retry_threshold = at.template number<int>(k, v); }},
        {"throttle_signal_latency",
         [&](auto& at, auto& k, auto& v) { c.guarantees.throttle_signal_latency = at.template number<int>(k, v); }}}},
      {"run",
       {{"warmup_cycles", [&](auto& at, auto& k, auto& v) { c.warmup_cycles = at.template number<Cycle>(k, v); }},
        {"measure_cycles", [&](auto& at, auto& k, auto& v) { c.measure_cycles = at.template number<Cycle>(k, v); }},
        {"max_cycles", [&](auto& at, auto& k, auto& v) { c.max_cycles = at.template number<Cycle>(k, v); }},
        {"reassembly_slots", [&](auto& at, auto& k, auto& v) { c.reassembly_slots = at.template number<int>(k, v); }},
        {"retransmit_transport",
         [&](auto& at, auto& k, auto& v) {
           if (v == "oob")
             c.retransmit_transport = RetransmitTransport::kOutOfBand;
           else if (v == "in_network")
             c.retransmit_transport = RetransmitTransport::kInNetwork;
           else
             at.fail(k + ": expected oob or in_network, got '" + v + "'");
         }},
        {"audit", [&](auto& at, auto& k, auto& v) { c.audit = at.boolean(k, v); }}}},
      {"output", {{"dir", [&](auto&, auto&, auto& v) { out.output_dir = v; }}}},
  };

  std::istringstream in(text);
  std::string raw, section;
  std::set<std::string> seen;
  bool have_seed = false;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const Located at(name, line);
    std::string s = raw;
    if (const auto hash = s.find_first_of("#;"); hash != std::string::npos) s.erase(hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') at.fail("malformed section header '" + s + "'");
      section = trim(s.substr(1, s.size() - 2));
      if (!keys.contains(section)) at.fail("unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) at.fail("expected key = value, got '" + s + "'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) at.fail("key '" + key + "' outside any section");
    const auto& table = keys.at(section);
    const auto it = table.find(key);
    if (it == table.end()) at.fail("unknown key '" + key + "' in [" + section + "]");
    if (!seen.insert(section + "." + key).second) at.fail("duplicate key '" + key + "' in [" + section + "]");
    if (value.empty()) at.fail(key + ": empty value");
    it->second(at, key, value);
    if (section == "traffic" && key == "seed") have_seed = true;
  }
  if (!have_seed) throw ConfigError(name + ": [traffic] seed is required");
  if (!seen.contains("topology.levels")) {
    c.topology.levels = static_cast<int>(c.topology.fanout.size());
  }
  c.validate();
  return out;
}

ExperimentFile load_experiment(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path + ": cannot open");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_experiment(ss.str(), path);
}

}  // namespace hird

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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "hird/config.hpp"
#include "hird/engine.hpp"
#include "hird/sweep.hpp"
#include "hird/verify.hpp"

namespace {

constexpr const char* kOutputEnv = "HIRD_OUTPUT_DIR";

int report_error(const std::string& kind, const std::string& message) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
  return kind == "verification" ? 3 : 2;
}

// Output directory: the environment wins over the file's [output] dir. No
// file is written when neither is set.
std::optional<std::filesystem::path> output_dir(const hird::ExperimentFile& ex) {
  if (const char* env = std::getenv(kOutputEnv); env && *env) return std::filesystem::path(env);
  if (ex.output_dir != ".") return std::filesystem::path(ex.output_dir);
  return std::nullopt;
}

void emit(const hird::ExperimentFile& ex, const std::string& config_path, const std::string& suffix,
          const std::string& csv) {
  std::cout << csv;
  if (const auto dir = output_dir(ex)) {
    std::filesystem::create_directories(*dir);
    const auto path = *dir / (std::filesystem::path(config_path).stem().string() + suffix + ".csv");
    std::ofstream(path) << csv;
    std::cerr << "wrote " << path.string() << '\n';
  }
}

int cmd_run(const std::string& file) {
  const auto ex = hird::load_experiment(file);
  const auto report = hird::run(ex.sim);
  std::ostringstream os;
  os << hird::run_csv_header(static_cast<int>(report.ring_throughput.size())) << '\n'
     << hird::run_csv_row(report) << '\n';
  emit(ex, file, "_run", os.str());
  return 0;
}

int cmd_sweep(const std::string& file, const std::string& rates, int jobs) {
  const auto ex = hird::load_experiment(file);
  const auto grid = hird::parse_rate_grid(rates);
  const auto res = hird::saturation_sweep(ex.sim, grid, jobs);
  std::ostringstream os;
  os << hird::sweep_csv_header() << '\n';
  for (const auto& p : res.points) os << hird::sweep_csv_row(p) << '\n';
  emit(ex, file, "_sweep", os.str());
  std::cerr << "zero-load latency " << std::fixed << std::setprecision(2) << res.zero_load_latency;
  if (res.saturation_rate)
    std::cerr << ", saturated at rate " << *res.saturation_rate << '\n';
  else
    std::cerr << ", no saturation in grid\n";
  return 0;
}

int cmd_worstcase(const std::string& file, bool guarantees) {
  auto ex = hird::load_experiment(file);
  if (ex.sim.traffic.pattern != hird::Pattern::kWorstCaseABC)
    throw hird::ConfigError(file + ": worstcase needs [traffic] pattern = worst_case_abc");
  ex.sim.guarantees.enabled = guarantees;
  const auto r = hird::run(ex.sim);
  const auto ring = [&](int i) { return i < static_cast<int>(r.ring_throughput.size()) ? r.ring_throughput[i] : 0.0; };
  std::ostringstream os;
  os << std::fixed;
  os << "guarantees,cycles,ringA_throughput,ringB_throughput,ringC_throughput,fifo_wait_avg,fifo_wait_max,"
        "deflect_avg,deflect_max,throttle_activations\n";
  os << (guarantees ? "on" : "off") << ',' << r.cycles_run << ',' << std::setprecision(3) << ring(0) << ','
     << ring(1) << ',' << ring(2) << ',' << std::setprecision(2) << r.fifo_wait_avg << ',' << r.fifo_wait_max << ','
     << r.deflect_avg << ',' << r.deflect_max << ',' << r.throttle_activations << '\n';
  emit(ex, file, guarantees ? "_worstcase_on" : "_worstcase_off", os.str());
  return 0;
}

int cmd_verify() {
  bool ok = true;
  for (const auto& s : hird::run_all_suites()) {
    std::cout << (s.passed ? "PASS " : "FAIL ") << s.name << ": " << s.detail << '\n';
    ok = ok && s.passed;
  }
  if (!ok) return report_error("verification", "one or more verification suites failed");
  return 0;
}

int cmd_topo(const std::string& file, bool dump) {
  const auto ex = hird::load_experiment(file);
  const auto topo = hird::build_topology(ex.sim.topology);
  if (dump)
    std::cout << topo.dump();
  else
    std::cout << "levels=" << topo.depth() << " nodes=" << topo.node_count() << " rings=" << topo.ring_count()
              << " bridges=" << topo.bridges().size() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle-accurate simulator for hierarchical bufferless rings"};
  app.require_subcommand(1);

  std::string file, rates = "0.02:0.5:0.02", guarantees = "on";
  int jobs = 1;
  bool dump = false;

  auto* run = app.add_subcommand("run", "Single simulation, CSV on stdout");
  run->add_option("config", file, "Experiment file")->required();

  auto* sweep = app.add_subcommand("sweep", "Injection-rate sweep up to saturation");
  sweep->add_option("config", file, "Experiment file")->required();
  sweep->add_option("--rates", rates, "start:end:step");
  sweep->add_option("--jobs", jobs, "Concurrent sweep points")->check(CLI::PositiveNumber);

  auto* wc = app.add_subcommand("worstcase", "Worst-case ring A/B/C experiment");
  wc->add_option("config", file, "Experiment file")->required();
  wc->add_option("--guarantees", guarantees, "on|off")->check(CLI::IsMember({"on", "off"}));

  auto* verify = app.add_subcommand("verify", "Drain, swap-deadlock, conservation and routing suites");

  auto* topo = app.add_subcommand("topo", "Print the built topology");
  topo->add_option("config", file, "Experiment file")->required();
  topo->add_flag("--dump", dump, "List every ring position and bridge");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(file);
    if (*sweep) return cmd_sweep(file, rates, jobs);
    if (*wc) return cmd_worstcase(file, guarantees == "on");
    if (*verify) return cmd_verify();
    if (*topo) return cmd_topo(file, dump);
  } catch (const hird::ConfigError& e) {
    return report_error("config", e.what());
  } catch (const hird::InvariantViolation& e) {
    return report_error("invariant", e.what());
  } catch (const std::exception& e) {
    return report_error("runtime", e.what());
  }
  return 0;
}

// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pontdm/config_file.hpp"
#include "pontdm/format.hpp"
#include "pontdm/solver.hpp"
#include "pontdm/table_file.hpp"
#include "pontdm/tdmsim.hpp"

namespace {

using namespace pontdm;

// exit codes: 0 ok, 1 usage/parse/config, 2 validation failure, 3 budget
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kBudget = 3;

int cmd_topo(const std::string& config_path) {
  const RunConfig config = load_config(config_path);
  const Topology topology = build_topology(config.topology);
  const int n = topology.fabric().attachment_count();

  std::cout << "N=" << n << " W="
            << required_wavelengths(n, config.demands.include_intra_cell)
            << " T=" << topology.time_slots() << "\n";
  for (const Attachment& attachment : topology.attachments()) {
    std::cout << "attachment " << attachment.index << ":";
    for (const std::string& name : attachment.hosted) {
      std::cout << " " << name;
    }
    std::cout << "\n";
  }

  const ReachabilityReport report = all_to_all_check(topology);
  for (const std::string& failure : report.failures) {
    std::cout << failure << "\n";
  }
  std::cout << "all-to-all: " << (report.ok ? "OK" : "FAILED") << "\n";
  return report.ok ? kOk : kInvalid;
}

SolveOutcome run_solver(const RunConfig& config, const Instance& instance) {
  if (config.solver.kind == SolverKind::Greedy) {
    return solve_greedy(instance, config.solver.seed);
  }
  return solve_exact(instance, config.solver.node_budget);
}

int cmd_solve(const std::string& config_path, const std::string& out_path) {
  const RunConfig config = load_config(config_path);
  const Topology topology = build_topology(config.topology);
  const DemandSet demands = build_demands(topology, config.demands);
  const SolveOutcome outcome =
      run_solver(config, Instance{topology, demands});

  save_table(out_path, outcome.table);
  std::cout << "objective=" << outcome.objective << " status="
            << to_string(outcome.status) << " nodes="
            << outcome.stats.nodes_explored << "\n";
  return outcome.status == SolveStatus::BoundReached ? kBudget : kOk;
}

int cmd_minslots(const std::string& config_path,
                 const std::string& out_path) {
  const RunConfig config = load_config(config_path);
  const Topology topology = build_topology(config.topology);
  const DemandSet demands = build_demands(topology, config.demands);
  const MinSlotsResult result =
      min_slots(topology, demands, config.solver.node_budget);

  save_table(out_path, result.outcome.table);
  std::cout << "min_slots=" << result.time_slots << " objective="
            << result.outcome.objective << " status="
            << to_string(result.outcome.status) << "\n";
  return result.outcome.status == SolveStatus::BoundReached ? kBudget : kOk;
}

int cmd_validate(const std::string& config_path,
                 const std::string& table_path) {
  const RunConfig config = load_config(config_path);
  const Topology topology = build_topology(config.topology);
  const DemandSet demands = build_demands(topology, config.demands);
  const AssignmentTable table = load_table(table_path);

  const ValidationReport report = check_table(topology, demands, table);
  for (const Violation& violation : report.violations) {
    std::cout << violation.code << " " << violation.message << "\n";
  }
  std::cout << "verdict=" << (report.valid ? "valid" : "invalid")
            << " objective=" << report.objective << "\n";
  return report.valid ? kOk : kInvalid;
}

int cmd_simulate(const std::string& config_path,
                 const std::string& table_path,
                 const std::string& traffic_spec, int frames,
                 std::uint32_t seed, const std::string& metrics_path) {
  const RunConfig config = load_config(config_path);
  const Topology topology = build_topology(config.topology);
  const AssignmentTable table = load_table(table_path);
  const TrafficModel traffic = TrafficModel::parse(traffic_spec, seed);

  const SimResult result = simulate(topology, table, traffic, frames);
  const Metrics& metrics = result.metrics;

  std::ofstream out(metrics_path);
  if (!out) {
    throw ParseError(metrics_path + ": cannot open metrics file for writing");
  }
  out << "scope,name,value\n";
  for (const MetricsRow& row : metrics_rows(metrics)) {
    out << row.scope << "," << row.name << "," << row.value << "\n";
  }

  std::cout << "frames=" << metrics.frames << " offered="
            << metrics.total_offered << " delivered="
            << metrics.total_delivered << " queued="
            << metrics.total_queued_end << " mean_delay="
            << format_ratio(metrics.mean_delay()) << " max_delay="
            << metrics.delay_max << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "WDM/TDM wavelength and time-slot assignment toolkit for "
      "cascaded-AWGR PON data-center fabrics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string table_path;
  std::string out_path;
  std::string traffic_spec;
  std::string metrics_path;
  int frames = 100;
  std::uint32_t seed = 0;

  CLI::App* topo =
      app.add_subcommand("topo", "Summarize a topology and check "
                                 "all-to-all multipath reachability");
  topo->add_option("config", config_path, "config file")->required();

  CLI::App* solve =
      app.add_subcommand("solve", "Compute an assignment table");
  solve->add_option("config", config_path, "config file")->required();
  solve->add_option("-o,--output", out_path, "table output path")
      ->required();

  CLI::App* minslots = app.add_subcommand(
      "minslots", "Find the smallest slot count serving every demand twice");
  minslots->add_option("config", config_path, "config file")->required();
  minslots->add_option("-o,--output", out_path, "witness table output path")
      ->required();

  CLI::App* validate =
      app.add_subcommand("validate", "Check an assignment table");
  validate->add_option("config", config_path, "config file")->required();
  validate->add_option("table", table_path, "table file")->required();

  CLI::App* simulate_cmd = app.add_subcommand(
      "simulate", "Replay a table over TDM frames under synthetic traffic");
  simulate_cmd->add_option("config", config_path, "config file")->required();
  simulate_cmd->add_option("table", table_path, "table file")->required();
  simulate_cmd
      ->add_option("--traffic", traffic_spec,
                   "uniform:<k> | bernoulli:<p> | hotspot:<entity>:<mult>")
      ->required();
  simulate_cmd->add_option("--frames", frames, "frames to run (default 100)");
  simulate_cmd->add_option("--seed", seed, "traffic seed (default 0)");
  simulate_cmd->add_option("-o,--output", metrics_path, "metrics output path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (topo->parsed()) {
      return cmd_topo(config_path);
    }
    if (solve->parsed()) {
      return cmd_solve(config_path, out_path);
    }
    if (minslots->parsed()) {
      return cmd_minslots(config_path, out_path);
    }
    if (validate->parsed()) {
      return cmd_validate(config_path, table_path);
    }
    if (simulate_cmd->parsed()) {
      return cmd_simulate(config_path, table_path, traffic_spec, frames,
                          seed, metrics_path);
    }
  } catch (const pontdm::InvalidTableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const pontdm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

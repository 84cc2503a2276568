// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "pontdm/rwta.hpp"
#include "pontdm/topology.hpp"

namespace pontdm {

enum class SolverKind { Exact, Greedy };

struct SolverConfig {
  SolverKind kind = SolverKind::Exact;
  std::uint32_t seed = 0;
  long long node_budget = 0;  // 0 = unlimited

  bool operator==(const SolverConfig&) const = default;
};

// Everything an experiment run needs, as read from one config file.
struct RunConfig {
  TopologyConfig topology;
  DemandFlags demands;
  SolverConfig solver;

  bool operator==(const RunConfig&) const = default;
};

// Line-based `key = value` format with [topology], [resources], [demands]
// and [solver] sections and `;` comments. Keys are case-sensitive; unknown
// or repeated keys are rejected; cells, racks_per_cell and olts are
// required, everything else defaults (time_slots=10, planes=2,
// include_intra_cell=true, include_olt_pairs=false, kind=exact, seed=0,
// node_budget=0). ParseError messages name the file, line and key.
RunConfig parse_config(std::istream& in, const std::string& filename);

RunConfig load_config(const std::string& path);

}  // namespace pontdm

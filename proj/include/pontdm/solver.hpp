// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "pontdm/rwta.hpp"

namespace pontdm {

// One solvable problem: a fabric plus the demand pairs to serve. The
// resource grid is implied: W = 2N wavelengths by T = topology.time_slots().
struct Instance {
  Topology topology;
  DemandSet demands;
};

enum class SolveStatus { ProvenOptimal, Heuristic, BoundReached };

std::string to_string(SolveStatus status);

struct SolveStats {
  long long nodes_explored = 0;
  double elapsed_seconds = 0.0;
};

struct SolveOutcome {
  AssignmentTable table;
  int objective = 0;
  SolveStatus status = SolveStatus::Heuristic;
  SolveStats stats;
};

// Depth-first branch-and-bound over per-demand, per-plane slot choices.
// Variable order is fixed (demands in DemandSet order, planes ascending,
// slots ascending, skip last), so equal inputs yield identical tables; the
// kept optimum is the first one in that order. The bound combines the
// remaining-unit count with per-fiber free-slot capacity. node_budget 0
// means unlimited; when the budget is hit the best table found so far is
// returned with status BoundReached.
SolveOutcome solve_exact(const Instance& instance, long long node_budget = 0);

// Seed-shuffled demand order; grants each plane the lowest free slot on
// its fixed wavelength. Always validates; deterministic per (instance,
// seed); never exceeds the exact optimum.
SolveOutcome solve_greedy(const Instance& instance, std::uint32_t seed = 0);

struct MinSlotsResult {
  int time_slots = 0;
  SolveOutcome outcome;
};

// Smallest T at which solve_exact serves every demand on both planes
// (objective = 2 * |demands|), found by sweeping T = 1, 2, ... The
// topology's own time_slots value is ignored. A budget-exhausted sweep
// step stops the sweep and surfaces its BoundReached outcome.
MinSlotsResult min_slots(const Topology& topology, const DemandSet& demands,
                         long long node_budget = 0);

}  // namespace pontdm

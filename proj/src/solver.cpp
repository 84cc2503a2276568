// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#include "pontdm/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <random>
#include <vector>

namespace pontdm {

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::ProvenOptimal:
      return "proven-optimal";
    case SolveStatus::Heuristic:
      return "heuristic";
    case SolveStatus::BoundReached:
      return "bound-reached";
  }
  return "unknown";
}

namespace {

// Slot-occupancy bitmaps, one row of ceil(T/64) words per fiber.
class OccupancyGrid {
 public:
  OccupancyGrid(int fibers, int slots)
      : slots_(slots),
        words_((slots + 63) / 64),
        bits_(static_cast<std::size_t>(fibers) * words_, 0) {}

  void set(int fiber, int slot) { word(fiber, slot) |= bit(slot); }
  void reset(int fiber, int slot) { word(fiber, slot) &= ~bit(slot); }

  bool both_free(int fa, int fb, int slot) const {
    const std::uint64_t mask = bit(slot);
    return (word(fa, slot) & mask) == 0 && (word(fb, slot) & mask) == 0;
  }

  // Lowest slot free on both fibers, or -1.
  int first_common_free(int fa, int fb) const {
    for (int w = 0; w < words_; ++w) {
      const std::uint64_t free =
          ~(bits_[row(fa) + w] | bits_[row(fb) + w]) & valid_mask(w);
      if (free != 0) {
        return w * 64 + std::countr_zero(free);
      }
    }
    return -1;
  }

  bool any_common_free(int fa, int fb) const {
    return first_common_free(fa, fb) >= 0;
  }

  int free_count(int fiber) const {
    int used = 0;
    for (int w = 0; w < words_; ++w) {
      used += std::popcount(bits_[row(fiber) + w]);
    }
    return slots_ - used;
  }

 private:
  std::size_t row(int fiber) const {
    return static_cast<std::size_t>(fiber) * words_;
  }
  std::uint64_t& word(int fiber, int slot) {
    return bits_[row(fiber) + slot / 64];
  }
  std::uint64_t word(int fiber, int slot) const {
    return bits_[row(fiber) + slot / 64];
  }
  static std::uint64_t bit(int slot) {
    return std::uint64_t{1} << (slot % 64);
  }
  std::uint64_t valid_mask(int w) const {
    const int bits_in_word = std::min(64, slots_ - w * 64);
    return bits_in_word == 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << bits_in_word) - 1;
  }

  int slots_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

// One (demand, plane) grant decision. The wavelength is fixed by the pair
// and plane, so the only freedom is the slot (or skipping the grant).
struct Unit {
  int demand = 0;
  int wavelength = 0;
  int tx_fiber = 0;
  int rx_fiber = 0;
};

struct Workspace {
  Topology topology;
  std::vector<Unit> units;  // demand-major, planes ascending
  int fiber_count = 0;
  int wavelengths = 0;
};

Workspace prepare(const Instance& instance) {
  const Topology& topo = instance.topology;
  const FabricModel& fabric = topo.fabric();
  const int n = fabric.attachment_count();
  const int wavelengths = fabric.wavelength_count();

  Workspace ws;
  ws.topology = topo;
  ws.fiber_count = 2 * n * wavelengths;  // tx rows first, then rx rows
  ws.wavelengths = wavelengths;

  for (std::size_t d = 0; d < instance.demands.size(); ++d) {
    const Demand& demand = instance.demands.pairs()[d];
    if (!topo.has_entity(demand.src) || !topo.has_entity(demand.dst)) {
      throw ConfigError("instance demands reference unknown entity '" +
                        (topo.has_entity(demand.src) ? demand.dst
                                                     : demand.src) +
                        "'");
    }
    const int src_attachment = topo.attachment_of(demand.src);
    const int dst_attachment = topo.attachment_of(demand.dst);
    // feasible wavelengths come back ascending, i.e. planes ascending
    for (int w : feasible_wavelengths(topo, demand.src, demand.dst)) {
      Unit unit;
      unit.demand = static_cast<int>(d);
      unit.wavelength = w;
      unit.tx_fiber = src_attachment * wavelengths + (w - 1);
      unit.rx_fiber = n * wavelengths + dst_attachment * wavelengths + (w - 1);
      ws.units.push_back(unit);
    }
  }
  return ws;
}

AssignmentTable table_from_choices(const Workspace& ws,
                                   const DemandSet& demands,
                                   const std::vector<int>& slot_of_unit) {
  AssignmentTable table;
  table.fingerprint = ws.topology.fingerprint();
  for (std::size_t u = 0; u < ws.units.size(); ++u) {
    if (slot_of_unit[u] < 0) {
      continue;
    }
    const Unit& unit = ws.units[u];
    const Demand& demand =
        demands.pairs()[static_cast<std::size_t>(unit.demand)];
    table.assignments.push_back(Assignment{demand.src, demand.dst,
                                           unit.wavelength,
                                           slot_of_unit[u] + 1});
  }
  std::sort(table.assignments.begin(), table.assignments.end());
  return table;
}

class ExactSearch {
 public:
  ExactSearch(const Workspace& ws, int slots, long long node_budget)
      : units_(ws.units),
        slots_(slots),
        wavelengths_(ws.wavelengths),
        budget_(node_budget),
        grid_(ws.fiber_count, slots),
        chosen_(ws.units.size(), -1),
        best_chosen_(ws.units.size(), -1),
        fiber_mark_(static_cast<std::size_t>(ws.fiber_count), 0),
        fiber_load_(static_cast<std::size_t>(ws.fiber_count), 0),
        wl_mark_(static_cast<std::size_t>(ws.wavelengths) + 1, 0),
        wl_tx_cap_(static_cast<std::size_t>(ws.wavelengths) + 1, 0),
        wl_rx_cap_(static_cast<std::size_t>(ws.wavelengths) + 1, 0) {}

  void run() { dfs(0, 0); }

  bool exhausted() const { return exhausted_; }
  long long nodes() const { return nodes_; }
  int best_objective() const { return std::max(0, best_objective_); }
  const std::vector<int>& best_choices() const { return best_chosen_; }

 private:
  // Upper bound on the objective reachable below this node. An undecided
  // unit counts only if its two fibers still share a free slot; per-fiber
  // demand is capped by the fiber's free slots; and since wavelengths are
  // independent resources the per-wavelength minima of the tx/rx caps add
  // up.
  int upper_bound(std::size_t next_unit, int granted) {
    ++epoch_;
    touched_tx_.clear();
    touched_rx_.clear();
    touched_wl_.clear();
    for (std::size_t u = next_unit; u < units_.size(); ++u) {
      const Unit& unit = units_[u];
      if (!grid_.any_common_free(unit.tx_fiber, unit.rx_fiber)) {
        continue;
      }
      bump(unit.tx_fiber, touched_tx_);
      bump(unit.rx_fiber, touched_rx_);
    }
    for (int fiber : touched_tx_) {
      add_wavelength_cap(fiber, wl_tx_cap_);
    }
    for (int fiber : touched_rx_) {
      add_wavelength_cap(fiber, wl_rx_cap_);
    }
    int bound = granted;
    for (int wl : touched_wl_) {
      bound += std::min(wl_tx_cap_[static_cast<std::size_t>(wl)],
                        wl_rx_cap_[static_cast<std::size_t>(wl)]);
    }
    return bound;
  }

  void bump(int fiber, std::vector<int>& touched) {
    const auto f = static_cast<std::size_t>(fiber);
    if (fiber_mark_[f] != epoch_) {
      fiber_mark_[f] = epoch_;
      fiber_load_[f] = 0;
      touched.push_back(fiber);
    }
    ++fiber_load_[f];
  }

  void add_wavelength_cap(int fiber, std::vector<int>& cap) {
    // fiber rows are laid out per wavelength within each attachment
    const auto wl = static_cast<std::size_t>(fiber % wavelengths_ + 1);
    if (wl_mark_[wl] != epoch_) {
      wl_mark_[wl] = epoch_;
      wl_tx_cap_[wl] = 0;
      wl_rx_cap_[wl] = 0;
      touched_wl_.push_back(static_cast<int>(wl));
    }
    cap[wl] += std::min(fiber_load_[static_cast<std::size_t>(fiber)],
                        grid_.free_count(fiber));
  }

  void dfs(std::size_t index, int granted) {
    if (exhausted_) {
      return;
    }
    if (budget_ > 0 && nodes_ >= budget_) {
      exhausted_ = true;
      return;
    }
    ++nodes_;

    if (upper_bound(index, granted) <= best_objective_) {
      return;
    }
    if (index == units_.size()) {
      best_objective_ = granted;
      best_chosen_ = chosen_;
      return;
    }

    const Unit& unit = units_[index];
    for (int slot = 0; slot < slots_ && !exhausted_; ++slot) {
      if (!grid_.both_free(unit.tx_fiber, unit.rx_fiber, slot)) {
        continue;
      }
      grid_.set(unit.tx_fiber, slot);
      grid_.set(unit.rx_fiber, slot);
      chosen_[index] = slot;
      dfs(index + 1, granted + 1);
      chosen_[index] = -1;
      grid_.reset(unit.tx_fiber, slot);
      grid_.reset(unit.rx_fiber, slot);
    }
    dfs(index + 1, granted);  // skip branch last
  }

  const std::vector<Unit>& units_;
  int slots_;
  int wavelengths_;
  long long budget_;
  OccupancyGrid grid_;
  std::vector<int> chosen_;
  std::vector<int> best_chosen_;
  int best_objective_ = -1;  // -1 until the first complete leaf
  long long nodes_ = 0;
  bool exhausted_ = false;

  std::vector<long long> fiber_mark_;
  std::vector<int> fiber_load_;
  std::vector<long long> wl_mark_;
  std::vector<int> wl_tx_cap_;
  std::vector<int> wl_rx_cap_;
  std::vector<int> touched_tx_;
  std::vector<int> touched_rx_;
  std::vector<int> touched_wl_;
  long long epoch_ = 0;
};

}  // namespace

SolveOutcome solve_exact(const Instance& instance, long long node_budget) {
  const auto start = std::chrono::steady_clock::now();
  const Workspace ws = prepare(instance);

  ExactSearch search(ws, instance.topology.time_slots(), node_budget);
  search.run();

  SolveOutcome outcome;
  outcome.table = table_from_choices(ws, instance.demands,
                                     search.best_choices());
  outcome.objective = search.best_objective();
  outcome.status = search.exhausted() ? SolveStatus::BoundReached
                                      : SolveStatus::ProvenOptimal;
  outcome.stats.nodes_explored = search.nodes();
  outcome.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return outcome;
}

SolveOutcome solve_greedy(const Instance& instance, std::uint32_t seed) {
  const auto start = std::chrono::steady_clock::now();
  const Workspace ws = prepare(instance);
  const int slots = instance.topology.time_slots();

  // Hand-rolled Fisher-Yates on top of the engine's standard-defined output
  // stream keeps the permutation identical across standard libraries.
  std::vector<int> order(instance.demands.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 gen(seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t j = gen() % i;
    std::swap(order[i - 1], order[j]);
  }

  std::vector<std::vector<std::size_t>> units_of_demand(
      instance.demands.size());
  for (std::size_t u = 0; u < ws.units.size(); ++u) {
    units_of_demand[static_cast<std::size_t>(ws.units[u].demand)].push_back(u);
  }

  OccupancyGrid grid(ws.fiber_count, slots);
  std::vector<int> slot_of_unit(ws.units.size(), -1);
  for (int demand : order) {
    for (std::size_t u : units_of_demand[static_cast<std::size_t>(demand)]) {
      const Unit& unit = ws.units[u];
      const int slot = grid.first_common_free(unit.tx_fiber, unit.rx_fiber);
      if (slot < 0) {
        continue;
      }
      grid.set(unit.tx_fiber, slot);
      grid.set(unit.rx_fiber, slot);
      slot_of_unit[u] = slot;
    }
  }

  SolveOutcome outcome;
  outcome.table = table_from_choices(ws, instance.demands, slot_of_unit);
  outcome.objective = objective(outcome.table);
  outcome.status = SolveStatus::Heuristic;
  outcome.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return outcome;
}

MinSlotsResult min_slots(const Topology& topology, const DemandSet& demands,
                         long long node_budget) {
  const int target = 2 * static_cast<int>(demands.size());
  // T = |demands| always suffices (each demand can own a private slot), so
  // the sweep terminates.
  for (int slots = 1;; ++slots) {
    TopologyConfig config = topology.config();
    config.time_slots = slots;
    Instance instance{build_topology(config), demands};
    SolveOutcome outcome = solve_exact(instance, node_budget);
    if (outcome.status == SolveStatus::BoundReached ||
        outcome.objective == target) {
      return MinSlotsResult{slots, std::move(outcome)};
    }
  }
}

}  // namespace pontdm

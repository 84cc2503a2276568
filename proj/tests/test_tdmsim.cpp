// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "pontdm/solver.hpp"
#include "pontdm/tdmsim.hpp"

using namespace pontdm;

namespace {

Topology small_topology(int slots = 10) {
  return build_topology(TopologyConfig{2, 2, 2, slots, 2});
}

AssignmentTable full_small_table(const Topology& topo) {
  const DemandSet demands = build_demands(topo, DemandFlags{true, false});
  const SolveOutcome outcome = solve_exact(Instance{topo, demands});
  REQUIRE(outcome.objective == 56);
  return outcome.table;
}

std::string rows_text(const Metrics& metrics) {
  std::ostringstream out;
  for (const MetricsRow& row : metrics_rows(metrics)) {
    out << row.scope << "," << row.name << "," << row.value << "\n";
  }
  return out.str();
}

}  // namespace

TEST_CASE("traffic spec parsing") {
  CHECK(TrafficModel::parse("uniform:3").kind == TrafficKind::Uniform);
  CHECK(TrafficModel::parse("uniform:3").packets_per_frame == 3);
  CHECK(TrafficModel::parse("bernoulli:0.25").arrival_probability ==
        doctest::Approx(0.25));
  const TrafficModel hotspot = TrafficModel::parse("hotspot:olt1:4");
  CHECK(hotspot.hotspot_entity == "olt1");
  CHECK(hotspot.hotspot_multiplier == 4);

  CHECK_THROWS_AS(TrafficModel::parse("bernoulli:2"), ParseError);
  CHECK_THROWS_AS(TrafficModel::parse("bernoulli:-0.5"), ParseError);
  CHECK_THROWS_AS(TrafficModel::parse("uniform:-1"), ParseError);
  CHECK_THROWS_AS(TrafficModel::parse("uniform:x"), ParseError);
  CHECK_THROWS_AS(TrafficModel::parse("hotspot:olt1"), ParseError);
  CHECK_THROWS_AS(TrafficModel::parse("hotspot:olt1:0"), ParseError);
  CHECK_THROWS_AS(TrafficModel::parse("poisson:1"), ParseError);
}

TEST_CASE("uniform single packet per frame is always served in frame") {
  const Topology topo = small_topology();
  const AssignmentTable table = full_small_table(topo);

  const SimResult result =
      simulate(topo, table, TrafficModel::uniform(1), 100);
  const Metrics& metrics = result.metrics;

  CHECK(metrics.total_offered == 2800);  // 28 pairs x 100 frames
  CHECK(metrics.total_delivered == 2800);
  CHECK(metrics.total_queued_end == 0);
  CHECK(metrics.delay_max <= 9);  // T - 1

  for (const PairMetrics& pm : metrics.pairs) {
    CHECK(pm.offered == 100);
    CHECK(pm.delivered == 100);
    CHECK(pm.queued_end == 0);
  }

  SUBCASE("cell-1 uplink carries ten transmissions per frame") {
    const FiberMetrics& up0 = metrics.fibers[0];
    CHECK(up0.attachment == 0);
    CHECK(up0.direction == FiberDirection::Up);
    CHECK(up0.used_cells == 1000);
    CHECK(up0.utilization == doctest::Approx(0.125));  // 10 / (8 * 10)
  }
}

TEST_CASE("zero traffic yields zero metrics") {
  const Topology topo = small_topology();
  const AssignmentTable table = full_small_table(topo);
  const SimResult result =
      simulate(topo, table, TrafficModel::uniform(0), 10);
  CHECK(result.metrics.total_offered == 0);
  CHECK(result.metrics.total_delivered == 0);
  for (const FiberMetrics& fiber : result.metrics.fibers) {
    CHECK(fiber.used_cells == 0);
    CHECK(fiber.utilization == 0.0);
  }
  for (const MetricsRow& row : utilization_summary(result.metrics)) {
    CHECK(row.value == "0");
  }
}

TEST_CASE("overload is capped by the two grants per pair per frame") {
  const Topology topo = small_topology();
  const AssignmentTable table = full_small_table(topo);
  const int frames = 100;
  const SimResult result =
      simulate(topo, table, TrafficModel::uniform(3), frames);

  for (const PairMetrics& pm : result.metrics.pairs) {
    CHECK(pm.offered == 3 * frames);
    CHECK(pm.delivered == 2 * frames);  // service capacity bound
    CHECK(pm.offered == pm.delivered + pm.queued_end);
  }
}

TEST_CASE("bernoulli arrivals conserve packets") {
  const Topology topo = small_topology();
  const AssignmentTable table = full_small_table(topo);

  for (double p : {0.0, 0.3, 1.0}) {
    const SimResult result =
        simulate(topo, table, TrafficModel::bernoulli(p, 11), 50);
    long long offered = 0;
    for (const PairMetrics& pm : result.metrics.pairs) {
      CHECK(pm.offered == pm.delivered + pm.queued_end);
      CHECK(pm.delivered <= 2 * 50);
      offered += pm.offered;
    }
    CHECK(result.metrics.total_offered == offered);
    if (p == 0.0) {
      CHECK(offered == 0);
    }
    if (p == 1.0) {
      CHECK(offered == 28LL * 10 * 50);  // every pair, every slot
    }
  }
}

TEST_CASE("hotspot multiplies arrivals at the target destination") {
  const Topology topo = small_topology();
  const AssignmentTable table = full_small_table(topo);
  const SimResult result =
      simulate(topo, table, TrafficModel::hotspot("olt1", 3), 10);

  for (const PairMetrics& pm : result.metrics.pairs) {
    CHECK(pm.offered == (pm.dst == "olt1" ? 30 : 10));
  }
}

TEST_CASE("single-pair table touches only its own fibers") {
  const Topology topo = small_topology();
  AssignmentTable table;
  table.assignments = {{"cell1.rack1", "olt1", 3, 5},
                       {"cell1.rack1", "olt1", 7, 2}};
  const SimResult result =
      simulate(topo, table, TrafficModel::uniform(1), 20);

  for (const FiberMetrics& fiber : result.metrics.fibers) {
    const bool src_up =
        fiber.attachment == 0 && fiber.direction == FiberDirection::Up;
    const bool dst_down =
        fiber.attachment == 2 && fiber.direction == FiberDirection::Down;
    if (src_up || dst_down) {
      CHECK(fiber.used_cells > 0);
    } else {
      CHECK(fiber.used_cells == 0);
    }
  }
}

TEST_CASE("simulate rejects bad inputs") {
  const Topology topo = small_topology();
  const AssignmentTable table = full_small_table(topo);

  CHECK_THROWS_AS(simulate(topo, table, TrafficModel::uniform(1), 0),
                  ConfigError);
  CHECK_THROWS_AS(
      simulate(topo, table, TrafficModel::hotspot("ghost", 2), 1),
      UnknownEntityError);

  AssignmentTable bad;
  bad.assignments = {{"cell1.rack1", "olt1", 4, 1}};  // wrong route
  CHECK_THROWS_AS(simulate(topo, bad, TrafficModel::uniform(1), 1),
                  InvalidTableError);

  AssignmentTable colliding;
  colliding.assignments = {{"cell1.rack1", "olt1", 3, 1},
                           {"cell1.rack2", "olt1", 3, 1}};
  CHECK_THROWS_AS(simulate(topo, colliding, TrafficModel::uniform(1), 1),
                  InvalidTableError);
}

TEST_CASE("simulation is deterministic per seed") {
  const Topology topo = small_topology();
  const AssignmentTable table = full_small_table(topo);
  const TrafficModel traffic = TrafficModel::bernoulli(0.4, 123);

  const SimResult a = simulate(topo, table, traffic, 30, true);
  const SimResult b = simulate(topo, table, traffic, 30, true);
  CHECK(rows_text(a.metrics) == rows_text(b.metrics));
  CHECK(a.trace.size() == b.trace.size());
}

TEST_CASE("every transmission matches a table grant") {
  const Topology topo = small_topology();
  const AssignmentTable table = full_small_table(topo);
  const SimResult result =
      simulate(topo, table, TrafficModel::bernoulli(0.7, 5), 20, true);

  for (const Transmission& tx : result.trace) {
    const PairMetrics& pm =
        result.metrics.pairs[static_cast<std::size_t>(tx.pair_index)];
    const bool granted = std::any_of(
        table.assignments.begin(), table.assignments.end(),
        [&](const Assignment& a) {
          return a.src == pm.src && a.dst == pm.dst &&
                 a.wavelength == tx.wavelength && a.timeslot == tx.timeslot;
        });
    CHECK(granted);
  }
}

TEST_CASE("collision audit clears traces from validated tables") {
  const Topology topo = small_topology(2);
  const DemandSet demands = build_demands(topo, DemandFlags{true, false});
  const SolveOutcome greedy = solve_greedy(Instance{topo, demands}, 0);

  const SimResult result =
      simulate(topo, greedy.table, TrafficModel::uniform(2), 25, true);
  const AuditVerdict verdict = collision_audit(topo.fabric(), result.trace);
  CHECK(verdict.clean);
  CHECK(verdict.breaches.empty());
}

TEST_CASE("collision audit flags a doubled uplink") {
  const FabricModel fabric(4);
  // two same-wavelength transmissions from one attachment in one slot
  const std::vector<Transmission> trace = {
      {0, 1, 3, 0, 0},
      {0, 1, 3, 0, 1},
  };
  const AuditVerdict verdict = collision_audit(fabric, trace);
  CHECK_FALSE(verdict.clean);
  // every shared segment of the identical paths is reported
  CHECK(verdict.breaches.size() == 7);
  CHECK(verdict.breaches.front().transmissions == std::vector<int>{0, 1});

  SUBCASE("distinct sources on one wavelength never share segments") {
    const std::vector<Transmission> clean_trace = {
        {0, 1, 3, 0, 0},
        {0, 1, 3, 1, 1},
    };
    CHECK(collision_audit(fabric, clean_trace).clean);
  }
}

TEST_CASE("metrics rows carry global, fiber and pair scopes") {
  const Topology topo = small_topology();
  const AssignmentTable table = full_small_table(topo);
  const SimResult result =
      simulate(topo, table, TrafficModel::uniform(1), 100);
  const auto rows = metrics_rows(result.metrics);

  REQUIRE(!rows.empty());
  CHECK(rows[0].scope == "global");
  CHECK(rows[0].name == "frames");
  CHECK(rows[0].value == "100");

  int fiber_rows = 0;
  bool saw_aggregate = false;
  for (const MetricsRow& row : rows) {
    if (row.scope == "fiber") {
      ++fiber_rows;
      saw_aggregate |= row.name == "aggregate";
    }
  }
  CHECK(fiber_rows == 9);  // 2N fibers + aggregate
  CHECK(saw_aggregate);

  const auto delivered =
      std::find_if(rows.begin(), rows.end(), [](const MetricsRow& row) {
        return row.scope == "global" && row.name == "delivered";
      });
  REQUIRE(delivered != rows.end());
  CHECK(delivered->value == "2800");
}

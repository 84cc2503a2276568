// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "pontdm/topology.hpp"

using namespace pontdm;

namespace {

// 2 cells x 2 racks + 2 OLTs: N=4, W=8
TopologyConfig small_config() {
  return TopologyConfig{2, 2, 2, 10, 2};
}

}  // namespace

TEST_CASE("build_topology produces the expected small instance") {
  const Topology topo = build_topology(small_config());
  CHECK(topo.entities().size() == 6);
  CHECK(topo.fabric().attachment_count() == 4);
  CHECK(topo.fabric().wavelength_count() == 8);
  CHECK(topo.time_slots() == 10);

  CHECK(topo.attachment_of("cell1.rack1") == 0);
  CHECK(topo.attachment_of("cell1.rack2") == 0);
  CHECK(topo.attachment_of("cell2.rack1") == 1);
  CHECK(topo.attachment_of("olt1") == 2);
  CHECK(topo.attachment_of("olt2") == 3);

  CHECK(topo.entity("cell2.rack1").kind == EntityKind::Rack);
  CHECK(topo.entity("cell2.rack1").cell_index == 2);
  CHECK(topo.entity("olt2").kind == EntityKind::Olt);
  CHECK_THROWS_AS(topo.entity("cell9.rack1"), UnknownEntityError);
  CHECK_THROWS_AS(topo.attachment_of("nope"), UnknownEntityError);
}

TEST_CASE("build_topology scales to the four-cell fabric") {
  const Topology topo = build_topology(TopologyConfig{4, 4, 4, 10, 2});
  CHECK(topo.entities().size() == 20);
  CHECK(topo.fabric().attachment_count() == 8);
  CHECK(topo.fabric().wavelength_count() == 16);
}

TEST_CASE("build_topology accepts the minimal two-attachment fabric") {
  const Topology topo = build_topology(TopologyConfig{2, 1, 0, 2, 2});
  CHECK(topo.entities().size() == 2);
  CHECK(topo.fabric().attachment_count() == 2);
  CHECK(topo.fabric().wavelength_count() == 4);
  CHECK(topo.time_slots() == 2);
}

TEST_CASE("build_topology rejects bad parameters by field name") {
  CHECK_THROWS_WITH_AS(build_topology(TopologyConfig{0, 2, 2, 10, 2}),
                       "cells must be >= 1", ConfigError);
  CHECK_THROWS_WITH_AS(build_topology(TopologyConfig{2, 0, 2, 10, 2}),
                       "racks_per_cell must be >= 1", ConfigError);
  CHECK_THROWS_WITH_AS(build_topology(TopologyConfig{2, 1, -1, 10, 2}),
                       "olts must be >= 0", ConfigError);
  CHECK_THROWS_WITH_AS(build_topology(TopologyConfig{1, 1, 0, 10, 2}),
                       "cells + olts must be >= 2", ConfigError);
  CHECK_THROWS_WITH_AS(build_topology(TopologyConfig{2, 2, 2, 0, 2}),
                       "time_slots must be >= 1", ConfigError);
  CHECK_THROWS_WITH_AS(build_topology(TopologyConfig{2, 2, 2, 10, 3}),
                       "planes must be 2", ConfigError);
}

TEST_CASE("build_topology is deterministic") {
  const Topology a = build_topology(small_config());
  const Topology b = build_topology(small_config());
  CHECK(a == b);
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() !=
        build_topology(TopologyConfig{2, 2, 2, 9, 2}).fingerprint());
}

TEST_CASE("required_wavelengths matches the closed forms") {
  CHECK(required_wavelengths(8, true) == 16);
  CHECK(required_wavelengths(8, false) == 14);
  CHECK(required_wavelengths(4, true) == 8);
  CHECK(required_wavelengths(2, true) == 4);
  CHECK_THROWS_AS(required_wavelengths(1, true), ConfigError);

  for (int n = 2; n <= 100; ++n) {
    CHECK(required_wavelengths(n, true) - required_wavelengths(n, false) ==
          2);
  }
}

TEST_CASE("route reproduces the worked rack-to-OLT example") {
  const FabricModel fabric(4);

  // cell1 rack traffic reaches olt1 (attachment 2) on wavelengths 3 and 7
  CHECK(route(fabric, 0, 3) == RouteResult{2, 0});
  CHECK(route(fabric, 0, 7) == RouteResult{2, 1});

  // zero offset maps an attachment to itself
  for (int a = 0; a < 4; ++a) {
    CHECK(route(fabric, a, 1) == RouteResult{a, 0});
  }

  CHECK_THROWS_AS(route(fabric, 0, 0), RangeError);
  CHECK_THROWS_AS(route(fabric, 0, 9), RangeError);
  CHECK_THROWS_AS(route(fabric, -1, 1), RangeError);
  CHECK_THROWS_AS(route(fabric, 4, 1), RangeError);
}

TEST_CASE("route is a permutation per wavelength") {
  for (int n : {2, 3, 4, 8, 16, 64}) {
    const FabricModel fabric(n);
    for (int w = 1; w <= fabric.wavelength_count(); ++w) {
      std::set<int> destinations;
      for (int src = 0; src < n; ++src) {
        destinations.insert(route(fabric, src, w).dst_attachment);
      }
      CHECK(destinations.size() == static_cast<std::size_t>(n));
    }
  }
}

TEST_CASE("port_path runs uplink to downlink through one plane") {
  const FabricModel fabric(4);

  SUBCASE("loopback offset") {
    const auto path = port_path(fabric, 0, 1);
    REQUIRE(path.size() == 7);
    CHECK(path.front() == PathSegment{SegmentKind::Uplink, 0, 0});
    CHECK(path.back() == PathSegment{SegmentKind::Downlink, 0, 0});
  }

  SUBCASE("offset two on plane zero") {
    const auto path = port_path(fabric, 0, 3);
    REQUIRE(path.size() == 7);
    CHECK(path[0] == PathSegment{SegmentKind::Uplink, 0, 0});
    CHECK(path[1] == PathSegment{SegmentKind::Tier1In, 0, 0});
    CHECK(path[2] == PathSegment{SegmentKind::Tier1Out, 0, 2});
    CHECK(path[3] == PathSegment{SegmentKind::InterTier, 0, 2});
    CHECK(path[4] == PathSegment{SegmentKind::Tier2In, 0, 2});
    CHECK(path[5] == PathSegment{SegmentKind::Tier2Out, 0, 2});
    CHECK(path[6] == PathSegment{SegmentKind::Downlink, 0, 2});
  }

  SUBCASE("wraparound on plane one") {
    const auto path = port_path(fabric, 3, 6);
    REQUIRE(path.size() == 7);
    CHECK(path.front() == PathSegment{SegmentKind::Uplink, 1, 3});
    CHECK(path.back() == PathSegment{SegmentKind::Downlink, 1, 0});
  }

  CHECK_THROWS_AS(port_path(fabric, 0, 99), RangeError);
}

TEST_CASE("all_to_all_check certifies dual coverage") {
  SUBCASE("N=4") {
    const auto report = all_to_all_check(build_topology(small_config()));
    CHECK(report.ok);
    CHECK(report.wavelengths_for(0, 2) == std::vector<int>{3, 7});
  }

  SUBCASE("N=2") {
    const auto report =
        all_to_all_check(build_topology(TopologyConfig{2, 1, 0, 2, 2}));
    CHECK(report.ok);
    CHECK(report.wavelengths_for(0, 1) == std::vector<int>{2, 4});
  }

  SUBCASE("N=8 covers all 64 ordered pairs twice") {
    const auto report =
        all_to_all_check(build_topology(TopologyConfig{4, 4, 4, 10, 2}));
    CHECK(report.ok);
    for (int src = 0; src < 8; ++src) {
      for (int dst = 0; dst < 8; ++dst) {
        const auto& wavelengths = report.wavelengths_for(src, dst);
        REQUIRE(wavelengths.size() == 2);
        CHECK(wavelengths[1] - wavelengths[0] == 8);
      }
    }
  }

  SUBCASE("N=64") {
    CHECK(all_to_all_check(build_topology(TopologyConfig{32, 1, 32, 10, 2}))
              .ok);
  }
}

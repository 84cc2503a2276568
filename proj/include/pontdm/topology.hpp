// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "pontdm/errors.hpp"

namespace pontdm {

enum class EntityKind { Rack, Olt };

// A communicating endpoint: one rack inside a cell, or one OLT switch.
struct Entity {
  EntityKind kind = EntityKind::Rack;
  int cell_index = 0;   // 1-based cell number; 0 for OLTs
  int local_index = 0;  // 1-based rack number within the cell, or OLT number
  std::string name;     // "cell<i>.rack<j>" or "olt<k>"

  bool operator==(const Entity&) const = default;
};

// One fabric port group. All racks of a cell share one attachment through
// the cell's special server; each OLT owns its own attachment.
struct Attachment {
  int index = 0;                    // 0-based; cells first, then OLTs
  std::vector<std::string> hosted;  // entity names behind this port group

  bool operator==(const Attachment&) const = default;
};

// Deterministic wavelength-routing function of the two-plane cascaded AWGR
// fabric. Wavelength labels are 1-based, 1..2N. Wavelength w applies the
// cyclic shift (w-1) mod N between attachments and travels on plane
// (w-1) div N, so the two planes carry N wavelengths each and every
// ordered attachment pair is reachable on exactly one wavelength per plane.
class FabricModel {
 public:
  FabricModel() = default;
  FabricModel(int attachment_count, int planes = 2);

  int attachment_count() const { return n_; }
  int plane_count() const { return planes_; }
  int wavelength_count() const { return planes_ * n_; }

  // Cyclic shift applied by wavelength w; throws RangeError when w is
  // outside 1..2N.
  int offset_of(int wavelength) const;
  // Plane carrying wavelength w (0 or 1).
  int plane_of(int wavelength) const;

  bool operator==(const FabricModel&) const = default;

 private:
  void check_wavelength(int wavelength) const;

  int n_ = 0;
  int planes_ = 2;
};

struct RouteResult {
  int dst_attachment = 0;
  int plane = 0;

  bool operator==(const RouteResult&) const = default;
};

// Destination attachment and plane for traffic injected at src_attachment
// on the given wavelength. Pure and total on its domain.
RouteResult route(const FabricModel& fabric, int src_attachment,
                  int wavelength);

enum class SegmentKind {
  Uplink,
  Tier1In,
  Tier1Out,
  InterTier,
  Tier2In,
  Tier2Out,
  Downlink,
};

// One fiber segment of a path through the fabric. Tier 1 applies the full
// cyclic shift; tier 2 is a straight pass within the plane, so the
// end-to-end conflict structure matches any static tier wiring.
struct PathSegment {
  SegmentKind kind = SegmentKind::Uplink;
  int plane = 0;
  int port = 0;  // attachment-aligned port index within the plane

  auto operator<=>(const PathSegment&) const = default;
};

std::string to_string(const PathSegment& segment);

// Ordered segment list from src_attachment's uplink to the destination
// downlink, for conflict accounting.
std::vector<PathSegment> port_path(const FabricModel& fabric,
                                   int src_attachment, int wavelength);

struct TopologyConfig {
  int cells = 2;
  int racks_per_cell = 2;
  int olts = 2;
  int time_slots = 10;
  int planes = 2;

  bool operator==(const TopologyConfig&) const = default;
};

// Immutable data-center model: cells of racks behind special servers, OLT
// switches, and the cascaded-AWGR fabric joining their attachments.
class Topology {
 public:
  Topology() = default;

  const TopologyConfig& config() const { return config_; }
  const std::vector<Entity>& entities() const { return entities_; }
  const std::vector<Attachment>& attachments() const { return attachments_; }
  const FabricModel& fabric() const { return fabric_; }
  int time_slots() const { return config_.time_slots; }

  bool has_entity(const std::string& name) const;
  // Throws UnknownEntityError when no entity has this name.
  const Entity& entity(const std::string& name) const;
  int attachment_of(const std::string& entity_name) const;

  // Stable hex digest of the build parameters, for table provenance.
  std::string fingerprint() const;

  bool operator==(const Topology&) const = default;

 private:
  friend Topology build_topology(const TopologyConfig& config);

  TopologyConfig config_;
  std::vector<Entity> entities_;
  std::vector<Attachment> attachments_;
  FabricModel fabric_;
  std::map<std::string, int> entity_index_;      // name -> entities_ index
  std::map<std::string, int> attachment_index_;  // name -> attachment index
};

// Builds the model with deterministic naming and attachment order (cells
// first, then OLTs). Throws ConfigError naming the offending field.
Topology build_topology(const TopologyConfig& config);

// Wavelengths needed for all-to-all communication between n attachments:
// 2n when intra-cell pairs ride the fabric, 2(n-1) otherwise.
int required_wavelengths(int attachment_count, bool include_intra_cell);

struct ReachabilityReport {
  int attachment_count = 0;
  bool ok = false;
  // Indexed src * N + dst; wavelengths routing src to dst, ascending.
  std::vector<std::vector<int>> pair_wavelengths;
  std::vector<std::string> failures;

  const std::vector<int>& wavelengths_for(int src, int dst) const;
};

// Enumerates route() over every wavelength and checks the multipath
// property: each ordered attachment pair is reached by exactly two
// wavelengths, one per plane, differing by exactly N.
ReachabilityReport all_to_all_check(const Topology& topology);

}  // namespace pontdm

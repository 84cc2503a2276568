// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#include "pontdm/topology.hpp"

#include <cstdint>
#include <sstream>

namespace pontdm {

FabricModel::FabricModel(int attachment_count, int planes)
    : n_(attachment_count), planes_(planes) {
  if (attachment_count < 1) {
    throw ConfigError("attachment count must be >= 1");
  }
  if (planes != 2) {
    throw ConfigError("planes must be 2");
  }
}

void FabricModel::check_wavelength(int wavelength) const {
  if (wavelength < 1 || wavelength > wavelength_count()) {
    std::ostringstream msg;
    msg << "wavelength " << wavelength << " out of range 1.."
        << wavelength_count();
    throw RangeError(msg.str());
  }
}

int FabricModel::offset_of(int wavelength) const {
  check_wavelength(wavelength);
  return (wavelength - 1) % n_;
}

int FabricModel::plane_of(int wavelength) const {
  check_wavelength(wavelength);
  return (wavelength - 1) / n_;
}

RouteResult route(const FabricModel& fabric, int src_attachment,
                  int wavelength) {
  if (src_attachment < 0 || src_attachment >= fabric.attachment_count()) {
    std::ostringstream msg;
    msg << "attachment " << src_attachment << " out of range 0.."
        << fabric.attachment_count() - 1;
    throw RangeError(msg.str());
  }
  const int offset = fabric.offset_of(wavelength);
  return RouteResult{(src_attachment + offset) % fabric.attachment_count(),
                     fabric.plane_of(wavelength)};
}

std::string to_string(const PathSegment& segment) {
  const char* kind = "?";
  switch (segment.kind) {
    case SegmentKind::Uplink:
      kind = "uplink";
      break;
    case SegmentKind::Tier1In:
      kind = "tier1_in";
      break;
    case SegmentKind::Tier1Out:
      kind = "tier1_out";
      break;
    case SegmentKind::InterTier:
      kind = "inter_tier";
      break;
    case SegmentKind::Tier2In:
      kind = "tier2_in";
      break;
    case SegmentKind::Tier2Out:
      kind = "tier2_out";
      break;
    case SegmentKind::Downlink:
      kind = "downlink";
      break;
  }
  std::ostringstream out;
  out << kind << "(plane " << segment.plane << ", port " << segment.port
      << ")";
  return out.str();
}

std::vector<PathSegment> port_path(const FabricModel& fabric,
                                   int src_attachment, int wavelength) {
  const RouteResult hop = route(fabric, src_attachment, wavelength);
  const int plane = hop.plane;
  const int mid = hop.dst_attachment;  // tier 1 applies the full shift
  return {
      {SegmentKind::Uplink, plane, src_attachment},
      {SegmentKind::Tier1In, plane, src_attachment},
      {SegmentKind::Tier1Out, plane, mid},
      {SegmentKind::InterTier, plane, mid},
      {SegmentKind::Tier2In, plane, mid},
      {SegmentKind::Tier2Out, plane, hop.dst_attachment},
      {SegmentKind::Downlink, plane, hop.dst_attachment},
  };
}

bool Topology::has_entity(const std::string& name) const {
  return entity_index_.count(name) > 0;
}

const Entity& Topology::entity(const std::string& name) const {
  auto it = entity_index_.find(name);
  if (it == entity_index_.end()) {
    throw UnknownEntityError("unknown entity '" + name + "'");
  }
  return entities_[static_cast<std::size_t>(it->second)];
}

int Topology::attachment_of(const std::string& entity_name) const {
  auto it = attachment_index_.find(entity_name);
  if (it == attachment_index_.end()) {
    throw UnknownEntityError("unknown entity '" + entity_name + "'");
  }
  return it->second;
}

namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace

std::string Topology::fingerprint() const {
  std::ostringstream canon;
  canon << "cells=" << config_.cells << ";racks_per_cell="
        << config_.racks_per_cell << ";olts=" << config_.olts
        << ";time_slots=" << config_.time_slots << ";planes="
        << config_.planes;
  std::ostringstream hex;
  hex << std::hex << fnv1a(canon.str());
  return hex.str();
}

Topology build_topology(const TopologyConfig& config) {
  if (config.cells < 1) {
    throw ConfigError("cells must be >= 1");
  }
  if (config.racks_per_cell < 1) {
    throw ConfigError("racks_per_cell must be >= 1");
  }
  if (config.olts < 0) {
    throw ConfigError("olts must be >= 0");
  }
  if (config.cells + config.olts < 2) {
    throw ConfigError("cells + olts must be >= 2");
  }
  if (config.time_slots < 1) {
    throw ConfigError("time_slots must be >= 1");
  }
  if (config.planes != 2) {
    throw ConfigError("planes must be 2");
  }

  Topology topo;
  topo.config_ = config;
  topo.fabric_ = FabricModel(config.cells + config.olts, config.planes);

  for (int cell = 1; cell <= config.cells; ++cell) {
    Attachment attachment;
    attachment.index = cell - 1;
    for (int rack = 1; rack <= config.racks_per_cell; ++rack) {
      Entity entity;
      entity.kind = EntityKind::Rack;
      entity.cell_index = cell;
      entity.local_index = rack;
      entity.name =
          "cell" + std::to_string(cell) + ".rack" + std::to_string(rack);
      attachment.hosted.push_back(entity.name);
      topo.entity_index_[entity.name] =
          static_cast<int>(topo.entities_.size());
      topo.attachment_index_[entity.name] = attachment.index;
      topo.entities_.push_back(std::move(entity));
    }
    topo.attachments_.push_back(std::move(attachment));
  }

  for (int olt = 1; olt <= config.olts; ++olt) {
    Attachment attachment;
    attachment.index = config.cells + olt - 1;
    Entity entity;
    entity.kind = EntityKind::Olt;
    entity.cell_index = 0;
    entity.local_index = olt;
    entity.name = "olt" + std::to_string(olt);
    attachment.hosted.push_back(entity.name);
    topo.entity_index_[entity.name] = static_cast<int>(topo.entities_.size());
    topo.attachment_index_[entity.name] = attachment.index;
    topo.entities_.push_back(std::move(entity));
    topo.attachments_.push_back(std::move(attachment));
  }

  return topo;
}

int required_wavelengths(int attachment_count, bool include_intra_cell) {
  if (attachment_count < 2) {
    throw ConfigError("attachment count must be >= 2");
  }
  return include_intra_cell ? 2 * attachment_count
                            : 2 * (attachment_count - 1);
}

const std::vector<int>& ReachabilityReport::wavelengths_for(int src,
                                                            int dst) const {
  return pair_wavelengths[static_cast<std::size_t>(src * attachment_count +
                                                   dst)];
}

ReachabilityReport all_to_all_check(const Topology& topology) {
  const FabricModel& fabric = topology.fabric();
  const int n = fabric.attachment_count();

  ReachabilityReport report;
  report.attachment_count = n;
  report.pair_wavelengths.assign(static_cast<std::size_t>(n) * n, {});

  for (int wavelength = 1; wavelength <= fabric.wavelength_count();
       ++wavelength) {
    for (int src = 0; src < n; ++src) {
      const RouteResult hop = route(fabric, src, wavelength);
      report.pair_wavelengths[static_cast<std::size_t>(src * n +
                                                       hop.dst_attachment)]
          .push_back(wavelength);
    }
  }

  for (int src = 0; src < n; ++src) {
    for (int dst = 0; dst < n; ++dst) {
      const auto& wavelengths = report.wavelengths_for(src, dst);
      std::ostringstream where;
      where << "pair (" << src << "," << dst << "): ";
      if (wavelengths.size() != 2) {
        std::ostringstream msg;
        msg << where.str() << "reached by " << wavelengths.size()
            << " wavelengths, expected 2";
        report.failures.push_back(msg.str());
        continue;
      }
      const int low = wavelengths[0];
      const int high = wavelengths[1];
      if (high - low != n) {
        std::ostringstream msg;
        msg << where.str() << "wavelengths " << low << " and " << high
            << " do not differ by N=" << n;
        report.failures.push_back(msg.str());
      }
      if (fabric.plane_of(low) == fabric.plane_of(high)) {
        std::ostringstream msg;
        msg << where.str() << "wavelengths " << low << " and " << high
            << " share a plane";
        report.failures.push_back(msg.str());
      }
    }
  }

  report.ok = report.failures.empty();
  return report;
}

}  // namespace pontdm

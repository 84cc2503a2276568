// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#include "pontdm/rwta.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace pontdm {

DemandSet::DemandSet(std::vector<Demand> pairs, DemandFlags flags)
    : flags_(flags) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (auto& demand : pairs) {
    if (demand.src == demand.dst) {
      continue;  // self pairs are never demands
    }
    index_[{demand.src, demand.dst}] = static_cast<int>(pairs_.size());
    pairs_.push_back(std::move(demand));
  }
}

bool DemandSet::contains(const std::string& src,
                         const std::string& dst) const {
  return index_.count({src, dst}) > 0;
}

namespace {

bool same_cell_racks(const Entity& a, const Entity& b) {
  return a.kind == EntityKind::Rack && b.kind == EntityKind::Rack &&
         a.cell_index == b.cell_index;
}

}  // namespace

DemandSet build_demands(const Topology& topology, DemandFlags flags) {
  std::vector<std::string> names;
  names.reserve(topology.entities().size());
  for (const Entity& entity : topology.entities()) {
    names.push_back(entity.name);
  }
  std::sort(names.begin(), names.end());

  std::vector<Demand> pairs;
  for (const std::string& src : names) {
    const Entity& src_entity = topology.entity(src);
    for (const std::string& dst : names) {
      if (src == dst) {
        continue;
      }
      const Entity& dst_entity = topology.entity(dst);
      if (!flags.include_intra_cell && same_cell_racks(src_entity, dst_entity)) {
        continue;
      }
      if (!flags.include_olt_pairs && src_entity.kind == EntityKind::Olt &&
          dst_entity.kind == EntityKind::Olt) {
        continue;
      }
      pairs.push_back(Demand{src, dst});
    }
  }
  return DemandSet(std::move(pairs), flags);
}

std::vector<int> feasible_wavelengths(const Topology& topology,
                                      const std::string& src,
                                      const std::string& dst) {
  if (src == dst) {
    throw RangeError("feasible_wavelengths: src and dst must differ");
  }
  const int src_attachment = topology.attachment_of(src);
  const int dst_attachment = topology.attachment_of(dst);
  const FabricModel& fabric = topology.fabric();

  std::vector<int> wavelengths;
  for (int w = 1; w <= fabric.wavelength_count(); ++w) {
    if (route(fabric, src_attachment, w).dst_attachment == dst_attachment) {
      wavelengths.push_back(w);
    }
  }
  return wavelengths;
}

bool AssignmentTable::operator==(const AssignmentTable& other) const {
  std::vector<Assignment> mine = assignments;
  std::vector<Assignment> theirs = other.assignments;
  std::sort(mine.begin(), mine.end());
  std::sort(theirs.begin(), theirs.end());
  return mine == theirs;
}

int objective(const AssignmentTable& table) {
  return static_cast<int>(table.assignments.size());
}

namespace {

std::string describe_record(const AssignmentTable& table, int index) {
  const Assignment& a =
      table.assignments[static_cast<std::size_t>(index)];
  std::ostringstream out;
  out << "record " << index << " (" << a.src << "->" << a.dst << ", w"
      << a.wavelength << ", t" << a.timeslot << ")";
  return out.str();
}

std::string join_records(const std::vector<int>& records) {
  std::ostringstream out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << (i == 0 ? "" : ", ") << records[i];
  }
  return out.str();
}

}  // namespace

ValidationReport check_table(const Topology& topology,
                             const DemandSet& demands,
                             const AssignmentTable& table) {
  const FabricModel& fabric = topology.fabric();
  const int wavelengths = fabric.wavelength_count();
  const int slots = topology.time_slots();
  const int count = static_cast<int>(table.assignments.size());

  ValidationReport report;
  std::vector<bool> resolvable(static_cast<std::size_t>(count), true);

  auto add = [&report](const std::string& code, std::vector<int> records,
                       const std::string& message) {
    report.violations.push_back(Violation{code, std::move(records), message});
  };

  // V1: unknown entities, self pairs, pairs outside the demand set.
  for (int i = 0; i < count; ++i) {
    const Assignment& a = table.assignments[static_cast<std::size_t>(i)];
    bool known = true;
    for (const std::string* name : {&a.src, &a.dst}) {
      if (!topology.has_entity(*name)) {
        add("V1", {i},
            describe_record(table, i) + ": unknown entity '" + *name + "'");
        known = false;
      }
    }
    if (!known) {
      resolvable[static_cast<std::size_t>(i)] = false;
      continue;
    }
    if (a.src == a.dst) {
      add("V1", {i}, describe_record(table, i) + ": self pair");
      resolvable[static_cast<std::size_t>(i)] = false;
      continue;
    }
    if (!demands.contains(a.src, a.dst)) {
      add("V1", {i}, describe_record(table, i) + ": pair not in demand set");
    }
  }

  // V2: label ranges.
  for (int i = 0; i < count; ++i) {
    const Assignment& a = table.assignments[static_cast<std::size_t>(i)];
    if (a.wavelength < 1 || a.wavelength > wavelengths) {
      std::ostringstream msg;
      msg << describe_record(table, i) << ": wavelength " << a.wavelength
          << " out of range 1.." << wavelengths;
      add("V2", {i}, msg.str());
      resolvable[static_cast<std::size_t>(i)] = false;
    }
    if (a.timeslot < 1 || a.timeslot > slots) {
      std::ostringstream msg;
      msg << describe_record(table, i) << ": timeslot " << a.timeslot
          << " out of range 1.." << slots;
      add("V2", {i}, msg.str());
      resolvable[static_cast<std::size_t>(i)] = false;
    }
  }

  // V3: fabric feasibility.
  for (int i = 0; i < count; ++i) {
    if (!resolvable[static_cast<std::size_t>(i)]) {
      continue;
    }
    const Assignment& a = table.assignments[static_cast<std::size_t>(i)];
    const int src_attachment = topology.attachment_of(a.src);
    const int dst_attachment = topology.attachment_of(a.dst);
    const RouteResult hop = route(fabric, src_attachment, a.wavelength);
    if (hop.dst_attachment != dst_attachment) {
      std::ostringstream msg;
      msg << describe_record(table, i) << ": wavelength " << a.wavelength
          << " routes attachment " << src_attachment << " to attachment "
          << hop.dst_attachment << ", not to attachment " << dst_attachment;
      add("V3", {i}, msg.str());
    }
  }

  // V4/V5: fiber collisions at source and destination attachments.
  for (const bool source_side : {true, false}) {
    std::map<std::tuple<int, int, int>, std::vector<int>> fiber_users;
    for (int i = 0; i < count; ++i) {
      if (!resolvable[static_cast<std::size_t>(i)]) {
        continue;
      }
      const Assignment& a = table.assignments[static_cast<std::size_t>(i)];
      const int attachment =
          topology.attachment_of(source_side ? a.src : a.dst);
      fiber_users[{attachment, a.wavelength, a.timeslot}].push_back(i);
    }
    for (const auto& [fiber, users] : fiber_users) {
      if (users.size() < 2) {
        continue;
      }
      std::ostringstream msg;
      msg << (source_side ? "source" : "destination")
          << " fiber collision on (attachment " << std::get<0>(fiber)
          << ", w" << std::get<1>(fiber) << ", t" << std::get<2>(fiber)
          << "): records " << join_records(users);
      add(source_side ? "V4" : "V5", users, msg.str());
    }
  }

  // V6: at most one assignment per (pair, plane).
  {
    std::map<std::tuple<std::string, std::string, int>, std::vector<int>>
        plane_users;
    for (int i = 0; i < count; ++i) {
      const Assignment& a = table.assignments[static_cast<std::size_t>(i)];
      if (a.wavelength < 1 || a.wavelength > wavelengths) {
        continue;
      }
      plane_users[{a.src, a.dst, fabric.plane_of(a.wavelength)}].push_back(i);
    }
    for (const auto& [key, users] : plane_users) {
      if (users.size() < 2) {
        continue;
      }
      std::ostringstream msg;
      msg << "pair " << std::get<0>(key) << "->" << std::get<1>(key)
          << " granted " << users.size() << " assignments on plane "
          << std::get<2>(key) << ": records " << join_records(users);
      add("V6", users, msg.str());
    }
  }

  // V7: duplicate records.
  {
    std::map<Assignment, std::vector<int>> seen;
    for (int i = 0; i < count; ++i) {
      seen[table.assignments[static_cast<std::size_t>(i)]].push_back(i);
    }
    for (const auto& [assignment, users] : seen) {
      if (users.size() < 2) {
        continue;
      }
      add("V7", users,
          "duplicate records " + join_records(users) + ": " +
              describe_record(table, users.front()));
    }
  }

  std::vector<bool> violating(static_cast<std::size_t>(count), false);
  for (const Violation& violation : report.violations) {
    for (int record : violation.records) {
      violating[static_cast<std::size_t>(record)] = true;
    }
  }
  report.objective =
      count - static_cast<int>(std::count(violating.begin(), violating.end(),
                                          true));

  for (const Demand& demand : demands.pairs()) {
    int served = 0;
    for (int i = 0; i < count; ++i) {
      const Assignment& a = table.assignments[static_cast<std::size_t>(i)];
      if (!violating[static_cast<std::size_t>(i)] && a.src == demand.src &&
          a.dst == demand.dst) {
        ++served;
      }
    }
    report.coverage.emplace_back(demand, served);
  }

  report.valid = report.violations.empty();
  return report;
}

std::map<FiberKey, std::vector<int>> conflict_groups(
    const Topology& topology, const DemandSet& demands) {
  std::map<FiberKey, std::vector<int>> groups;
  for (std::size_t i = 0; i < demands.size(); ++i) {
    const Demand& demand = demands.pairs()[i];
    const int src_attachment = topology.attachment_of(demand.src);
    const int dst_attachment = topology.attachment_of(demand.dst);
    for (int w : feasible_wavelengths(topology, demand.src, demand.dst)) {
      groups[{src_attachment, FiberEnd::Source, w}].push_back(
          static_cast<int>(i));
      groups[{dst_attachment, FiberEnd::Destination, w}].push_back(
          static_cast<int>(i));
    }
  }
  return groups;
}

}  // namespace pontdm

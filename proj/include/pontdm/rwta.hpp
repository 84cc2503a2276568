// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pontdm/topology.hpp"

namespace pontdm {

struct DemandFlags {
  bool include_intra_cell = true;
  bool include_olt_pairs = false;

  bool operator==(const DemandFlags&) const = default;
};

struct Demand {
  std::string src;
  std::string dst;

  auto operator<=>(const Demand&) const = default;
};

// Ordered list of communication pairs an instance must serve. Pairs are
// sorted lexicographically by (src, dst); self pairs never appear.
class DemandSet {
 public:
  DemandSet() = default;
  DemandSet(std::vector<Demand> pairs, DemandFlags flags);

  const std::vector<Demand>& pairs() const { return pairs_; }
  DemandFlags flags() const { return flags_; }
  std::size_t size() const { return pairs_.size(); }

  bool contains(const std::string& src, const std::string& dst) const;

  bool operator==(const DemandSet& other) const {
    return pairs_ == other.pairs_ && flags_ == other.flags_;
  }

 private:
  std::vector<Demand> pairs_;
  DemandFlags flags_;
  std::map<std::pair<std::string, std::string>, int> index_;
};

// Every ordered entity pair except self pairs, same-cell rack pairs when
// include_intra_cell is off, and OLT-to-OLT pairs when include_olt_pairs
// is off.
DemandSet build_demands(const Topology& topology, DemandFlags flags = {});

// The wavelengths routing src's attachment to dst's attachment: exactly
// one per plane under the 2N-wavelength fabric. Throws UnknownEntityError
// for names outside the topology and RangeError for a self pair.
std::vector<int> feasible_wavelengths(const Topology& topology,
                                      const std::string& src,
                                      const std::string& dst);

// One granted (pair, wavelength, slot) permission.
struct Assignment {
  std::string src;
  std::string dst;
  int wavelength = 0;  // 1..W
  int timeslot = 0;    // 1..T

  auto operator<=>(const Assignment&) const = default;
};

struct AssignmentTable {
  std::vector<Assignment> assignments;
  std::string fingerprint;  // topology config hash, provenance only

  // Table identity is its record set: row order and provenance are not
  // compared.
  bool operator==(const AssignmentTable& other) const;
};

// Total number of granted connections, the quantity the solvers maximize.
int objective(const AssignmentTable& table);

struct Violation {
  std::string code;          // "V1".."V7"
  std::vector<int> records;  // offending 0-based record indices
  std::string message;
};

struct ValidationReport {
  bool valid = false;
  std::vector<Violation> violations;
  int objective = 0;  // records free of any violation
  // Valid-assignment count per demand pair, in DemandSet order.
  std::vector<std::pair<Demand, int>> coverage;
};

// Checks every reconstructed constraint and reports all findings:
//   V1 unknown entity, self pair, or pair outside the demand set
//   V2 wavelength or timeslot out of range
//   V3 wavelength does not route src to dst
//   V4 two assignments share (source attachment, wavelength, timeslot)
//   V5 two assignments share (destination attachment, wavelength, timeslot)
//   V6 a pair holds two assignments in one plane
//   V7 duplicate record
ValidationReport check_table(const Topology& topology,
                             const DemandSet& demands,
                             const AssignmentTable& table);

enum class FiberEnd { Source, Destination };

struct FiberKey {
  int attachment = 0;
  FiberEnd end = FiberEnd::Source;
  int wavelength = 0;

  auto operator<=>(const FiberKey&) const = default;
};

// Demands contending for each (attachment fiber, wavelength), keyed at
// both ends. Values index into demands.pairs(); group sizes lower-bound
// the slots that wavelength needs.
std::map<FiberKey, std::vector<int>> conflict_groups(const Topology& topology,
                                                     const DemandSet& demands);

}  // namespace pontdm

// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pontdm/rwta.hpp"

namespace pontdm {

enum class TrafficKind { Uniform, Bernoulli, Hotspot };

// Synthetic arrival process. uniform: k packets per pair at every frame
// start. bernoulli: one arrival per pair per slot with probability p.
// hotspot: one packet per pair per frame, multiplied for pairs whose
// destination is the target entity.
struct TrafficModel {
  TrafficKind kind = TrafficKind::Uniform;
  int packets_per_frame = 1;         // uniform
  double arrival_probability = 0.0;  // bernoulli
  std::string hotspot_entity;        // hotspot
  int hotspot_multiplier = 1;        // hotspot
  std::uint32_t seed = 0;

  static TrafficModel uniform(int packets_per_frame, std::uint32_t seed = 0);
  static TrafficModel bernoulli(double probability, std::uint32_t seed = 0);
  static TrafficModel hotspot(std::string entity, int multiplier,
                              std::uint32_t seed = 0);

  // Accepts "uniform:<k>", "bernoulli:<p>" or "hotspot:<entity>:<mult>";
  // throws ParseError otherwise.
  static TrafficModel parse(const std::string& spec, std::uint32_t seed = 0);
};

struct PairMetrics {
  std::string src;
  std::string dst;
  long long offered = 0;
  long long delivered = 0;
  long long queued_end = 0;
  long long delay_sum = 0;  // slots, over delivered packets
  long long delay_max = 0;

  double mean_delay() const {
    return delivered == 0 ? 0.0
                          : static_cast<double>(delay_sum) /
                                static_cast<double>(delivered);
  }
};

enum class FiberDirection { Up, Down };

struct FiberMetrics {
  int attachment = 0;
  FiberDirection direction = FiberDirection::Up;
  long long used_cells = 0;     // occupied (wavelength, slot, frame) cells
  double utilization = 0.0;     // used_cells / (W * T * frames)
};

struct Metrics {
  int frames = 0;
  int time_slots = 0;
  int wavelength_count = 0;
  std::vector<PairMetrics> pairs;    // sorted by (src, dst)
  std::vector<FiberMetrics> fibers;  // attachment ascending, up before down
  long long total_offered = 0;
  long long total_delivered = 0;
  long long total_queued_end = 0;
  long long delay_sum = 0;
  long long delay_max = 0;

  double mean_delay() const {
    return total_delivered == 0 ? 0.0
                                : static_cast<double>(delay_sum) /
                                      static_cast<double>(total_delivered);
  }
};

// One packet transmission, recorded when tracing is on.
struct Transmission {
  int frame = 0;       // 0-based
  int timeslot = 0;    // 1-based
  int wavelength = 0;  // 1-based
  int src_attachment = 0;
  int pair_index = 0;  // into Metrics.pairs
};

struct SimResult {
  Metrics metrics;
  std::vector<Transmission> trace;  // empty unless tracing was requested
};

// Replays the table over `frames` TDM frames. Each pair holds a FIFO
// queue; packets arrive at slot boundaries; a grant (wavelength, slot)
// moves one queued packet per frame pass; delay is measured in slots from
// arrival to transmission. The table must validate against the topology
// (InvalidTableError otherwise). Deterministic per (table, traffic,
// frames, seed).
SimResult simulate(const Topology& topology, const AssignmentTable& table,
                   const TrafficModel& traffic, int frames,
                   bool record_trace = false);

struct Breach {
  int frame = 0;
  int timeslot = 0;
  int wavelength = 0;
  PathSegment segment;
  std::vector<int> transmissions;  // indices into the trace
};

struct AuditVerdict {
  bool clean = true;
  std::vector<Breach> breaches;
};

// Asserts no two transmissions in one slot share any port-path segment on
// the same wavelength. Empty for every table the validator accepts.
AuditVerdict collision_audit(const FabricModel& fabric,
                             const std::vector<Transmission>& trace);

struct MetricsRow {
  std::string scope;
  std::string name;
  std::string value;
};

// Per-fiber utilization rows plus the aggregate (mean over fibers).
std::vector<MetricsRow> utilization_summary(const Metrics& metrics);

// Full metrics file content: global, fiber and per-pair rows.
std::vector<MetricsRow> metrics_rows(const Metrics& metrics);

}  // namespace pontdm

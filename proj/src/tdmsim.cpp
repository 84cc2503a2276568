// Copyright 2026 pontdm contributors
// SPDX-License-Identifier: Apache-2.0

#include "pontdm/tdmsim.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "pontdm/format.hpp"

namespace pontdm {

TrafficModel TrafficModel::uniform(int packets_per_frame,
                                   std::uint32_t seed) {
  TrafficModel model;
  model.kind = TrafficKind::Uniform;
  model.packets_per_frame = packets_per_frame;
  model.seed = seed;
  return model;
}

TrafficModel TrafficModel::bernoulli(double probability, std::uint32_t seed) {
  TrafficModel model;
  model.kind = TrafficKind::Bernoulli;
  model.arrival_probability = probability;
  model.seed = seed;
  return model;
}

TrafficModel TrafficModel::hotspot(std::string entity, int multiplier,
                                   std::uint32_t seed) {
  TrafficModel model;
  model.kind = TrafficKind::Hotspot;
  model.hotspot_entity = std::move(entity);
  model.hotspot_multiplier = multiplier;
  model.seed = seed;
  return model;
}

namespace {

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("traffic spec: bad " + what + " '" + text + "'");
  }
  return value;
}

double parse_double(const std::string& text, const std::string& what) {
  double value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("traffic spec: bad " + what + " '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

TrafficModel TrafficModel::parse(const std::string& spec,
                                 std::uint32_t seed) {
  const std::vector<std::string> parts = split(spec, ':');
  if (parts[0] == "uniform") {
    if (parts.size() != 2) {
      throw ParseError("traffic spec: expected uniform:<packets>");
    }
    const int k = parse_int(parts[1], "packet count");
    if (k < 0) {
      throw ParseError("traffic spec: packet count must be >= 0");
    }
    return uniform(k, seed);
  }
  if (parts[0] == "bernoulli") {
    if (parts.size() != 2) {
      throw ParseError("traffic spec: expected bernoulli:<probability>");
    }
    const double p = parse_double(parts[1], "probability");
    if (p < 0.0 || p > 1.0) {
      throw ParseError("traffic spec: probability out of range 0..1");
    }
    return bernoulli(p, seed);
  }
  if (parts[0] == "hotspot") {
    if (parts.size() != 3 || parts[1].empty()) {
      throw ParseError("traffic spec: expected hotspot:<entity>:<multiplier>");
    }
    const int multiplier = parse_int(parts[2], "multiplier");
    if (multiplier < 1) {
      throw ParseError("traffic spec: multiplier must be >= 1");
    }
    return hotspot(parts[1], multiplier, seed);
  }
  throw ParseError("traffic spec: unknown kind '" + parts[0] + "'");
}

namespace {

struct Grant {
  int pair = 0;
  int wavelength = 0;
  int src_attachment = 0;
  int dst_attachment = 0;
};

void check_traffic(const Topology& topology, const TrafficModel& traffic) {
  switch (traffic.kind) {
    case TrafficKind::Uniform:
      if (traffic.packets_per_frame < 0) {
        throw ConfigError("traffic: packets per frame must be >= 0");
      }
      break;
    case TrafficKind::Bernoulli:
      if (traffic.arrival_probability < 0.0 ||
          traffic.arrival_probability > 1.0) {
        throw ConfigError("traffic: probability out of range 0..1");
      }
      break;
    case TrafficKind::Hotspot:
      if (traffic.hotspot_multiplier < 1) {
        throw ConfigError("traffic: multiplier must be >= 1");
      }
      if (!topology.has_entity(traffic.hotspot_entity)) {
        throw UnknownEntityError("unknown entity '" + traffic.hotspot_entity +
                                 "'");
      }
      break;
  }
}

}  // namespace

SimResult simulate(const Topology& topology, const AssignmentTable& table,
                   const TrafficModel& traffic, int frames,
                   bool record_trace) {
  if (frames < 1) {
    throw ConfigError("frames must be >= 1");
  }
  check_traffic(topology, traffic);

  // The table must hold against the fabric before packets move. Its own
  // pair list serves as the demand set, so only structural rules apply.
  std::vector<Demand> table_pairs;
  for (const Assignment& a : table.assignments) {
    table_pairs.push_back(Demand{a.src, a.dst});
  }
  DemandSet pairs(std::move(table_pairs), DemandFlags{true, true});
  const ValidationReport report = check_table(topology, pairs, table);
  if (!report.valid) {
    throw InvalidTableError("table rejected by validator: " +
                            report.violations.front().message);
  }

  const FabricModel& fabric = topology.fabric();
  const int slots = topology.time_slots();
  const int wavelengths = fabric.wavelength_count();
  const int attachments = fabric.attachment_count();

  SimResult result;
  Metrics& metrics = result.metrics;
  metrics.frames = frames;
  metrics.time_slots = slots;
  metrics.wavelength_count = wavelengths;

  std::map<std::pair<std::string, std::string>, int> pair_index;
  for (const Demand& demand : pairs.pairs()) {
    pair_index[{demand.src, demand.dst}] =
        static_cast<int>(metrics.pairs.size());
    PairMetrics pm;
    pm.src = demand.src;
    pm.dst = demand.dst;
    metrics.pairs.push_back(std::move(pm));
  }

  // grant schedule per slot, served in (pair, wavelength) order
  std::vector<std::vector<Grant>> grants_by_slot(
      static_cast<std::size_t>(slots) + 1);
  for (const Assignment& a : table.assignments) {
    Grant grant;
    grant.pair = pair_index.at({a.src, a.dst});
    grant.wavelength = a.wavelength;
    grant.src_attachment = topology.attachment_of(a.src);
    grant.dst_attachment = topology.attachment_of(a.dst);
    grants_by_slot[static_cast<std::size_t>(a.timeslot)].push_back(grant);
  }
  for (auto& slot_grants : grants_by_slot) {
    std::sort(slot_grants.begin(), slot_grants.end(),
              [](const Grant& a, const Grant& b) {
                return std::tie(a.pair, a.wavelength) <
                       std::tie(b.pair, b.wavelength);
              });
  }

  metrics.fibers.resize(static_cast<std::size_t>(2 * attachments));
  for (int a = 0; a < attachments; ++a) {
    metrics.fibers[static_cast<std::size_t>(2 * a)] = {
        a, FiberDirection::Up, 0, 0.0};
    metrics.fibers[static_cast<std::size_t>(2 * a + 1)] = {
        a, FiberDirection::Down, 0, 0.0};
  }

  std::vector<int> frame_arrivals(metrics.pairs.size(), 0);
  if (traffic.kind == TrafficKind::Uniform) {
    std::fill(frame_arrivals.begin(), frame_arrivals.end(),
              traffic.packets_per_frame);
  } else if (traffic.kind == TrafficKind::Hotspot) {
    for (std::size_t p = 0; p < metrics.pairs.size(); ++p) {
      frame_arrivals[p] = metrics.pairs[p].dst == traffic.hotspot_entity
                              ? traffic.hotspot_multiplier
                              : 1;
    }
  }

  std::vector<std::deque<long long>> queues(metrics.pairs.size());
  std::mt19937 gen(traffic.seed);
  // single scaled draw per (slot, pair); stays identical across platforms
  auto arrives = [&gen, &traffic]() {
    const double u =
        static_cast<double>(gen()) * (1.0 / 4294967296.0);  // [0, 1)
    return u < traffic.arrival_probability;
  };

  for (int frame = 0; frame < frames; ++frame) {
    for (int slot = 1; slot <= slots; ++slot) {
      const long long now =
          static_cast<long long>(frame) * slots + (slot - 1);

      if (traffic.kind == TrafficKind::Bernoulli) {
        for (std::size_t p = 0; p < queues.size(); ++p) {
          if (arrives()) {
            queues[p].push_back(now);
            ++metrics.pairs[p].offered;
          }
        }
      } else if (slot == 1) {
        for (std::size_t p = 0; p < queues.size(); ++p) {
          for (int k = 0; k < frame_arrivals[p]; ++k) {
            queues[p].push_back(now);
            ++metrics.pairs[p].offered;
          }
        }
      }

      for (const Grant& grant : grants_by_slot[static_cast<std::size_t>(
               slot)]) {
        auto& queue = queues[static_cast<std::size_t>(grant.pair)];
        if (queue.empty()) {
          continue;  // grants never fire without a packet
        }
        const long long arrival = queue.front();
        queue.pop_front();
        const long long delay = now - arrival;

        PairMetrics& pm = metrics.pairs[static_cast<std::size_t>(grant.pair)];
        ++pm.delivered;
        pm.delay_sum += delay;
        pm.delay_max = std::max(pm.delay_max, delay);
        metrics.fibers[static_cast<std::size_t>(2 * grant.src_attachment)]
            .used_cells++;
        metrics
            .fibers[static_cast<std::size_t>(2 * grant.dst_attachment + 1)]
            .used_cells++;
        if (record_trace) {
          result.trace.push_back(Transmission{frame, slot, grant.wavelength,
                                              grant.src_attachment,
                                              grant.pair});
        }
      }
    }
  }

  const double cells =
      static_cast<double>(wavelengths) * slots * frames;
  for (FiberMetrics& fiber : metrics.fibers) {
    fiber.utilization = static_cast<double>(fiber.used_cells) / cells;
  }
  for (std::size_t p = 0; p < metrics.pairs.size(); ++p) {
    PairMetrics& pm = metrics.pairs[p];
    pm.queued_end = static_cast<long long>(queues[p].size());
    metrics.total_offered += pm.offered;
    metrics.total_delivered += pm.delivered;
    metrics.total_queued_end += pm.queued_end;
    metrics.delay_sum += pm.delay_sum;
    metrics.delay_max = std::max(metrics.delay_max, pm.delay_max);
  }

  return result;
}

AuditVerdict collision_audit(const FabricModel& fabric,
                             const std::vector<Transmission>& trace) {
  std::map<std::tuple<int, int, int, PathSegment>, std::vector<int>> users;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Transmission& tx = trace[i];
    for (const PathSegment& segment :
         port_path(fabric, tx.src_attachment, tx.wavelength)) {
      users[{tx.frame, tx.timeslot, tx.wavelength, segment}].push_back(
          static_cast<int>(i));
    }
  }

  AuditVerdict verdict;
  for (const auto& [key, transmissions] : users) {
    if (transmissions.size() < 2) {
      continue;
    }
    Breach breach;
    breach.frame = std::get<0>(key);
    breach.timeslot = std::get<1>(key);
    breach.wavelength = std::get<2>(key);
    breach.segment = std::get<3>(key);
    breach.transmissions = transmissions;
    verdict.breaches.push_back(std::move(breach));
  }
  verdict.clean = verdict.breaches.empty();
  return verdict;
}

std::vector<MetricsRow> utilization_summary(const Metrics& metrics) {
  std::vector<MetricsRow> rows;
  double sum = 0.0;
  for (const FiberMetrics& fiber : metrics.fibers) {
    const std::string name =
        "attachment" + std::to_string(fiber.attachment) +
        (fiber.direction == FiberDirection::Up ? ".up" : ".down");
    rows.push_back({"fiber", name, format_ratio(fiber.utilization)});
    sum += fiber.utilization;
  }
  const double aggregate =
      metrics.fibers.empty() ? 0.0 : sum / static_cast<double>(
                                               metrics.fibers.size());
  rows.push_back({"fiber", "aggregate", format_ratio(aggregate)});
  return rows;
}

std::vector<MetricsRow> metrics_rows(const Metrics& metrics) {
  std::vector<MetricsRow> rows = {
      {"global", "frames", std::to_string(metrics.frames)},
      {"global", "offered", std::to_string(metrics.total_offered)},
      {"global", "delivered", std::to_string(metrics.total_delivered)},
      {"global", "queued_end", std::to_string(metrics.total_queued_end)},
      {"global", "mean_delay", format_ratio(metrics.mean_delay())},
      {"global", "max_delay", std::to_string(metrics.delay_max)},
  };
  for (MetricsRow& row : utilization_summary(metrics)) {
    rows.push_back(std::move(row));
  }
  for (const PairMetrics& pm : metrics.pairs) {
    const std::string pair_name = pm.src + "->" + pm.dst;
    rows.push_back(
        {"pair", pair_name + ".offered", std::to_string(pm.offered)});
    rows.push_back(
        {"pair", pair_name + ".delivered", std::to_string(pm.delivered)});
    rows.push_back(
        {"pair", pair_name + ".queued_end", std::to_string(pm.queued_end)});
    rows.push_back(
        {"pair", pair_name + ".mean_delay", format_ratio(pm.mean_delay())});
    rows.push_back(
        {"pair", pair_name + ".max_delay", std::to_string(pm.delay_max)});
  }
  return rows;
}

}  // namespace pontdm

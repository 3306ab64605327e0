// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "score/core_model.hpp"
#include "score/fusion.hpp"

namespace score {

// Sensor report line protocol, one reading per line:
//
//   SCORE1 <station> <lat> <lon> <irradiance> <t>\n
//
//   station     [A-Za-z0-9]{1,16}
//   lat, lon    -?[0-9]+(\.[0-9]+)?   within [-90,90] / [-180,180]
//   irradiance  same decimal form, within [0,1]
//   t           [0-9]+                whole hours since the epoch
//
// Fields are separated by exactly one space. A single trailing '\n' is
// allowed; no other whitespace is.

inline constexpr std::string_view kReportMagic = "SCORE1";
inline constexpr double kDefaultMaxRadiusM = 500.0;

/// Report line rejected. field() is one of: version, field_count, station,
/// lat, lon, irradiance, timestamp.
class PacketError : public std::invalid_argument {
 public:
  PacketError(std::string field, const std::string& what);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

IrradianceSample parse_packet(std::string_view line);

/// Inverse of parse_packet, without the trailing newline. Throws
/// std::invalid_argument if the sample cannot be expressed in the grammar.
std::string format_packet(const IrradianceSample& sample);

/// Nearest node within max_radius_m (ties to the lower id), else nullopt.
std::optional<NodeId> assign_node(const IrradianceSample& sample, const RoadGraph& graph,
                                  double max_radius_m = kDefaultMaxRadiusM);

enum class IngestOutcome { Accepted, SupersededKept };

/// Latest reading per road node plus the raw log of accepted lines.
/// Thread-safe: writers are serialized, readers get consistent snapshots.
class SampleStore {
 public:
  IngestOutcome ingest(const IrradianceSample& sample, NodeId node);

  /// Appends a parsed line to the replay log.
  void log_line(std::string line);

  LatestSamples snapshot() const;
  std::vector<std::string> raw_log() const;
  std::optional<IrradianceSample> latest(NodeId node) const;

 private:
  mutable std::shared_mutex mu_;
  LatestSamples latest_;
  std::vector<std::string> log_;
};

struct LineRejection {
  std::size_t line{0};  // 1-based
  std::string field;
  std::string error;
};

struct ReportSummary {
  std::size_t accepted{0};    // parsed and stored (or kept an equal/newer one)
  std::size_t superseded{0};  // subset of accepted where the store kept its sample
  std::size_t dropped{0};     // parsed but no node within radius
  std::size_t rejected{0};
  std::vector<LineRejection> rejections;

  std::string to_json() const;
};

/// Parses, assigns and ingests every line of a report body. A trailing
/// newline at the end of the body does not count as an extra line.
ReportSummary ingest_report(SampleStore& store, const RoadGraph& graph, std::string_view body,
                            double max_radius_m = kDefaultMaxRadiusM);

/// Rebuilds a store from a raw log.
void replay(SampleStore& store, const RoadGraph& graph, const std::vector<std::string>& log,
            double max_radius_m = kDefaultMaxRadiusM);

}  // namespace score

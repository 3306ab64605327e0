// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace score {

/// Whole hours since the dataset reference epoch (hour 0 of the year).
struct Timestamp {
  std::int64_t hours{0};

  /// Hour of day in [0, 23].
  int hour_of_day() const { return static_cast<int>(hours % 24); }

  auto operator<=>(const Timestamp&) const = default;
};

/// Normalized irradiance: 0 is no sun, 1 is full sun.
class Irradiance {
 public:
  constexpr Irradiance() = default;
  /// Throws std::out_of_range outside [0, 1] (NaN included).
  explicit Irradiance(double value);

  constexpr double value() const { return value_; }

  auto operator<=>(const Irradiance&) const = default;

 private:
  double value_{0.0};
};

struct GeoPoint {
  double lat{0.0};  // degrees
  double lon{0.0};  // degrees

  bool valid() const;
  auto operator<=>(const GeoPoint&) const = default;
};

inline constexpr double kEarthRadiusM = 6'371'000.0;

/// Haversine distance in meters on a sphere of radius kEarthRadiusM.
double great_circle_m(const GeoPoint& a, const GeoPoint& b);

using NodeId = int;

inline constexpr int kHoursPerDay = 24;

/// A crossroad. The offline profile holds forecast irradiance per hour of day.
struct RoadNode {
  NodeId id{0};
  GeoPoint position;
  std::array<Irradiance, kHoursPerDay> offline_profile{};

  Irradiance offline_at(Timestamp t) const {
    return offline_profile[static_cast<std::size_t>(t.hour_of_day())];
  }
  bool operator==(const RoadNode&) const = default;
};

/// Directed road segment. Two-way roads are stored as two edges.
struct RoadEdge {
  NodeId from{0};
  NodeId to{0};
  double length_m{0.0};

  bool operator==(const RoadEdge&) const = default;
};

struct RoadGraph {
  std::vector<RoadNode> nodes;  // nodes[i].id == i
  std::vector<RoadEdge> edges;

  std::size_t size() const { return nodes.size(); }
  bool contains(NodeId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < nodes.size();
  }
  bool operator==(const RoadGraph&) const = default;
};

struct CarParams {
  double motor_power_w{11'000.0};
  double panel_area_m2{2 * 0.726};
  double panel_efficiency{0.18};
  double full_sun_power_wm2{957.0};

  /// The prototype solar car: 11 kW motor, 2 x 0.726 m2 panels at 18%,
  /// 957 W/m2 incident at unity irradiance.
  static CarParams prototype() { return {}; }

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

/// One online reading as reported by a mobile or roadside sensor.
struct IrradianceSample {
  std::string station;
  GeoPoint position;
  Irradiance irradiance;
  Timestamp measured_at;

  bool operator==(const IrradianceSample&) const = default;
};

inline constexpr std::size_t kMaxStationLength = 16;

/// Non-empty, at most 16 characters, no whitespace or control characters.
bool valid_station(std::string_view station);

/// Input file rejected; `line()` is 1-based, 0 when no single line is at fault.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads the nodes CSV (`id,lat,lon,p0..p23`) and edges CSV
/// (`from,to,length_m`) and returns a graph satisfying every invariant.
RoadGraph load_graph(std::istream& nodes_csv, std::istream& edges_csv);
RoadGraph load_graph(const std::filesystem::path& nodes_csv,
                     const std::filesystem::path& edges_csv);

void write_nodes_csv(std::ostream& out, const RoadGraph& g);
void write_edges_csv(std::ostream& out, const RoadGraph& g);

/// One human-readable entry per broken invariant; empty means valid.
std::vector<std::string> validate_graph(const RoadGraph& g);

}  // namespace score

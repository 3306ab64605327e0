// SPDX-License-Identifier: Apache-2.0
#include "score/core_model.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include "score/text.hpp"

namespace score {

Irradiance::Irradiance(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::out_of_range("irradiance " + text::format_number(value) +
                            " outside [0,1]");
  }
}

bool GeoPoint::valid() const {
  return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
}

double great_circle_m(const GeoPoint& a, const GeoPoint& b) {
  constexpr double deg = std::numbers::pi / 180.0;
  const double phi1 = a.lat * deg;
  const double phi2 = b.lat * deg;
  const double dphi = (b.lat - a.lat) * deg;
  const double dlambda = (b.lon - a.lon) * deg;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  h = std::min(1.0, std::max(0.0, h));
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(h));
}

void CarParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(motor_power_w)) throw std::invalid_argument("motor_power_w must be > 0");
  if (!positive(panel_area_m2)) throw std::invalid_argument("panel_area_m2 must be > 0");
  if (!positive(panel_efficiency) || panel_efficiency > 1.0) {
    throw std::invalid_argument("panel_efficiency must be in (0,1]");
  }
  if (!positive(full_sun_power_wm2)) {
    throw std::invalid_argument("full_sun_power_wm2 must be > 0");
  }
}

bool valid_station(std::string_view station) {
  if (station.empty() || station.size() > kMaxStationLength) return false;
  for (unsigned char ch : station) {
    if (ch <= 0x20 || ch >= 0x7f) return false;
  }
  return true;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

namespace {

std::string nodes_header() {
  std::string h = "id,lat,lon";
  for (int i = 0; i < kHoursPerDay; ++i) h += ",p" + std::to_string(i);
  return h;
}

constexpr std::string_view kEdgesHeader = "from,to,length_m";

// Reads lines, stripping CR, skipping a trailing blank tail. Returns
// (1-based line number, content) pairs.
std::vector<std::pair<std::size_t, std::string>> read_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    lines.emplace_back(n, std::string(text::chomp_cr(line)));
  }
  while (!lines.empty() && text::trim(lines.back().second).empty()) lines.pop_back();
  return lines;
}

double field_double(std::string_view f, std::size_t line, const char* name) {
  auto v = text::parse_double(f);
  if (!v) throw ParseError(line, std::string("bad ") + name + " '" + std::string(f) + "'");
  return *v;
}

NodeId field_id(std::string_view f, std::size_t line, const char* name) {
  auto v = text::parse_int(f);
  if (!v || *v < 0 || *v > 1'000'000'000) {
    throw ParseError(line, std::string("bad ") + name + " '" + std::string(f) + "'");
  }
  return static_cast<NodeId>(*v);
}

}  // namespace

RoadGraph load_graph(std::istream& nodes_csv, std::istream& edges_csv) {
  RoadGraph g;

  auto node_lines = read_lines(nodes_csv);
  if (node_lines.empty() || node_lines.front().second != nodes_header()) {
    throw ParseError(1, "nodes header must be '" + nodes_header() + "'");
  }
  std::vector<std::pair<RoadNode, std::size_t>> parsed;
  std::set<NodeId> seen;
  for (std::size_t i = 1; i < node_lines.size(); ++i) {
    const auto& [ln, content] = node_lines[i];
    auto f = text::split(content, ',');
    if (f.size() != 3 + kHoursPerDay) {
      throw ParseError(ln, "expected " + std::to_string(3 + kHoursPerDay) +
                               " fields, got " + std::to_string(f.size()));
    }
    RoadNode node;
    node.id = field_id(f[0], ln, "id");
    node.position = {field_double(f[1], ln, "lat"), field_double(f[2], ln, "lon")};
    if (!node.position.valid()) throw ParseError(ln, "position out of range");
    for (int h = 0; h < kHoursPerDay; ++h) {
      double v = field_double(f[3 + h], ln, "profile value");
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ParseError(ln, "p" + std::to_string(h) + " outside [0,1]");
      }
      node.offline_profile[h] = Irradiance(v);
    }
    if (!seen.insert(node.id).second) {
      throw ParseError(ln, "duplicate node id " + std::to_string(node.id));
    }
    parsed.emplace_back(node, ln);
  }
  g.nodes.resize(parsed.size());
  for (auto& [node, ln] : parsed) {
    if (static_cast<std::size_t>(node.id) >= parsed.size()) {
      throw ParseError(ln, "node ids must be contiguous 0.." +
                               std::to_string(parsed.size() - 1));
    }
    g.nodes[node.id] = node;
  }

  auto edge_lines = read_lines(edges_csv);
  if (edge_lines.empty() || edge_lines.front().second != kEdgesHeader) {
    throw ParseError(1, "edges header must be '" + std::string(kEdgesHeader) + "'");
  }
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (std::size_t i = 1; i < edge_lines.size(); ++i) {
    const auto& [ln, content] = edge_lines[i];
    auto f = text::split(content, ',');
    if (f.size() != 3) {
      throw ParseError(ln, "expected 3 fields, got " + std::to_string(f.size()));
    }
    RoadEdge e{field_id(f[0], ln, "from"), field_id(f[1], ln, "to"),
               field_double(f[2], ln, "length_m")};
    if (!g.contains(e.from) || !g.contains(e.to)) {
      throw ParseError(ln, "edge references unknown node id");
    }
    if (e.from == e.to) throw ParseError(ln, "self-loop at node " + std::to_string(e.from));
    if (!(std::isfinite(e.length_m) && e.length_m > 0.0)) {
      throw ParseError(ln, "length_m must be positive and finite, got " + std::string(f[2]));
    }
    if (!pairs.emplace(e.from, e.to).second) {
      throw ParseError(ln, "duplicate edge " + std::to_string(e.from) + "->" +
                               std::to_string(e.to));
    }
    g.edges.push_back(e);
  }
  return g;
}

RoadGraph load_graph(const std::filesystem::path& nodes_csv,
                     const std::filesystem::path& edges_csv) {
  std::ifstream n(nodes_csv);
  if (!n) throw std::runtime_error("cannot open " + nodes_csv.string());
  std::ifstream e(edges_csv);
  if (!e) throw std::runtime_error("cannot open " + edges_csv.string());
  return load_graph(n, e);
}

void write_nodes_csv(std::ostream& out, const RoadGraph& g) {
  out << nodes_header() << '\n';
  for (const auto& n : g.nodes) {
    out << n.id << ',' << text::format_number(n.position.lat) << ','
        << text::format_number(n.position.lon);
    for (auto p : n.offline_profile) out << ',' << text::format_number(p.value());
    out << '\n';
  }
}

void write_edges_csv(std::ostream& out, const RoadGraph& g) {
  out << kEdgesHeader << '\n';
  for (const auto& e : g.edges) {
    out << e.from << ',' << e.to << ',' << text::format_number(e.length_m) << '\n';
  }
}

std::vector<std::string> validate_graph(const RoadGraph& g) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const auto& n = g.nodes[i];
    if (n.id != static_cast<NodeId>(i)) {
      v.push_back("node at index " + std::to_string(i) + " has id " + std::to_string(n.id));
    }
    if (!n.position.valid()) {
      v.push_back("node " + std::to_string(n.id) + " position out of range");
    }
  }
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const auto& e : g.edges) {
    const std::string name =
        "edge (" + std::to_string(e.from) + "," + std::to_string(e.to) + ")";
    if (!g.contains(e.from) || !g.contains(e.to)) {
      v.push_back(name + " references unknown node id");
    } else if (e.from == e.to) {
      v.push_back(name + " is a self-loop at node " + std::to_string(e.from));
    }
    if (!(std::isfinite(e.length_m) && e.length_m > 0.0)) {
      v.push_back(name + " has non-positive or non-finite length " +
                  text::format_number(e.length_m));
    }
    if (!pairs.emplace(e.from, e.to).second) v.push_back(name + " is duplicated");
  }
  return v;
}

}  // namespace score

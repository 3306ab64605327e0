// SPDX-License-Identifier: Apache-2.0
#include "score/routing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "score/text.hpp"

namespace score {

ConversionShare::ConversionShare(double c) : c_(c) {
  if (!(c >= 0.0 && c < 1.0)) {
    throw std::out_of_range("conversion share " + text::format_number(c) +
                            " outside [0,1)");
  }
}

ConversionShare conversion_share(const CarParams& car) {
  car.validate();
  const double c = car.panel_efficiency * car.full_sun_power_wm2 * car.panel_area_m2 /
                   car.motor_power_w;
  if (!(c < 1.0)) {
    throw std::domain_error("conversion share " + text::format_number(c) +
                            " >= 1: panels would out-produce the motor");
  }
  return ConversionShare(c);
}

Irradiance edge_irradiance(Irradiance from, Irradiance to) {
  return Irradiance((from.value() + to.value()) / 2.0);
}

double effective_length(double length_m, Irradiance segment, ConversionShare c) {
  return length_m * (1.0 - c.value() * segment.value());
}

WeightMatrix::WeightMatrix(std::size_t n)
    : n_(n), effective_(n * n, kUnreachable), physical_(n * n, kUnreachable) {
  for (std::size_t i = 0; i < n; ++i) {
    effective_[i * n + i] = 0.0;
    physical_[i * n + i] = 0.0;
  }
}

void WeightMatrix::set_edge(NodeId from, NodeId to, double effective_m, double physical_m) {
  if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= n_ ||
      static_cast<std::size_t>(to) >= n_) {
    throw std::out_of_range("edge endpoint outside matrix");
  }
  if (from == to) throw std::invalid_argument("self-loop");
  if (!(effective_m > 0.0) || !(physical_m > 0.0)) {
    throw std::invalid_argument("edge weights must be positive");
  }
  effective_[index(from, to)] = effective_m;
  physical_[index(from, to)] = physical_m;
}

std::string WeightMatrix::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) out += ',';
      out += text::format_number(effective_[i * n_ + j]);
    }
    out += '\n';
  }
  return out;
}

WeightMatrix build_weighted_matrix(const RoadGraph& graph, const FusedGrid& grid,
                                   ConversionShare c) {
  if (grid.nodes.size() != graph.size()) {
    throw std::invalid_argument("fused grid covers " + std::to_string(grid.nodes.size()) +
                                " nodes, graph has " + std::to_string(graph.size()));
  }
  WeightMatrix m(graph.size());
  for (const auto& e : graph.edges) {
    const auto seg = edge_irradiance(grid.nodes[e.from].r, grid.nodes[e.to].r);
    m.set_edge(e.from, e.to, effective_length(e.length_m, seg, c), e.length_m);
  }
  return m;
}

std::string Route::to_json() const {
  nlohmann::ordered_json j;
  j["nodes"] = nodes;
  j["effective_m"] = effective_m;
  j["physical_m"] = physical_m;
  return j.dump();
}

bool costs_tie(double a, double b) {
  if (a == b) return true;
  return std::abs(a - b) <= kCostTieTolerance * std::max(std::abs(a), std::abs(b));
}

namespace {

std::vector<NodeId> path_to(const std::vector<NodeId>& pred, NodeId v) {
  std::vector<NodeId> p;
  for (; v != -1; v = pred[v]) p.push_back(v);
  std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace

std::optional<Route> shortest_route(const WeightMatrix& m, NodeId src, NodeId dst) {
  const auto n = static_cast<NodeId>(m.size());
  if (src < 0 || src >= n || dst < 0 || dst >= n) {
    throw std::out_of_range("route endpoint outside graph");
  }

  std::vector<double> dist(n, WeightMatrix::kUnreachable);
  std::vector<NodeId> pred(n, -1);
  std::vector<bool> settled(n, false);
  dist[src] = 0.0;

  while (true) {
    NodeId u = -1;
    for (NodeId v = 0; v < n; ++v) {
      if (!settled[v] && dist[v] != WeightMatrix::kUnreachable && (u == -1 || dist[v] < dist[u])) {
        u = v;
      }
    }
    if (u == -1) break;
    settled[u] = true;
    if (u == dst) break;

    for (NodeId v = 0; v < n; ++v) {
      if (settled[v] || !m.has_edge(u, v)) continue;
      const double candidate = dist[u] + m.effective(u, v);
      if (dist[v] == WeightMatrix::kUnreachable) {
        dist[v] = candidate;
        pred[v] = u;
      } else if (costs_tie(candidate, dist[v])) {
        auto via_u = path_to(pred, u);
        via_u.push_back(v);
        if (via_u < path_to(pred, v)) {
          dist[v] = candidate;
          pred[v] = u;
        }
      } else if (candidate < dist[v]) {
        dist[v] = candidate;
        pred[v] = u;
      }
    }
  }

  if (!settled[dst]) return std::nullopt;

  Route r;
  r.nodes = path_to(pred, dst);
  for (std::size_t i = 1; i < r.nodes.size(); ++i) {
    r.effective_m += m.effective(r.nodes[i - 1], r.nodes[i]);
    r.physical_m += m.physical(r.nodes[i - 1], r.nodes[i]);
  }
  return r;
}

}  // namespace score

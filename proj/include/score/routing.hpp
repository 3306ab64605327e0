// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "score/core_model.hpp"
#include "score/fusion.hpp"

namespace score {

/// Fraction of propulsion energy recovered per meter under unity irradiance.
/// Kept strictly below 1 so effective lengths stay positive.
class ConversionShare {
 public:
  constexpr ConversionShare() = default;
  /// Throws std::out_of_range unless 0 <= c < 1.
  explicit ConversionShare(double c);
  constexpr double value() const { return c_; }

 private:
  double c_{0.0};
};

/// c = efficiency * full-sun power * panel area / motor power.
/// Throws std::domain_error when the result is >= 1.
ConversionShare conversion_share(const CarParams& car);

/// Segment irradiance: mean of the two endpoint values.
Irradiance edge_irradiance(Irradiance from, Irradiance to);

/// length_m * (1 - c * r_seg)
double effective_length(double length_m, Irradiance segment, ConversionShare c);

/// Dense n x n matrix of effective lengths plus the physical lengths they
/// came from. Absent edges hold kUnreachable in both.
class WeightMatrix {
 public:
  static constexpr double kUnreachable = std::numeric_limits<double>::infinity();

  explicit WeightMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  double effective(NodeId from, NodeId to) const { return effective_[index(from, to)]; }
  double physical(NodeId from, NodeId to) const { return physical_[index(from, to)]; }
  bool has_edge(NodeId from, NodeId to) const {
    return from != to && effective_[index(from, to)] != kUnreachable;
  }

  void set_edge(NodeId from, NodeId to, double effective_m, double physical_m);

  /// n rows of n comma-separated values, `inf` for absent edges, 0 on the
  /// diagonal.
  std::string to_csv() const;

 private:
  std::size_t index(NodeId from, NodeId to) const {
    return static_cast<std::size_t>(from) * n_ + static_cast<std::size_t>(to);
  }
  std::size_t n_;
  std::vector<double> effective_;
  std::vector<double> physical_;
};

/// Throws std::invalid_argument when the grid does not cover the graph.
WeightMatrix build_weighted_matrix(const RoadGraph& graph, const FusedGrid& grid,
                                   ConversionShare c);

struct Route {
  std::vector<NodeId> nodes;  // src .. dst
  double effective_m{0.0};
  double physical_m{0.0};

  /// {"nodes":[...],"effective_m":x,"physical_m":y}
  std::string to_json() const;
  bool operator==(const Route&) const = default;
};

/// Relative tolerance under which two path costs count as tied.
inline constexpr double kCostTieTolerance = 1e-9;

bool costs_tie(double a, double b);

/// Dijkstra over the dense matrix. Among tied minimum-cost paths the
/// lexicographically smallest node sequence is returned; the frontier pops
/// the lowest node id among equal keys. nullopt when dst is unreachable.
/// Throws std::out_of_range for invalid ids.
std::optional<Route> shortest_route(const WeightMatrix& m, NodeId src, NodeId dst);

}  // namespace score

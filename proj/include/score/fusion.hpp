// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "score/core_model.hpp"

namespace score {

// Fusion of online sensor readings with the offline (forecast) profile:
//
//   r = a * r_on + (1 - a) * r_off
//
// where the weight a in (0, 1] decays with the age dt = t_curr - t_meas of
// the reading. Two decay laws are supported:
//
//   gaussian:  a = exp(-dt^2 / D)          D = 100000 originally, 10 tuned
//   diurnal:   a = exp(-m^2 - d)           m = dt wrapped into [-11, 12]
//                                          d = floor(dt / 24)
//
// The diurnal law favours readings taken at the same hour on earlier days.

/// Throws std::invalid_argument for dt < 0 or D <= 0.
double weight_gaussian(std::int64_t dt_hours, double denominator);

/// dt mod 24 mapped into [-11, 12].
int wrap_mod24(std::int64_t dt_hours);

double weight_diurnal(std::int64_t dt_hours);

class FusionModel {
 public:
  enum class Kind { Gaussian, Diurnal };

  static FusionModel gaussian(double denominator);
  static FusionModel diurnal() { return FusionModel(Kind::Diurnal, 0.0); }

  /// Accepts `gaussian:<D>` or `diurnal`.
  static FusionModel parse(std::string_view spec);

  Kind kind() const { return kind_; }
  double denominator() const { return denominator_; }

  double weight(std::int64_t dt_hours) const;

  /// Round-trips through parse(), e.g. "gaussian:100000".
  std::string name() const;

  bool operator==(const FusionModel&) const = default;

 private:
  FusionModel(Kind k, double d) : kind_(k), denominator_(d) {}
  Kind kind_;
  double denominator_;
};

/// Convex combination; throws std::invalid_argument if a is outside [0, 1].
Irradiance fuse(Irradiance online, Irradiance offline, double a);

struct FusedNode {
  Irradiance r;
  double a_used{0.0};
  std::optional<std::int64_t> sample_age_h;  // none when no reading exists

  bool operator==(const FusedNode&) const = default;
};

struct FusedGrid {
  Timestamp as_of;
  std::vector<FusedNode> nodes;  // indexed by node id

  /// {"as_of":h,"nodes":[{"id":i,"r":x,"a":y,"age_h":z|null},...]}
  std::string to_json() const;
  /// Throws std::invalid_argument on schema violations.
  static FusedGrid from_json(std::string_view json);

  bool operator==(const FusedGrid&) const = default;
};

using LatestSamples = std::map<NodeId, IrradianceSample>;

/// Latest-wins order: greater measured_at, then lexicographically smaller
/// station. Returns true when `incoming` should replace `existing`.
bool supersedes(const IrradianceSample& incoming, const IrradianceSample& existing);

/// Keeps the winning sample per node under supersedes().
void merge_latest(LatestSamples& into, NodeId node, const IrradianceSample& sample);

/// Fuses every node at t_curr. Nodes without a reading get their offline
/// value with a = 0. Throws std::invalid_argument for readings newer than
/// t_curr or keyed by unknown node ids.
FusedGrid fuse_grid(const RoadGraph& graph, const LatestSamples& latest,
                    Timestamp t_curr, const FusionModel& model);

}  // namespace score

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "score/core_model.hpp"
#include "score/fusion.hpp"
#include "score/routing.hpp"

namespace score {

// ---------------------------------------------------------------------------
// Fusion error study
//
// A 72-hour series (three days) is given. The value at the target hour (day 3,
// 16:00 by default) is estimated from each earlier daylight hour in turn, as if
// that hour were the last reading collected for the location. The forecast
// r_off is drawn uniformly from (0,1) per trial; each row reports the mean
// |r_fused - r_true| per fusion model.
// ---------------------------------------------------------------------------

inline constexpr int kFig2SeriesHours = 72;
inline constexpr int kFig2DaylightHours = 31;
inline constexpr int kFig2DefaultTarget = 2 * 24 + 16;

struct Fig2Config {
  std::vector<double> series;  // 72 hourly values in [0,1]
  int target_index{kFig2DefaultTarget};
  int trials{100};
  std::uint64_t seed{2017};
  std::vector<FusionModel> models;

  /// Synthetic series, 100 trials, gaussian:100000, gaussian:10, diurnal.
  static Fig2Config defaults();
  /// Throws std::invalid_argument; requires exactly 31 non-zero hours at or
  /// before the target.
  void validate() const;
};

/// Three bell-shaped days, lit hours 7-17, 7-16 and 7-16; 31 non-zero
/// hours, the last one on day 3 being the 16:00 target.
std::vector<double> synthetic_fig2_series();

/// Reads `hour,irradiance` rows (hours 0..71 in order).
std::vector<double> load_hourly_series(std::istream& in);

/// Keys: series (path, optional), target, trials, seed, models.
Fig2Config load_fig2_config(const std::filesystem::path& path);

/// Forecast draw for trial `trial` of series hour `hour`: SplitMix64 output
/// at stream position ((hour << 32) | trial) + 1 from state `seed`, mapped to
/// the open interval (0,1) as ((z >> 11) + 0.5) * 2^-53. Independent of
/// evaluation order.
double forecast_draw(std::uint64_t seed, std::uint64_t hour, std::uint64_t trial);

struct Fig2Row {
  std::int64_t dt{0};  // target - hour
  int hour{0};
  double r_on{0.0};
  std::vector<double> model_error;  // parallel to Fig2Table::model_names
  double forecast_only_error{0.0};  // mean |r_off - r_true| on the same draws
};

struct Fig2Table {
  double r_true{0.0};
  std::vector<std::string> model_names;
  std::vector<Fig2Row> rows;  // ascending dt

  /// `dt,hour,r_on,<model>...,forecast_only`
  std::string to_csv() const;
  const Fig2Row* row_at(std::int64_t dt) const;
  std::size_t model_column(const std::string& name) const;
};

Fig2Table run_fig2(const Fig2Config& cfg);

// ---------------------------------------------------------------------------
// Route shift under growing conversion share
// ---------------------------------------------------------------------------

struct ScenarioConfig {
  std::filesystem::path nodes;
  std::filesystem::path edges;
  NodeId src{0};
  NodeId dst{0};
  std::vector<double> shares;
  // Fused grid source: `grid` is a JSON file or an http:// server base URL.
  // Without it the grid is fused locally from `samples` (optional report
  // file) at hour t with `model`.
  std::optional<std::string> grid;
  std::optional<std::filesystem::path> samples;
  Timestamp t{12};
  FusionModel model = FusionModel::diurnal();
  double max_radius_m{500.0};
};

/// Keys: nodes, edges, src, dst, shares, grid, samples, t, model, radius.
ScenarioConfig load_scenario_config(const std::filesystem::path& path);

/// Builds the fused grid the scenario asks for.
FusedGrid scenario_grid(const ScenarioConfig& cfg, const RoadGraph& graph);

struct ScenarioRow {
  double c{0.0};
  std::optional<Route> route;  // nullopt when dst is unreachable
  bool changed{false};         // differs from the c = 0 route
};

std::vector<ScenarioRow> run_route_scenario(const RoadGraph& graph, const FusedGrid& grid,
                                            NodeId src, NodeId dst,
                                            const std::vector<double>& shares);
std::vector<ScenarioRow> run_route_scenario(const ScenarioConfig& cfg);

/// `c,changed,effective_m,physical_m,route` with the route as space separated ids.
std::string scenario_csv(const std::vector<ScenarioRow>& rows);

/// Smallest share in [lo, hi] at which the route leaves the c = 0 baseline,
/// by bisection to `tol`. nullopt if it never changes in the interval.
std::optional<double> route_crossover_share(const RoadGraph& graph, const FusedGrid& grid,
                                            NodeId src, NodeId dst, double lo = 0.0,
                                            double hi = 0.999, double tol = 1e-12);

}  // namespace score

// SPDX-License-Identifier: Apache-2.0
#include "score/experiments.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <httplib.h>

#include "score/config.hpp"
#include "score/ingest.hpp"
#include "score/text.hpp"

namespace score {

std::vector<double> synthetic_fig2_series() {
  struct Day {
    int first_lit;
    int last_lit;
    double peak;
  };
  constexpr Day days[3] = {{7, 17, 0.82}, {7, 16, 0.74}, {7, 16, 0.88}};
  std::vector<double> s(kFig2SeriesHours, 0.0);
  for (int d = 0; d < 3; ++d) {
    const auto& day = days[d];
    const double span = day.last_lit - day.first_lit + 2;
    for (int h = day.first_lit; h <= day.last_lit; ++h) {
      const double v = day.peak * std::sin(std::numbers::pi * (h - day.first_lit + 1) / span);
      s[d * 24 + h] = std::round(v * 1000.0) / 1000.0;
    }
  }
  return s;
}

Fig2Config Fig2Config::defaults() {
  Fig2Config cfg;
  cfg.series = synthetic_fig2_series();
  cfg.models = {FusionModel::gaussian(100000.0), FusionModel::gaussian(10.0),
                FusionModel::diurnal()};
  return cfg;
}

void Fig2Config::validate() const {
  if (series.size() != kFig2SeriesHours) {
    throw std::invalid_argument("series must hold 72 hourly values, got " +
                                std::to_string(series.size()));
  }
  for (double v : series) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("series value outside [0,1]");
  }
  if (target_index < 0 || target_index >= kFig2SeriesHours) {
    throw std::invalid_argument("target hour outside the series");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (models.empty()) throw std::invalid_argument("at least one fusion model required");
  int lit = 0;
  for (int i = 0; i <= target_index; ++i) lit += series[i] > 0.0 ? 1 : 0;
  if (lit != kFig2DaylightHours) {
    throw std::invalid_argument("series has " + std::to_string(lit) +
                                " non-zero hours up to the target, expected 31");
  }
}

std::vector<double> load_hourly_series(std::istream& in) {
  std::vector<double> s;
  std::string line;
  std::size_t ln = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++ln;
    auto content = text::chomp_cr(line);
    if (text::trim(content).empty()) continue;
    if (!header) {
      if (content != "hour,irradiance") throw ParseError(ln, "header must be 'hour,irradiance'");
      header = true;
      continue;
    }
    auto f = text::split(content, ',');
    if (f.size() != 2) throw ParseError(ln, "expected 2 fields");
    auto h = text::parse_int(f[0]);
    auto v = text::parse_double(f[1]);
    if (!h || *h != static_cast<std::int64_t>(s.size())) {
      throw ParseError(ln, "hours must run 0,1,2,... in order");
    }
    if (!v || !(*v >= 0.0 && *v <= 1.0)) throw ParseError(ln, "irradiance must be in [0,1]");
    s.push_back(*v);
  }
  return s;
}

Fig2Config load_fig2_config(const std::filesystem::path& path) {
  auto kv = KeyValueConfig::load(path);
  Fig2Config cfg = Fig2Config::defaults();
  if (kv.has("series")) {
    std::ifstream in(kv.get_path("series"));
    if (!in) throw std::runtime_error("cannot open series " + kv.get_path("series").string());
    cfg.series = load_hourly_series(in);
  }
  cfg.target_index = static_cast<int>(kv.get_int("target", cfg.target_index));
  cfg.trials = static_cast<int>(kv.get_int("trials", cfg.trials));
  const auto seed = kv.get_int("seed", static_cast<std::int64_t>(cfg.seed));
  if (seed < 0) throw std::invalid_argument("seed must be >= 0");
  cfg.seed = static_cast<std::uint64_t>(seed);
  if (kv.has("models")) {
    cfg.models.clear();
    for (const auto& m : kv.get_list("models")) cfg.models.push_back(FusionModel::parse(m));
  }
  cfg.validate();
  return cfg;
}

double forecast_draw(std::uint64_t seed, std::uint64_t hour, std::uint64_t trial) {
  const std::uint64_t index = (hour << 32) | trial;
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
}

Fig2Table run_fig2(const Fig2Config& cfg) {
  cfg.validate();
  Fig2Table table;
  table.r_true = cfg.series[cfg.target_index];
  for (const auto& m : cfg.models) table.model_names.push_back(m.name());

  const Irradiance truth(table.r_true);
  for (int hour = cfg.target_index; hour >= 0; --hour) {
    if (!(cfg.series[hour] > 0.0)) continue;
    Fig2Row row;
    row.dt = cfg.target_index - hour;
    row.hour = hour;
    row.r_on = cfg.series[hour];
    const Irradiance online(row.r_on);

    std::vector<double> weights;
    for (const auto& m : cfg.models) weights.push_back(m.weight(row.dt));
    std::vector<double> sums(cfg.models.size(), 0.0);
    double forecast_sum = 0.0;
    for (int j = 0; j < cfg.trials; ++j) {
      const Irradiance offline(forecast_draw(cfg.seed, static_cast<std::uint64_t>(hour),
                                             static_cast<std::uint64_t>(j)));
      for (std::size_t k = 0; k < weights.size(); ++k) {
        sums[k] += std::abs(fuse(online, offline, weights[k]).value() - truth.value());
      }
      forecast_sum += std::abs(offline.value() - truth.value());
    }
    for (double s : sums) row.model_error.push_back(s / cfg.trials);
    row.forecast_only_error = forecast_sum / cfg.trials;
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string Fig2Table::to_csv() const {
  std::string out = "dt,hour,r_on";
  for (const auto& n : model_names) out += ',' + n;
  out += ",forecast_only\n";
  for (const auto& r : rows) {
    out += std::to_string(r.dt) + ',' + std::to_string(r.hour) + ',' + text::format_number(r.r_on);
    for (double e : r.model_error) out += ',' + text::format_number(e);
    out += ',' + text::format_number(r.forecast_only_error) + '\n';
  }
  return out;
}

const Fig2Row* Fig2Table::row_at(std::int64_t dt) const {
  for (const auto& r : rows) {
    if (r.dt == dt) return &r;
  }
  return nullptr;
}

std::size_t Fig2Table::model_column(const std::string& name) const {
  for (std::size_t i = 0; i < model_names.size(); ++i) {
    if (model_names[i] == name) return i;
  }
  throw std::out_of_range("no model column '" + name + "'");
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  auto kv = KeyValueConfig::load(path);
  ScenarioConfig cfg;
  cfg.nodes = kv.get_path("nodes");
  cfg.edges = kv.get_path("edges");
  cfg.src = static_cast<NodeId>(kv.get_int("src"));
  cfg.dst = static_cast<NodeId>(kv.get_int("dst"));
  cfg.shares = kv.get_number_list("shares");
  for (double c : cfg.shares) static_cast<void>(ConversionShare{c});
  if (kv.has("grid")) {
    auto g = kv.get_string("grid");
    cfg.grid = g.starts_with("http://") ? g : kv.get_path("grid").string();
  }
  if (kv.has("samples")) cfg.samples = kv.get_path("samples");
  cfg.t.hours = kv.get_int("t", cfg.t.hours);
  if (cfg.t.hours < 0) throw std::invalid_argument("t must be >= 0");
  if (kv.has("model")) cfg.model = FusionModel::parse(kv.get_string("model"));
  if (kv.has("radius")) {
    auto r = text::parse_double(kv.get_string("radius"));
    if (!r || !(*r >= 0.0)) throw std::invalid_argument("radius must be >= 0");
    cfg.max_radius_m = *r;
  }
  return cfg;
}

FusedGrid scenario_grid(const ScenarioConfig& cfg, const RoadGraph& graph) {
  FusedGrid grid;
  if (cfg.grid && cfg.grid->starts_with("http://")) {
    httplib::Client client(*cfg.grid);
    auto res = client.Get("/grid?t=" + std::to_string(cfg.t.hours));
    if (!res) throw std::runtime_error("cannot reach " + *cfg.grid);
    if (res->status != 200) {
      throw std::runtime_error("server answered " + std::to_string(res->status) + ": " +
                               res->body);
    }
    grid = FusedGrid::from_json(res->body);
  } else if (cfg.grid) {
    std::ifstream in(*cfg.grid);
    if (!in) throw std::runtime_error("cannot open grid " + *cfg.grid);
    std::stringstream ss;
    ss << in.rdbuf();
    grid = FusedGrid::from_json(ss.str());
  } else {
    SampleStore store;
    if (cfg.samples) {
      std::ifstream in(*cfg.samples);
      if (!in) throw std::runtime_error("cannot open samples " + cfg.samples->string());
      std::stringstream ss;
      ss << in.rdbuf();
      auto summary = ingest_report(store, graph, ss.str(), cfg.max_radius_m);
      if (summary.rejected) {
        throw std::invalid_argument("samples file: " + summary.rejections.front().error);
      }
    }
    grid = fuse_grid(graph, store.snapshot(), cfg.t, cfg.model);
  }
  if (grid.nodes.size() != graph.size()) {
    throw std::invalid_argument("fused grid does not match the graph");
  }
  return grid;
}

std::vector<ScenarioRow> run_route_scenario(const RoadGraph& graph, const FusedGrid& grid,
                                            NodeId src, NodeId dst,
                                            const std::vector<double>& shares) {
  const auto baseline =
      shortest_route(build_weighted_matrix(graph, grid, ConversionShare(0.0)), src, dst);
  std::vector<ScenarioRow> rows;
  for (double c : shares) {
    ScenarioRow row;
    row.c = c;
    row.route = shortest_route(build_weighted_matrix(graph, grid, ConversionShare(c)), src, dst);
    if (row.route.has_value() != baseline.has_value()) {
      row.changed = true;
    } else if (row.route) {
      row.changed = row.route->nodes != baseline->nodes;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ScenarioRow> run_route_scenario(const ScenarioConfig& cfg) {
  auto graph = load_graph(cfg.nodes, cfg.edges);
  if (!graph.contains(cfg.src) || !graph.contains(cfg.dst)) {
    throw std::invalid_argument("src/dst outside the graph");
  }
  return run_route_scenario(graph, scenario_grid(cfg, graph), cfg.src, cfg.dst, cfg.shares);
}

std::string scenario_csv(const std::vector<ScenarioRow>& rows) {
  std::string out = "c,changed,effective_m,physical_m,route\n";
  for (const auto& r : rows) {
    out += text::format_number(r.c) + ',' + (r.changed ? "1" : "0") + ',';
    if (!r.route) {
      out += "inf,inf,unreachable\n";
      continue;
    }
    out += text::format_number(r.route->effective_m) + ',' +
           text::format_number(r.route->physical_m) + ',';
    for (std::size_t i = 0; i < r.route->nodes.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(r.route->nodes[i]);
    }
    out += '\n';
  }
  return out;
}

std::optional<double> route_crossover_share(const RoadGraph& graph, const FusedGrid& grid,
                                            NodeId src, NodeId dst, double lo, double hi,
                                            double tol) {
  auto changed_at = [&](double c) {
    return run_route_scenario(graph, grid, src, dst, {c}).front().changed;
  };
  if (changed_at(lo)) return lo;
  if (!changed_at(hi)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = lo + (hi - lo) / 2.0;
    (changed_at(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace score

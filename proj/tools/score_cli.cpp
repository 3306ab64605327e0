// SPDX-License-Identifier: Apache-2.0
//
// score: command-line front end.
//
//   score ingest <file>                      parse a report file into the store
//   score fuse --t <h> --model <m>           fused grid JSON
//   score route --src <id> --dst <id> --c <share>
//   score park --target-lat <deg> --target-lon <deg> [--b 1] [--k 200]
//   score fig2 [--config <file>]             fusion error table (CSV)
//   score scenario --config <file>           route shift across shares (CSV)
//   score serve --port <p>                   HTTP service
//
// Graph, sample and spot files default to the bundled data directory
// (override with SCORE_DATA_DIR or the per-command flags).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "score/core_model.hpp"
#include "score/experiments.hpp"
#include "score/fusion.hpp"
#include "score/ingest.hpp"
#include "score/parking.hpp"
#include "score/routing.hpp"
#include "score/server.hpp"

#ifndef SCORE_DEFAULT_DATA_DIR
#define SCORE_DEFAULT_DATA_DIR "data"
#endif

namespace {

using namespace score;

std::string data_dir() {
  if (const char* env = std::getenv("SCORE_DATA_DIR")) return env;
  return SCORE_DEFAULT_DATA_DIR;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GraphFiles {
  std::string nodes = data_dir() + "/nodes.csv";
  std::string edges = data_dir() + "/edges.csv";
  std::string samples = data_dir() + "/samples.txt";
  double radius = kDefaultMaxRadiusM;

  void add_to(CLI::App* cmd, bool with_samples = true) {
    cmd->add_option("--nodes", nodes, "Nodes CSV")->capture_default_str();
    cmd->add_option("--edges", edges, "Edges CSV")->capture_default_str();
    if (with_samples) {
      cmd->add_option("--samples", samples, "Report lines file (empty for none)")
          ->capture_default_str();
      cmd->add_option("--radius", radius, "Max sample-to-node distance in meters")
          ->capture_default_str();
    }
  }

  RoadGraph graph() const { return load_graph(nodes, edges); }

  // Fills `store` from the samples file; any rejected line is an error.
  void load_samples(SampleStore& store, const RoadGraph& g) const {
    if (samples.empty()) return;
    auto summary = ingest_report(store, g, read_file(samples), radius);
    if (summary.rejected) {
      const auto& r = summary.rejections.front();
      throw std::runtime_error(samples + ": line " + std::to_string(r.line) + ": " + r.error);
    }
  }

  FusedGrid grid(const RoadGraph& g, std::int64_t t, const std::string& model) const {
    SampleStore store;
    load_samples(store, g);
    return fuse_grid(g, store.snapshot(), Timestamp{t}, FusionModel::parse(model));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solar-aware routing, fusion and parking tools"};
  app.require_subcommand(1);

  // ingest
  GraphFiles ingest_files;
  std::string ingest_input;
  std::string ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Parse report lines and keep the latest per node");
  ingest->add_option("file", ingest_input, "Report lines file")->required();
  ingest->add_option("--out", ingest_out, "Write the latest sample per node as report lines");
  ingest_files.add_to(ingest, false);
  ingest->add_option("--radius", ingest_files.radius, "Max sample-to-node distance in meters")
      ->capture_default_str();

  // fuse
  GraphFiles fuse_files;
  std::int64_t fuse_t = 0;
  std::string fuse_model = "diurnal";
  auto* fuse_cmd = app.add_subcommand("fuse", "Fused irradiance grid as JSON");
  fuse_cmd->add_option("--t", fuse_t, "Current hour")->required()->check(CLI::NonNegativeNumber);
  fuse_cmd->add_option("--model", fuse_model, "gaussian:<D> or diurnal")->capture_default_str();
  fuse_files.add_to(fuse_cmd);

  // route
  GraphFiles route_files;
  int route_src = 0;
  int route_dst = 0;
  double route_c = 0.0;
  std::int64_t route_t = 12;
  std::string route_model = "diurnal";
  bool route_car = false;
  auto* route = app.add_subcommand("route", "Minimum effective-length route as JSON");
  route->add_option("--src", route_src, "Source node")->required();
  route->add_option("--dst", route_dst, "Destination node")->required();
  auto* c_opt = route->add_option("--c", route_c, "Conversion share in [0,1)");
  route->add_flag("--car", route_car, "Use the prototype car's conversion share")
      ->excludes(c_opt);
  route->add_option("--t", route_t, "Current hour")->capture_default_str();
  route->add_option("--model", route_model, "gaussian:<D> or diurnal")->capture_default_str();
  route_files.add_to(route);

  // park
  std::string spots_file = data_dir() + "/spots.csv";
  double target_lat = 0.0;
  double target_lon = 0.0;
  ParkingParams park_params;
  auto* park = app.add_subcommand("park", "Rank parking spots by sun and walking distance");
  park->add_option("--target-lat", target_lat, "Target latitude")->required();
  park->add_option("--target-lon", target_lon, "Target longitude")->required();
  park->add_option("--b", park_params.b, "Distance exponent")->capture_default_str();
  park->add_option("--k", park_params.k, "Length offset in meters")->capture_default_str();
  park->add_option("--spots", spots_file, "Spots CSV")->capture_default_str();

  // fig2
  std::string fig2_config;
  auto* fig2 = app.add_subcommand("fig2", "Fusion model error by age of the last reading");
  fig2->add_option("--config", fig2_config, "Key-value config file");

  // scenario
  std::string scenario_config;
  auto* scenario = app.add_subcommand("scenario", "Route changes across conversion shares");
  scenario->add_option("--config", scenario_config, "Key-value config file")->required();

  // serve
  GraphFiles serve_files;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string serve_model = "diurnal";
  auto* serve_cmd = app.add_subcommand("serve", "HTTP service for grids, matrices and reports");
  serve_cmd->add_option("--port", port, "TCP port")->capture_default_str();
  serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--model", serve_model, "gaussian:<D> or diurnal")->capture_default_str();
  serve_files.add_to(serve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*ingest) {
      auto g = ingest_files.graph();
      SampleStore store;
      auto summary = ingest_report(store, g, read_file(ingest_input), ingest_files.radius);
      std::cout << summary.to_json() << '\n';
      if (!ingest_out.empty()) {
        std::ofstream out(ingest_out);
        if (!out) throw std::runtime_error("cannot write " + ingest_out);
        for (const auto& [node, s] : store.snapshot()) out << format_packet(s) << '\n';
      }
      return summary.rejected ? 1 : 0;
    }
    if (*fuse_cmd) {
      auto g = fuse_files.graph();
      std::cout << fuse_files.grid(g, fuse_t, fuse_model).to_json() << '\n';
      return 0;
    }
    if (*route) {
      auto g = route_files.graph();
      if (!g.contains(route_src) || !g.contains(route_dst)) {
        throw std::runtime_error("--src/--dst must be node ids in 0.." +
                                 std::to_string(g.size() - 1));
      }
      const auto c = route_car ? conversion_share(CarParams::prototype())
                               : ConversionShare(route_c);
      auto grid = route_files.grid(g, route_t, route_model);
      auto r = shortest_route(build_weighted_matrix(g, grid, c), route_src, route_dst);
      if (!r) {
        std::cerr << "no route from " << route_src << " to " << route_dst << '\n';
        return 1;
      }
      std::cout << r->to_json() << '\n';
      return 0;
    }
    if (*park) {
      std::ifstream in(spots_file);
      if (!in) throw std::runtime_error("cannot open " + spots_file);
      auto spots = load_spots(in);
      const GeoPoint target{target_lat, target_lon};
      if (!target.valid()) throw std::runtime_error("target position out of range");
      std::cout << ranking_csv(select_parking(spots, target, park_params));
      return 0;
    }
    if (*fig2) {
      auto cfg = fig2_config.empty() ? Fig2Config::defaults() : load_fig2_config(fig2_config);
      std::cout << run_fig2(cfg).to_csv();
      return 0;
    }
    if (*scenario) {
      std::cout << scenario_csv(run_route_scenario(load_scenario_config(scenario_config)));
      return 0;
    }
    if (*serve_cmd) {
      auto g = serve_files.graph();
      ServiceConfig sc;
      sc.model = FusionModel::parse(serve_model);
      sc.max_radius_m = serve_files.radius;
      ScoreService service(std::move(g), sc);
      serve_files.load_samples(service.store(), service.graph());
      std::cerr << "listening on " << host << ':' << port << '\n';
      serve(service, host, port);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>

#include "score/core_model.hpp"
#include "score/fusion.hpp"
#include "score/ingest.hpp"
#include "score/routing.hpp"

namespace httplib {
class Server;
}

namespace score {

struct ServiceConfig {
  FusionModel model = FusionModel::diurnal();
  ConversionShare default_share = conversion_share(CarParams::prototype());
  double max_radius_m = kDefaultMaxRadiusM;
};

struct HttpReply {
  int status{200};
  std::string body;
  std::string content_type{"text/plain"};
};

using QueryParams = std::map<std::string, std::string>;

/// HTTP front end over a sample store and a road graph.
///
///   GET  /health                 -> "ok"
///   GET  /grid?t=<hour>          -> fused grid JSON
///   GET  /matrix?t=<hour>&c=<c>  -> weight matrix CSV (c defaults to the car's share)
///   POST /report                 -> report summary JSON; 422 if any line is rejected
///
/// Malformed queries get 400. Grid and matrix responses are computed from a
/// single store snapshot, so a frozen store gives byte-identical bodies.
class ScoreService {
 public:
  ScoreService(RoadGraph graph, ServiceConfig config);

  SampleStore& store() { return store_; }
  const RoadGraph& graph() const { return graph_; }

  HttpReply health() const;
  HttpReply grid(const QueryParams& q) const;
  HttpReply matrix(const QueryParams& q) const;
  HttpReply report(const std::string& body);

  /// Registers every endpoint on `server`.
  void bind(httplib::Server& server);

 private:
  RoadGraph graph_;
  ServiceConfig config_;
  SampleStore store_;
};

/// Blocks serving on host:port until the process is stopped.
void serve(ScoreService& service, const std::string& host, int port);

}  // namespace score

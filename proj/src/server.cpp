// SPDX-License-Identifier: Apache-2.0
#include "score/server.hpp"

#include <stdexcept>

#include <httplib.h>

#include "score/text.hpp"

namespace score {

namespace {

HttpReply bad_request(const std::string& why) { return {400, why + "\n", "text/plain"}; }

std::optional<Timestamp> query_time(const QueryParams& q) {
  auto it = q.find("t");
  if (it == q.end()) return std::nullopt;
  auto v = text::parse_int(it->second);
  if (!v || *v < 0) return std::nullopt;
  return Timestamp{*v};
}

QueryParams to_params(const httplib::Request& req) {
  QueryParams q;
  for (const auto& [k, v] : req.params) q.emplace(k, v);
  return q;
}

void reply(httplib::Response& res, const HttpReply& r) {
  res.status = r.status;
  res.set_content(r.body, r.content_type);
}

}  // namespace

ScoreService::ScoreService(RoadGraph graph, ServiceConfig config)
    : graph_(std::move(graph)), config_(config) {
  auto violations = validate_graph(graph_);
  if (!violations.empty()) throw std::invalid_argument("invalid graph: " + violations.front());
}

HttpReply ScoreService::health() const { return {200, "ok\n", "text/plain"}; }

HttpReply ScoreService::grid(const QueryParams& q) const {
  auto t = query_time(q);
  if (!t) return bad_request("query parameter t must be a non-negative integer hour");
  try {
    auto g = fuse_grid(graph_, store_.snapshot(), *t, config_.model);
    return {200, g.to_json(), "application/json"};
  } catch (const std::invalid_argument& e) {
    return bad_request(e.what());
  }
}

HttpReply ScoreService::matrix(const QueryParams& q) const {
  auto t = query_time(q);
  if (!t) return bad_request("query parameter t must be a non-negative integer hour");
  ConversionShare c = config_.default_share;
  if (auto it = q.find("c"); it != q.end()) {
    auto v = text::parse_double(it->second);
    if (!v || !(*v >= 0.0 && *v < 1.0)) return bad_request("query parameter c must be in [0,1)");
    c = ConversionShare(*v);
  }
  try {
    auto g = fuse_grid(graph_, store_.snapshot(), *t, config_.model);
    return {200, build_weighted_matrix(graph_, g, c).to_csv(), "text/csv"};
  } catch (const std::invalid_argument& e) {
    return bad_request(e.what());
  }
}

HttpReply ScoreService::report(const std::string& body) {
  auto summary = ingest_report(store_, graph_, body, config_.max_radius_m);
  return {summary.rejected ? 422 : 200, summary.to_json(), "application/json"};
}

void ScoreService::bind(httplib::Server& server) {
  server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, health());
  });
  server.Get("/grid", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, grid(to_params(req)));
  });
  server.Get("/matrix", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, matrix(to_params(req)));
  });
  server.Post("/report", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, report(req.body));
  });
}

void serve(ScoreService& service, const std::string& host, int port) {
  httplib::Server server;
  service.bind(server);
  if (!server.listen(host, port)) {
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  }
}

}  // namespace score

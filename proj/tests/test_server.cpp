// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <thread>

#include <httplib.h>

#include "score/server.hpp"
#include "test_util.hpp"

using namespace score;

namespace {

void load_samples(ScoreService& svc) {
  svc.report(test::slurp(test::data_path("samples.txt")));
}

// Runs a real HTTP server on an ephemeral port for the lifetime of the object.
class LiveServer {
 public:
  explicit LiveServer(ScoreService& svc) {
    svc.bind(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LiveServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

 private:
  httplib::Server server_;
  int port_{0};
  std::thread thread_;
};

}  // namespace

TEST_CASE("handlers") {
  ScoreService svc(test::city(), ServiceConfig{});
  load_samples(svc);
  CHECK(svc.health().body == "ok\n");

  SUBCASE("grid") {
    auto r = svc.grid({{"t", "12"}});
    CHECK(r.status == 200);
    CHECK(r.content_type == "application/json");
    auto g = FusedGrid::from_json(r.body);
    CHECK(g.nodes.size() == 50);
    CHECK(svc.grid({{"t", "12"}}).body == r.body);
  }
  SUBCASE("matrix with c = 0 is the physical length matrix") {
    auto r = svc.matrix({{"t", "12"}, {"c", "0"}});
    CHECK(r.status == 200);
    WeightMatrix physical(svc.graph().size());
    for (const auto& e : svc.graph().edges) physical.set_edge(e.from, e.to, e.length_m, e.length_m);
    CHECK(r.body == physical.to_csv());
  }
  SUBCASE("bad queries") {
    CHECK(svc.grid({}).status == 400);
    CHECK(svc.grid({{"t", "-1"}}).status == 400);
    CHECK(svc.grid({{"t", "abc"}}).status == 400);
    CHECK(svc.matrix({{"t", "12"}, {"c", "1"}}).status == 400);
    CHECK(svc.matrix({{"t", "12"}, {"c", "x"}}).status == 400);
    // Older than the newest stored reading.
    CHECK(svc.grid({{"t", "2"}}).status == 400);
  }
  SUBCASE("report summary") {
    auto r = svc.report("SCORE1 E74ABC 43.845 18.37 0.5 11\nSCORE1 X 0 0 1.5 10\n");
    CHECK(r.status == 422);
    CHECK(r.body.find(R"("accepted":1,"rejected":1)") != std::string::npos);
    CHECK(r.body.find(R"("line":2,"field":"irradiance")") != std::string::npos);
    CHECK(svc.report("SCORE1 E74ABC 43.845 18.37 0.5 11\n").status == 200);
  }
}

TEST_CASE("served matrix equals the offline pipeline") {
  ScoreService svc(test::city(), ServiceConfig{});
  load_samples(svc);
  const auto graph = test::city();
  SampleStore offline;
  ingest_report(offline, graph, test::slurp(test::data_path("samples.txt")));
  for (std::int64_t t : {10, 12, 35}) {
    auto grid = fuse_grid(graph, offline.snapshot(), Timestamp{t}, FusionModel::diurnal());
    const auto c = conversion_share(CarParams::prototype());
    CHECK(svc.matrix({{"t", std::to_string(t)}}).body ==
          build_weighted_matrix(graph, grid, c).to_csv());
    CHECK(svc.matrix({{"t", std::to_string(t)}, {"c", "0.25"}}).body ==
          build_weighted_matrix(graph, grid, ConversionShare(0.25)).to_csv());
    CHECK(svc.grid({{"t", std::to_string(t)}}).body == grid.to_json());
  }
}

TEST_CASE("over HTTP") {
  ScoreService svc(test::city(), ServiceConfig{});
  load_samples(svc);
  LiveServer live(svc);
  auto cli = live.client();

  auto health = cli.Get("/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(health->body == "ok\n");

  auto g1 = cli.Get("/grid?t=12");
  auto g2 = cli.Get("/grid?t=12");
  REQUIRE(g1);
  REQUIRE(g2);
  CHECK(g1->status == 200);
  CHECK(g1->body == g2->body);
  CHECK(g1->body == svc.grid({{"t", "12"}}).body);

  auto m = cli.Get("/matrix?t=12&c=0");
  REQUIRE(m);
  CHECK(m->status == 200);
  CHECK(m->get_header_value("Content-Type") == "text/csv");

  auto bad = cli.Get("/matrix?t=zz");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  auto post = cli.Post("/report", "SCORE1 E74ABC 43.845 18.37 0.5 11\nSCORE1 X 0 0\n", "text/plain");
  REQUIRE(post);
  CHECK(post->status == 422);
  CHECK(post->body.find(R"("line":2,"field":"field_count")") != std::string::npos);

  auto g3 = cli.Get("/grid?t=12");
  REQUIRE(g3);
  CHECK(g3->body != g1->body);
}

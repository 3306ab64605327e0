// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "score/experiments.hpp"
#include "score/fusion.hpp"
#include "score/ingest.hpp"
#include "test_util.hpp"

using namespace score;

namespace {

struct RunResult {
  int status;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(SCORE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (auto n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int raw = pclose(p);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST_CASE("route to self") {
  auto r = run("route --src 0 --dst 0 --c 0");
  CHECK(r.status == 0);
  CHECK(r.out == "{\"nodes\":[0],\"effective_m\":0.0,\"physical_m\":0.0}\n");
}

TEST_CASE("fuse matches the library") {
  auto r = run("fuse --t 10 --model gaussian:10");
  REQUIRE(r.status == 0);
  auto g = test::city();
  SampleStore store;
  ingest_report(store, g, test::slurp(test::data_path("samples.txt")));
  auto grid = fuse_grid(g, store.snapshot(), Timestamp{10}, FusionModel::gaussian(10.0));
  CHECK(r.out == grid.to_json() + "\n");
}

TEST_CASE("fig2 is reproducible") {
  const std::string args = "fig2 --config " + test::data_path("fig2.conf");
  auto a = run(args);
  auto b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == run_fig2(Fig2Config::defaults()).to_csv());
}

TEST_CASE("scenario and park") {
  auto s = run("scenario --config " + test::data_path("fig3.conf"));
  CHECK(s.status == 0);
  CHECK(s.out.find("0.25,1,900,1200,0 3 4\n") != std::string::npos);

  auto p = run("park --target-lat 43.845 --target-lon 18.37");
  CHECK(p.status == 0);
  CHECK(p.out.rfind("id,d_m,score,rank\n", 0) == 0);
  CHECK(test::lines_of(p.out).size() == 7);
}

TEST_CASE("ingest summary") {
  auto r = run("ingest " + test::data_path("samples.txt"));
  CHECK(r.status == 0);
  CHECK(r.out.find("\"accepted\":24") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("route --src 0").status == 2);
  CHECK(run("route --src 0 --dst 1 --bogus").status == 2);
  CHECK(run("route --src 0 --dst 1 --c 0.1 --car").status == 2);
  CHECK(run("route --src 0 --dst 999 --c 0").status == 1);
  CHECK(run("route --src 0 --dst 1 --c 1.5").status == 1);
}

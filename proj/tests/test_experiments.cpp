// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "score/config.hpp"
#include "score/experiments.hpp"
#include "test_util.hpp"

using namespace score;

namespace {

FusedGrid offline_noon(const RoadGraph& g) {
  return fuse_grid(g, {}, Timestamp{12}, FusionModel::diurnal());
}

Fig2Config dip_config() {
  auto cfg = Fig2Config::defaults();
  std::ifstream in(test::data_path("fig2_dip_series.csv"));
  cfg.series = load_hourly_series(in);
  return cfg;
}

}  // namespace

TEST_CASE("synthetic series") {
  auto s = synthetic_fig2_series();
  REQUIRE(s.size() == kFig2SeriesHours);
  int lit = 0;
  for (double v : s) lit += v > 0.0 ? 1 : 0;
  CHECK(lit == kFig2DaylightHours);
  CHECK(s[kFig2DefaultTarget] == 0.248);
  for (int h = kFig2DefaultTarget + 1; h < kFig2SeriesHours; ++h) CHECK(s[h] == 0.0);

  std::ifstream in(test::data_path("fig2_series.csv"));
  CHECK(load_hourly_series(in) == s);
}

TEST_CASE("forecast_draw") {
  for (std::uint64_t h = 0; h < 72; ++h) {
    for (std::uint64_t t = 0; t < 50; ++t) {
      const double x = forecast_draw(2017, h, t);
      CHECK(x > 0.0);
      CHECK(x < 1.0);
    }
  }
  CHECK(forecast_draw(2017, 3, 4) == forecast_draw(2017, 3, 4));
  CHECK(forecast_draw(2017, 3, 4) != forecast_draw(2017, 4, 3));
  CHECK(forecast_draw(2017, 3, 4) != forecast_draw(2018, 3, 4));
}

TEST_CASE("fig2 table structure") {
  const auto cfg = Fig2Config::defaults();
  const auto table = run_fig2(cfg);
  CHECK(table.r_true == 0.248);
  // One row per daylight hour at or before the target.
  REQUIRE(table.rows.size() == static_cast<std::size_t>(kFig2DaylightHours));
  CHECK(table.model_names ==
        std::vector<std::string>{"gaussian:100000", "gaussian:10", "diurnal"});

  const auto* now = table.row_at(0);
  REQUIRE(now);
  for (double e : now->model_error) CHECK(e == 0.0);
  CHECK(now->forecast_only_error > 0.0);

  const auto gauss_far = table.model_column("gaussian:100000");
  const auto gauss_near = table.model_column("gaussian:10");
  CHECK_THROWS_AS(table.model_column("nope"), std::out_of_range);

  for (const auto& row : table.rows) {
    // Fused values lie between r_on and r_off, so the error moves at most 1 - a.
    const double a = weight_gaussian(static_cast<double>(row.dt), 100000.0);
    CHECK(std::fabs(row.model_error[gauss_far] - std::fabs(row.r_on - table.r_true)) <= 1.0 - a + 1e-12);
    if (row.dt >= 8) {
      CHECK(std::fabs(row.model_error[gauss_near] - row.forecast_only_error) <= 0.02);
    }
  }
  CHECK(weight_gaussian(31.0, 100000.0) >= std::exp(-961.0 / 1e5) - 1e-15);
}

TEST_CASE("diurnal model dips at one day old on the dip fixture") {
  const auto cfg = dip_config();
  CHECK_NOTHROW(cfg.validate());
  const auto table = run_fig2(cfg);
  CHECK(table.r_true == 0.5);
  const auto col = table.model_column("diurnal");
  const double at24 = table.row_at(24)->model_error[col];
  const double at20 = table.row_at(20)->model_error[col];
  CHECK(table.row_at(24)->r_on == 0.52);
  CHECK(table.row_at(20)->r_on == 0.06);
  CHECK(at24 < at20);
}

TEST_CASE("fig2 determinism and config") {
  const auto a = run_fig2(Fig2Config::defaults()).to_csv();
  const auto b = run_fig2(Fig2Config::defaults()).to_csv();
  CHECK(a == b);
  CHECK(a.rfind("dt,hour,r_on,gaussian:100000,gaussian:10,diurnal,forecast_only\n0,64,0.248,0,0,0,", 0) == 0);

  const auto loaded = load_fig2_config(test::data_path("fig2.conf"));
  CHECK(run_fig2(loaded).to_csv() == a);

  auto other_seed = Fig2Config::defaults();
  other_seed.seed = 7;
  CHECK(run_fig2(other_seed).to_csv() != a);

  auto short_day = Fig2Config::defaults();
  short_day.series[10] = 0.0;
  CHECK_THROWS_AS(short_day.validate(), std::invalid_argument);
  CHECK_THROWS_AS(run_fig2(short_day), std::invalid_argument);

  auto early = Fig2Config::defaults();
  early.target_index = 40;
  CHECK_THROWS_AS(early.validate(), std::invalid_argument);

  std::istringstream gap("hour,irradiance\n0,0\n2,0\n");
  CHECK_THROWS_AS(load_hourly_series(gap), ParseError);
}

TEST_CASE("route scenario with 1200 m sunny detour") {
  const auto g = test::fig3();
  const auto grid = offline_noon(g);
  const auto rows = run_route_scenario(g, grid, 0, 4, {0.0, 0.0227, 0.10, 0.15, 0.25});
  REQUIRE(rows.size() == 5);
  const std::vector<NodeId> shady{0, 1, 2, 4};
  const std::vector<NodeId> sunny{0, 3, 4};
  for (int i = 0; i < 4; ++i) {
    CHECK(rows[i].route->nodes == shady);
    CHECK_FALSE(rows[i].changed);
  }
  CHECK(rows[4].route->nodes == sunny);
  CHECK(rows[4].changed);
  CHECK(rows[4].route->effective_m == doctest::Approx(900.0).epsilon(1e-12));
  CHECK(rows[1].route->effective_m == doctest::Approx(1000.0 - 100.0 * 0.0227).epsilon(1e-12));

  const auto cross = route_crossover_share(g, grid, 0, 4);
  REQUIRE(cross);
  CHECK(*cross == doctest::Approx(2.0 / 11.0).epsilon(1e-6));

  const auto csv = scenario_csv(rows);
  CHECK(csv.rfind("c,changed,effective_m,physical_m,route\n0,0,1000,1000,0 1 2 4\n", 0) == 0);

  auto from_config = run_route_scenario(load_scenario_config(test::data_path("fig3.conf")));
  CHECK(scenario_csv(from_config) == csv);
}

TEST_CASE("route scenario with 1020 m sunny detour") {
  const auto g = test::fig3(true);
  const auto grid = offline_noon(g);
  const auto rows = run_route_scenario(g, grid, 0, 4, {0.0, 0.0227});
  CHECK_FALSE(rows[0].changed);
  CHECK(rows[1].changed);
  CHECK(rows[1].route->effective_m == doctest::Approx(1020.0 * (1.0 - 0.0227)).epsilon(1e-12));
  CHECK(rows[1].route->effective_m == doctest::Approx(996.846).epsilon(1e-12));
  const auto m = build_weighted_matrix(g, grid, ConversionShare(0.0227));
  const double shady = m.effective(0, 1) + m.effective(1, 2) + m.effective(2, 4);
  CHECK(shady == doctest::Approx(997.73).epsilon(1e-12));
  CHECK(*route_crossover_share(g, grid, 0, 4) == doctest::Approx(1.0 / 46.0).epsilon(1e-6));
}

TEST_CASE("changed flag is monotone in the share") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> shares;
  for (int i = 0; i <= 40; ++i) shares.push_back(i * 0.024);
  for (int trial = 0; trial < 100; ++trial) {
    const double shady_len = 200.0 + 800.0 * u(rng);
    const double sunny_len = shady_len * (1.0 + 0.5 * u(rng));
    RoadGraph g;
    for (int i = 0; i < 4; ++i) g.nodes.push_back({i, {0.0, 0.001 * i}, {}});
    g.edges = {{0, 1, shady_len / 2}, {1, 3, shady_len / 2}, {0, 2, sunny_len / 2}, {2, 3, sunny_len / 2}};
    FusedGrid grid;
    const double ends = u(rng);
    for (double r : {ends, 0.3 * u(rng), 0.7 + 0.3 * u(rng), ends}) {
      grid.nodes.push_back({Irradiance(r), 0.0, std::nullopt});
    }
    const auto rows = run_route_scenario(g, grid, 0, 3, shares);
    bool seen = false;
    for (const auto& row : rows) {
      if (seen) CHECK(row.changed);
      seen = seen || row.changed;
    }
  }
}

TEST_CASE("key-value config") {
  std::istringstream in(
      "# header\n"
      "name = \"a # b\"   # trailing\n"
      "count=12\n"
      "\n"
      "list = [1, 2.5 ,3]\n"
      "words = x,y\n");
  auto kv = KeyValueConfig::parse(in);
  CHECK(kv.get_string("name") == "a # b");
  CHECK(kv.get_int("count") == 12);
  CHECK(kv.get_int("missing", 5) == 5);
  CHECK(kv.get_number_list("list") == std::vector<double>{1.0, 2.5, 3.0});
  CHECK(kv.get_list("words") == std::vector<std::string>{"x", "y"});
  CHECK_THROWS_AS(kv.get_int("name"), std::invalid_argument);
  CHECK_THROWS_AS(kv.get_string("nope"), std::invalid_argument);

  std::istringstream dup("a = 1\na = 2\n");
  CHECK_THROWS_AS(KeyValueConfig::parse(dup), ParseError);
  std::istringstream noeq("just words\n");
  CHECK_THROWS_AS(KeyValueConfig::parse(noeq), ParseError);
  std::istringstream badkey("a-b = 1\n");
  CHECK_THROWS_AS(KeyValueConfig::parse(badkey), ParseError);

  auto file = KeyValueConfig::load(test::data_path("fig3.conf"));
  CHECK(file.get_path("nodes") == std::filesystem::path(test::data_path("fig3_nodes.csv")));
}

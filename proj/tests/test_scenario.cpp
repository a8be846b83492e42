#include <doctest.h>

#include <cmath>
#include <fstream>

#include "meshlab/error.hpp"
#include "meshlab/io.hpp"
#include "meshlab/scenario.hpp"
#include "oracles.hpp"

using namespace meshlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("meshlab_scenario_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
  return path;
}

std::string layouts_dir() { return (default_data_dir() / "layouts").string(); }

}  // namespace

TEST_SUITE("scenario") {
  TEST_CASE("the four stock scenarios load, validate and run") {
    for (auto kind : {StockScenario::CenterV1, StockScenario::CenterV2, StockScenario::CornerV1,
                      StockScenario::CornerV2}) {
      const auto s = stock_scenario(kind);
      CHECK_NOTHROW(s.validate());
      CHECK(s.src == NodeId{1});
      CHECK(s.dst == NodeId{8});
      CHECK(s.layout.census() == RoleCensus{});
      const auto r = s.run();
      CHECK(r.status == RunStatus::Completed);
      CHECK(r.ticks_executed == 20000);
    }
  }

  TEST_CASE("stock scenario routes") {
    CHECK(stock_scenario(StockScenario::CenterV1).run().route_history.front().route.to_string() == "1-2-8");
    CHECK(stock_scenario(StockScenario::CenterV2).run().route_history.back().route.to_string() == "1-3-8");
    CHECK(stock_scenario(StockScenario::CornerV1).run().route_history.front().route.to_string() == "1-6-7-2-8");
    const auto v1 = stock_scenario(StockScenario::CenterV1).run();
    CHECK(v1.route_history.size() == 1);
  }

  TEST_CASE("names and aliases") {
    CHECK(scenario_name(StockScenario::CornerV2) == "corner-v2");
    CHECK(parse_scenario_name("center-v1") == StockScenario::CenterV1);
    CHECK_FALSE(parse_scenario_name("middle-v1"));
    CHECK(resolve_scenario("center-v2") == stock_scenario(StockScenario::CenterV2));
  }

  TEST_CASE("canonical file round-trips to an identical scenario") {
    const auto path = default_data_dir() / "scenarios" / "center-v1.json";
    const auto s = load_scenario(path);
    CHECK(s == stock_scenario(StockScenario::CenterV1));
    CHECK(scenario_from_json(scenario_to_json(s), path.parent_path()) == s);

    const auto dir = scratch("roundtrip");
    auto copy = s;
    copy.layout_file = (default_data_dir() / "layouts" / "center.json").string();
    copy.forced_depletions = {{10, NodeId{3}}};
    copy.config.k_routes = 3;
    save_scenario(copy, dir / "s.json");
    CHECK(load_scenario(dir / "s.json") == copy);
  }

  TEST_CASE("destination outside the layout is a validation error") {
    const auto dir = scratch("dst");
    const auto p = write_file(dir / "s.json", R"({"label":"x","layout_file":")" + layouts_dir() +
                                                  R"(/center.json","src":1,"dst":42,"config":{}})");
    CHECK_THROWS_AS(load_scenario(p), ValidationError);
  }

  TEST_CASE("threshold override moves the failover earlier") {
    const auto dir = scratch("threshold");
    const auto p = write_file(dir / "s.json", R"({"label":"x","layout_file":")" + layouts_dir() +
                                                  R"(/center.json","src":1,"dst":8,"config":{"threshold":2.0}})");
    const auto s = load_scenario(p);
    CHECK(s.config.decay.threshold == 2.0);
    const auto expect = oracle::first_tick_below(3.292, 2.0, s.config.decay.delta_forward);
    CHECK(expect == 13227);
    const auto r = s.run();
    REQUIRE_FALSE(r.failover_events.empty());
    CHECK(r.failover_events[0].tick + 1 >= expect);
    CHECK(r.failover_events[0].tick <= expect + 1);
  }

  TEST_CASE("malformed and incomplete files") {
    const auto dir = scratch("bad");
    CHECK_THROWS_AS(load_scenario(write_file(dir / "a.json", "{not json")), ParseError);
    CHECK_THROWS_AS(load_scenario(write_file(dir / "b.json", R"({"label":"x","layout_file":")" + layouts_dir() +
                                                                 R"(/center.json","config":{"nope":1}})")),
                    ParseError);
    CHECK_THROWS_AS(load_scenario(dir / "missing.json"), IoError);
    CHECK_THROWS_AS(load_scenario(write_file(dir / "c.json", R"({"label":"x","layout_file":"gone.json","src":1,"dst":8})")),
                    MissingLayout);
  }

  TEST_CASE("missing packaged layouts raise MissingLayout") {
    const auto dir = scratch("empty");
    CHECK_THROWS_AS(stock_scenario(StockScenario::CenterV1, dir), MissingLayout);
  }

  TEST_CASE("published route sums carry the printed totals") {
    const auto center = published_route_sums(StockNetwork::Center);
    REQUIRE(center.size() >= 2);
    CHECK(center[0].printed_sum == "222.0656");
    const auto corner = published_route_sums(StockNetwork::Corner);
    REQUIRE(corner.size() == 3);
    CHECK(corner[2].printed_sum == "473.081");
  }
}

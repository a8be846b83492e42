#include <doctest.h>

#include <cmath>

#include "meshlab/engine.hpp"
#include "meshlab/error.hpp"
#include "meshlab/io.hpp"
#include "meshlab/report.hpp"
#include "meshlab/scenario.hpp"
#include "oracles.hpp"

using namespace meshlab;

namespace {

NetworkLayout load(const char* name) {
  return read_layout(default_data_dir() / "layouts" / (std::string(name) + ".json"));
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("center run fails over from 1-2-8 to 1-3-8 at the closed-form tick") {
    const SimConfig cfg;
    const auto r = run(load("center"), NodeId{1}, NodeId{8}, cfg);
    CHECK(r.status == RunStatus::Completed);
    CHECK(r.ticks_executed == 20000);
    REQUIRE(r.route_history.size() == 2);
    CHECK(r.route_history[0].tick == 0);
    CHECK(r.route_history[0].reason == ActivationReason::Initial);
    CHECK(r.route_history[0].route.to_string() == "1-2-8");
    CHECK(r.route_history[1].reason == ActivationReason::Failover);
    CHECK(r.route_history[1].route.to_string() == "1-3-8");
    const auto expect = oracle::first_tick_below(3.292, 1.6, cfg.decay.delta_forward);
    CHECK(expect == 17321);
    REQUIRE(r.failover_events.size() == 1);
    const auto tick = r.failover_events[0].tick;
    CHECK(tick + 1 >= expect);
    CHECK(tick <= expect + 1);
    CHECK(std::abs(r.final_batteries[1].voltage - 1.3383) < 5e-3);
    CHECK(r.route_history[0].delay == doctest::Approx(0.04));
  }

  TEST_CASE("coordinator trace is constant at 3.292") {
    const auto r = run(load("center"), NodeId{1}, NodeId{8}, SimConfig{});
    for (double v : r.traces[0]) CHECK(v == 3.292);
  }

  TEST_CASE("trace length is floor(N / stride) + 1 for every node") {
    for (std::uint64_t stride : {1u, 7u, 100u, 333u}) {
      SimConfig cfg;
      cfg.total_transmissions = 1000;
      cfg.sampling_stride = stride;
      const auto r = run(load("center"), NodeId{1}, NodeId{8}, cfg);
      CHECK(r.sample_ticks.size() == 1000 / stride + 1);
      for (const auto& t : r.traces) CHECK(t.size() == 1000 / stride + 1);
    }
  }

  TEST_CASE("zero deltas keep one route and fresh batteries") {
    SimConfig cfg;
    cfg.decay = DecayModel{};
    const auto r = run(load("corner"), NodeId{1}, NodeId{8}, cfg);
    CHECK(r.route_history.size() == 1);
    CHECK(r.failover_events.empty());
    for (const auto& b : r.final_batteries) CHECK(b.voltage == 3.292);
  }

  TEST_CASE("runs are deterministic") {
    const auto a = run(load("corner"), NodeId{1}, NodeId{8}, SimConfig{});
    const auto b = run(load("corner"), NodeId{1}, NodeId{8}, SimConfig{});
    CHECK(summary_json(a, "x") == summary_json(b, "x"));
    CHECK(render_voltage_trace(a) == render_voltage_trace(b));
    CHECK(a.final_batteries == b.final_batteries);
  }

  TEST_CASE("traces are non-increasing and the forwarder drains fastest") {
    SimConfig cfg;
    cfg.sampling_stride = 1;
    cfg.total_transmissions = 3000;
    const auto r = run(load("center"), NodeId{1}, NodeId{8}, cfg);
    for (std::size_t s = 1; s < r.sample_ticks.size(); ++s) {
      const double fwd = r.traces[1][s - 1] - r.traces[1][s];
      for (std::size_t i = 0; i < r.traces.size(); ++i) {
        const double drop = r.traces[i][s - 1] - r.traces[i][s];
        CHECK(drop >= 0.0);
        if (r.layout.nodes[i].role == Role::Router) CHECK(fwd >= drop);
      }
    }
  }

  TEST_CASE("running out of routes ends the run early with a partial report") {
    SimConfig cfg;
    cfg.k_routes = 1;
    const auto l = load("center");
    std::vector<ForcedDepletion> forced;
    for (std::uint32_t n = 2; n <= 7; ++n) forced.push_back({50, NodeId{n}});
    const auto r = run(l, NodeId{1}, NodeId{8}, cfg, forced);
    CHECK(r.status == RunStatus::AllRoutesDepleted);
    CHECK(r.ticks_executed == 50);
    CHECK(r.ticks_executed < cfg.total_transmissions);
    CHECK(r.sample_ticks.back() == r.ticks_executed);
    CHECK_FALSE(r.route_history.empty());
  }

  TEST_CASE("forced depletion triggers failover at that tick") {
    const auto r = run(load("center"), NodeId{1}, NodeId{8}, SimConfig{}, {{500, NodeId{2}}});
    REQUIRE_FALSE(r.failover_events.empty());
    CHECK(r.failover_events[0].tick == 500);
    CHECK(r.route_history[1].tick == 500);
    CHECK(r.route_history[1].route.to_string() == "1-3-8");
  }

  TEST_CASE("failover disabled keeps the first route") {
    SimConfig cfg;
    cfg.failover = false;
    const auto r = run(load("center"), NodeId{1}, NodeId{8}, cfg);
    CHECK(r.route_history.size() == 1);
    CHECK(r.failover_events.empty());
    CHECK_FALSE(r.depletion_events.empty());
  }

  TEST_CASE("no route at start raises NoRoute") {
    NetworkLayout l;
    l.nodes = {{NodeId{1}, Role::Coordinator, {0, 0}}, {NodeId{2}, Role::EndDevice, {500, 500}}};
    CHECK_THROWS_AS(run(l, NodeId{1}, NodeId{2}, SimConfig{}), NoRoute);
  }

  TEST_CASE("config validation") {
    SimConfig cfg;
    cfg.sampling_stride = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    cfg = SimConfig{};
    cfg.k_routes = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
    CHECK(SimConfig{}.total_time() == doctest::Approx(400.0));
  }

  TEST_CASE("placement comparison ranks center before corner") {
    const auto rows = compare_placements({{"corner", load("corner")}, {"center", load("center")}}, NodeId{1},
                                         NodeId{8}, SimConfig{});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].label == "center");
    CHECK(std::abs(rows[0].first_route_distance - 222.0656) < 1e-3);
    CHECK(rows[0].links == 2);
    CHECK(std::abs(rows[1].first_route_distance - 423.6068) < 1e-3);
    CHECK(rows[1].links == 4);
    REQUIRE(rows[0].first_failover_tick);
    REQUIRE(rows[1].first_failover_tick);
    CHECK(*rows[0].first_failover_tick >= *rows[1].first_failover_tick);
    CHECK(rows[0].mean_final_voltage >= rows[1].mean_final_voltage);
  }

  TEST_CASE("identical layouts give identical rows; unroutable layouts are listed last") {
    SimConfig cfg;
    cfg.total_transmissions = 200;
    const auto rows = compare_placements({{"a", load("center")}, {"b", load("center")}}, NodeId{1}, NodeId{8}, cfg);
    CHECK(rows[0].first_route_distance == rows[1].first_route_distance);
    CHECK(rows[0].mean_final_voltage == rows[1].mean_final_voltage);
    CHECK(rows[0].first_route == rows[1].first_route);

    NetworkLayout far = load("center");
    far.nodes[7].position = {599, 599};  // node 8 out of everyone's range
    const auto mixed = compare_placements({{"far", far}, {"center", load("center")}}, NodeId{1}, NodeId{8}, cfg);
    CHECK(mixed[0].label == "center");
    CHECK(mixed[1].label == "far");
    CHECK(mixed[1].error.has_value());
  }
}

#include <doctest.h>

#include <cmath>

#include "meshlab/energy.hpp"
#include "meshlab/error.hpp"
#include "meshlab/io.hpp"
#include "meshlab/scenario.hpp"
#include "test_util.hpp"

using namespace meshlab;
using meshlab::testing::ids;

namespace {

struct Fixture {
  NetworkLayout layout = read_layout(default_data_dir() / "layouts" / "center.json");
  std::vector<Role> roles;
  Route route = make_route(layout, ids({1, 2, 8}));
  Fixture() {
    for (const auto& n : layout.nodes) roles.push_back(n.role);
  }
};

}  // namespace

TEST_SUITE("energy") {
  TEST_CASE("calibrated rates come from the published endpoints") {
    const auto m = DecayModel::calibrated();
    // (3.292 - 1.3383) / 20000 and (3.292 - 1.6442) / 20000.
    CHECK(m.delta_forward == doctest::Approx(9.7685e-5).epsilon(1e-12));
    CHECK(m.delta_maintenance == doctest::Approx(8.239e-5).epsilon(1e-12));
    CHECK(m.delta_idle == doctest::Approx(0.5 * 8.239e-5).epsilon(1e-12));
    CHECK(m.delta_receive == doctest::Approx(0.75 * 8.239e-5).epsilon(1e-12));
    CHECK(m.threshold == 1.6);
    CHECK_NOTHROW(m.validate(3.292));
  }

  TEST_CASE("decay model ordering is enforced") {
    auto m = DecayModel::calibrated();
    m.delta_idle = m.delta_receive * 2;
    CHECK_THROWS_AS(m.validate(3.292), ValidationError);
    m = DecayModel::calibrated();
    m.delta_forward = m.delta_maintenance / 2;
    CHECK_THROWS_AS(m.validate(3.292), ValidationError);
    m = DecayModel::calibrated();
    m.threshold = 3.5;
    CHECK_THROWS_AS(m.validate(3.292), ValidationError);
    m = DecayModel::calibrated();
    m.delta_idle = -1e-9;
    m.delta_receive = 0;
    CHECK_THROWS_AS(m.validate(3.292), ValidationError);
  }

  TEST_CASE("coordinator stays at 3.292 V; on-route router reaches 1.3383 V after 20000 ticks") {
    Fixture f;
    const auto model = DecayModel::calibrated();
    auto b = fresh_batteries(f.layout);
    for (int t = 0; t < 20000; ++t) b = apply_tick_costs(std::move(b), f.roles, f.route, model);
    CHECK(b[0].voltage == 3.292);
    CHECK(std::abs(b[1].voltage - 1.3383) < 5e-3);
    CHECK(std::abs(b[1].voltage - (3.292 - 20000 * model.delta_forward)) < 1e-9);
  }

  TEST_CASE("all-zero deltas leave every voltage unchanged") {
    Fixture f;
    DecayModel zero;
    auto b = fresh_batteries(f.layout);
    const auto before = b;
    for (int t = 0; t < 100; ++t) b = apply_tick_costs(std::move(b), f.roles, f.route, zero);
    CHECK(b == before);
  }

  TEST_CASE("cost classes for one tick") {
    Fixture f;
    const auto model = DecayModel::calibrated();
    const auto b = fresh_batteries(f.layout);
    const auto cls = classify_nodes(b, f.roles, f.route, model);
    CHECK(cls[0] == CostClass::Mains);        // coordinator
    CHECK(cls[1] == CostClass::Forward);      // node 2 carries the route
    CHECK(cls[7] == CostClass::Receive);      // node 8 is the destination
    CHECK(cls[2] == CostClass::Maintenance);  // router off the route
    CHECK(cls[8] == CostClass::Idle);         // end device off the route
  }

  TEST_CASE("a depleted node drains at the forwarding rate even off the route") {
    Fixture f;
    const auto model = DecayModel::calibrated();
    auto b = fresh_batteries(f.layout);
    b[2].voltage = 1.5;  // router 3, off route 1-2-8
    b[9].voltage = 1.0;  // end device 10
    const auto costs = tick_costs(b, f.roles, f.route, model);
    CHECK(costs[2] == model.delta_forward);
    CHECK(costs[9] == model.delta_forward);
  }

  TEST_CASE("voltages clamp at zero") {
    Fixture f;
    DecayModel m = DecayModel::calibrated();
    m.delta_forward = 2.0;
    auto b = fresh_batteries(f.layout);
    b = apply_tick_costs(std::move(b), f.roles, f.route, m);
    b = apply_tick_costs(std::move(b), f.roles, f.route, m);
    CHECK(b[1].voltage == 0.0);
    CHECK(is_depleted(b[1], m.threshold));
  }

  TEST_CASE("is_depleted uses a strict inequality and exempts mains power") {
    CHECK(is_depleted({1.5999, 3.292, false}, 1.6));
    CHECK_FALSE(is_depleted({1.6, 3.292, false}, 1.6));
    CHECK_FALSE(is_depleted({0.0, 3.292, true}, 1.6));
    CHECK_FALSE(is_depleted({1.0, 3.292, true}, 1.6));
  }

  TEST_CASE("energy map percentages") {
    const std::vector<Battery> b = {{1.98, 3.292, false}, {3.3, 3.3, false}, {1.3383, 3.292, false}};
    const auto m = energy_map(b, 3.3);
    CHECK(m.percent[0] == 60.0);
    CHECK(m.percent[1] == 100.0);
    CHECK(std::abs(m.percent[2] - 40.555) < 0.01);  // 1.3383 / 3.3 = 0.405545...
    CHECK_THROWS_AS(energy_map(b, 0.0), ValidationError);
  }

  TEST_CASE("energy map is linear in voltage below the reference") {
    for (double v = 0.01; v < 1.6; v += 0.0731) {
      const std::vector<Battery> b = {{v, 3.292, false}, {2 * v, 3.292, false}};
      const auto m = energy_map(b);
      CHECK(m.percent[1] == doctest::Approx(2 * m.percent[0]).epsilon(1e-12));
      CHECK(m.percent[1] <= 100.0);
    }
  }

  TEST_CASE("voltage is non-increasing and the class ordering holds every tick") {
    Fixture f;
    const auto model = DecayModel::calibrated();
    auto b = fresh_batteries(f.layout);
    for (int t = 0; t < 2000; ++t) {
      auto next = apply_tick_costs(b, f.roles, f.route, model);
      const double on_route = b[1].voltage - next[1].voltage;
      for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(next[i].voltage <= b[i].voltage);
        if (b[i].mains_powered) CHECK(next[i].voltage == b[i].voltage);
        const double drop = b[i].voltage - next[i].voltage;
        if (f.roles[i] == Role::Router && !f.route.contains(NodeId::from_index(i))) {
          CHECK(on_route >= drop);
          CHECK(drop >= model.delta_idle);
        }
      }
      b = std::move(next);
    }
  }

  TEST_CASE("total drop equals ticks times count-weighted rates") {
    Fixture f;
    const auto model = DecayModel::calibrated();
    auto b = fresh_batteries(f.layout);
    const int ticks = 5000;
    for (int t = 0; t < ticks; ++t) b = apply_tick_costs(std::move(b), f.roles, f.route, model);
    double dropped = 0.0;
    for (const auto& x : b) dropped += x.initial_voltage - x.voltage;
    // Route 1-2-8: one forwarder (2), one receiver (8), five off-route routers, seven idle end devices.
    const double per_tick = model.delta_forward + model.delta_receive + 5 * model.delta_maintenance + 7 * model.delta_idle;
    CHECK(std::abs(dropped - ticks * per_tick) < 1e-9);
  }
}

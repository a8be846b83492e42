// meshlab: command-line driver for the mesh routing / battery simulator.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "meshlab/engine.hpp"
#include "meshlab/error.hpp"
#include "meshlab/fit.hpp"
#include "meshlab/io.hpp"
#include "meshlab/report.hpp"
#include "meshlab/scenario.hpp"

namespace {

using namespace meshlab;

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

std::string default_out_dir() {
  if (const char* env = std::getenv("MESHLAB_OUT"); env && *env) return env;
  return "meshlab-out";
}

std::optional<StockNetwork> stock_network(const std::string& name) {
  auto kind = parse_scenario_name(name);
  if (!kind) return std::nullopt;
  return (*kind == StockScenario::CenterV1 || *kind == StockScenario::CenterV2) ? StockNetwork::Center
                                                                                 : StockNetwork::Corner;
}

Position parse_anchor(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--anchor", "expected x,y");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--anchor", "expected two numbers x,y");
  }
}

int cmd_run(const std::string& scenario_name, const std::string& out) {
  const Scenario s = resolve_scenario(scenario_name);
  const SimReport report = s.run();
  export_report(report, s.label, out);
  std::cout << "scenario " << s.label << ": " << to_string(report.status) << " after " << report.ticks_executed
            << " ticks, final route " << report.active_route().to_string() << ", report in " << out << "\n";
  if (report.status == RunStatus::AllRoutesDepleted) {
    std::cerr << "error: AllRoutesDepleted at tick " << report.ticks_executed << "\n";
    return kRuntimeError;
  }
  return 0;
}

int cmd_routes(const std::string& scenario_name, std::size_t k) {
  const Scenario s = resolve_scenario(scenario_name);
  const auto ranked = discover_routes(s.layout, s.src, s.dst, k);
  std::cout << render_route_summary(ranked).to_text();
  if (auto net = stock_network(scenario_name)) {
    std::cout << "\n" << render_route_sum_audit(audit_route_sums(published_route_sums(*net))).to_text();
  }
  return 0;
}

int cmd_neighbors(const std::string& scenario_name) {
  const Scenario s = resolve_scenario(scenario_name);
  std::vector<double> volts(s.layout.size(), s.config.initial_voltage);
  std::cout << render_neighbor_table(build_neighbor_table(s.layout, volts)).to_text();
  return 0;
}

int cmd_energy_map(const std::string& scenario_name) {
  const Scenario s = resolve_scenario(scenario_name);
  const SimReport report = s.run();
  std::cout << render_energy_map(report).to_text();
  return report.status == RunStatus::Completed ? 0 : kRuntimeError;
}

int cmd_compare(const std::vector<std::string>& names) {
  if (names.size() < 2) throw CLI::ValidationError("--scenarios", "needs at least two scenarios");
  std::vector<std::pair<std::string, NetworkLayout>> layouts;
  std::optional<Scenario> first;
  for (const auto& n : names) {
    Scenario s = resolve_scenario(n);
    layouts.emplace_back(n, s.layout);
    if (!first) first = std::move(s);
  }
  // One shared calibration so the rows differ only in placement.
  const auto rows = compare_placements(layouts, first->src, first->dst, SimConfig{});
  std::cout << render_comparison(rows).to_text();
  return 0;
}

int cmd_fit_layout(const std::string& constraints_path, const std::string& anchor, std::uint64_t seed,
                   const std::string& out, double area, double range, std::size_t routers, double tolerance) {
  const auto constraints = read_constraints_csv(constraints_path);
  FitOptions opts;
  if (!anchor.empty()) opts.anchor = parse_anchor(anchor);
  opts.radio_range = range;
  opts.routers = routers;
  opts.tolerance = tolerance;
  const NetworkLayout layout = fit_layout(constraints, area, seed, opts);
  write_layout(layout, out);
  std::cout << "fitted " << layout.size() << " nodes, max residual " << max_residual(layout, constraints)
            << " m, written to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meshlab - AODV-style mesh routing and battery depletion simulator"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  std::string scenario;
  std::string out = default_out_dir();
  std::size_t k = 2;
  std::vector<std::string> scenarios;
  std::string constraints, anchor, layout_out;
  double area = kDefaultAreaSide, range = kDefaultRadioRange, tolerance = 1e-3;
  std::size_t routers = 6;

  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", seed, "Random seed")->capture_default_str(); };

  auto* run = app.add_subcommand("run", "Run a scenario and write its report directory");
  run->add_option("--scenario", scenario, "Scenario file or alias (center-v1, center-v2, corner-v1, corner-v2)")
      ->required();
  run->add_option("--out", out, "Output directory (default: $MESHLAB_OUT or meshlab-out)");
  add_seed(run);

  auto* routes = app.add_subcommand("routes", "Print the ranked route summary");
  routes->add_option("--scenario", scenario, "Scenario file or alias")->required();
  routes->add_option("--k", k, "Number of routes")->check(CLI::PositiveNumber)->capture_default_str();
  add_seed(routes);

  auto* neighbors = app.add_subcommand("neighbors", "Print the neighbor table at full charge");
  neighbors->add_option("--scenario", scenario, "Scenario file or alias")->required();
  add_seed(neighbors);

  auto* emap = app.add_subcommand("energy-map", "Run a scenario and print final battery percentages");
  emap->add_option("--scenario", scenario, "Scenario file or alias")->required();
  add_seed(emap);

  auto* compare = app.add_subcommand("compare", "Compare coordinator placements");
  compare->add_option("--scenarios", scenarios, "Comma-separated scenarios")->required()->delimiter(',');
  add_seed(compare);

  auto* fit = app.add_subcommand("fit-layout", "Fit node coordinates to pairwise distances");
  fit->add_option("--constraints", constraints, "CSV node_a,node_b,distance_m")->required();
  fit->add_option("--anchor", anchor, "Position of node 1 as x,y (default: area center)")
      ->check(CLI::Validator(
          [](std::string& text) {
            try {
              parse_anchor(text);
            } catch (const CLI::ValidationError&) {
              return std::string("expected two numbers x,y");
            }
            return std::string();
          },
          "X,Y"));
  fit->add_option("--out", layout_out, "Layout JSON to write")->required();
  fit->add_option("--area", area, "Square area side, meters")->capture_default_str();
  fit->add_option("--range", range, "Radio range, meters")->capture_default_str();
  fit->add_option("--routers", routers, "Nodes 2..routers+1 become routers")->capture_default_str();
  fit->add_option("--tolerance", tolerance, "Accepted residual, meters")->capture_default_str();
  add_seed(fit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (*run) return cmd_run(scenario, out);
    if (*routes) return cmd_routes(scenario, k);
    if (*neighbors) return cmd_neighbors(scenario);
    if (*emap) return cmd_energy_map(scenario);
    if (*compare) return cmd_compare(scenarios);
    if (*fit) return cmd_fit_layout(constraints, anchor, seed, layout_out, area, range, routers, tolerance);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const meshlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

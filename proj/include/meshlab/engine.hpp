#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meshlab/energy.hpp"
#include "meshlab/route.hpp"
#include "meshlab/routing.hpp"
#include "meshlab/topology.hpp"

namespace meshlab {

/// Radio parameters carried for reporting only; nothing in the model reads them.
struct RadioMetadata {
  double frequency_hz = 2.4e9;
  std::string modulation = "On/Off Keying";
  double transmit_power_w = 0.01;
  std::string received_power = "60 dbm";
  double operating_voltage_min = 1.65;
  double operating_voltage_max = 3.292;

  friend bool operator==(const RadioMetadata&, const RadioMetadata&) = default;
};

struct SimConfig {
  std::uint64_t total_transmissions = 20000;
  double tick_duration = 0.02;  // seconds; also the per-hop time for delays
  std::uint32_t bits_per_packet = 2000;
  double initial_voltage = kCoinCellVoltage;
  double reference_voltage = kEnergyReference;
  DecayModel decay = DecayModel::calibrated();
  std::size_t k_routes = 2;
  /// When false, depletions are recorded but the first route is kept to the end.
  bool failover = true;
  std::uint64_t sampling_stride = 100;
  RadioMetadata metadata;

  double total_time() const noexcept { return static_cast<double>(total_transmissions) * tick_duration; }
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

enum class ActivationReason { Initial, Failover };
enum class RunStatus { Completed, AllRoutesDepleted };

std::string_view to_string(ActivationReason r) noexcept;
std::string_view to_string(RunStatus s) noexcept;

struct RouteActivation {
  std::uint64_t tick = 0;
  Route route;
  ActivationReason reason = ActivationReason::Initial;
  double delay = 0.0;  // end-to-end delay of `route`, seconds
};

struct FailoverEvent {
  std::uint64_t tick = 0;
  std::vector<NodeId> depleted;  // active-route members that crossed the threshold
};

struct DepletionEvent {
  std::uint64_t tick = 0;
  NodeId node;
};

/// Scripted drop of one node's battery to 0 V at the start of `tick`.
struct ForcedDepletion {
  std::uint64_t tick = 0;
  NodeId node;

  friend bool operator==(const ForcedDepletion&, const ForcedDepletion&) = default;
};

struct SimReport {
  SimConfig config;
  NetworkLayout layout;
  NodeId src;
  NodeId dst;
  RunStatus status = RunStatus::Completed;
  std::uint64_t ticks_executed = 0;
  std::uint64_t packets_delivered = 0;

  std::vector<std::uint64_t> sample_ticks;
  /// traces[node index][sample] in volts, aligned with sample_ticks.
  std::vector<std::vector<double>> traces;

  std::vector<Route> initial_candidates;
  std::vector<RouteActivation> route_history;
  std::vector<FailoverEvent> failover_events;
  std::vector<DepletionEvent> depletion_events;

  std::vector<Battery> final_batteries;
  EnergyMap final_energy_map;
  NeighborTable final_neighbor_table;

  const Route& active_route() const { return route_history.back().route; }
};

/// Runs total_transmissions ticks. Each tick sends one packet over the active
/// route, applies the tick costs, then checks the active route's battery
/// nodes; a depletion triggers rediscovery that takes effect on the next tick.
/// Throws NoRoute if nothing is admissible at tick 0. Running out of routes
/// later ends the run early with status AllRoutesDepleted.
SimReport run(const NetworkLayout& layout, NodeId src, NodeId dst, const SimConfig& config,
              const std::vector<ForcedDepletion>& forced = {});

struct PlacementRow {
  std::string label;
  std::optional<std::string> error;  // set when the layout has no route
  double first_route_distance = 0.0;
  std::size_t links = 0;
  double initial_delay = 0.0;
  std::optional<std::uint64_t> first_failover_tick;
  double mean_final_voltage = 0.0;  // battery-powered nodes only
  std::string first_route;
};

/// Runs every layout (concurrently) and ranks them by first-route distance.
/// Layouts without a route are kept, marked, and listed last.
std::vector<PlacementRow> compare_placements(const std::vector<std::pair<std::string, NetworkLayout>>& layouts,
                                             NodeId src, NodeId dst, const SimConfig& config);

}  // namespace meshlab

#pragma once

#include <span>
#include <vector>

#include "meshlab/route.hpp"
#include "meshlab/topology.hpp"

namespace meshlab {

inline constexpr double kCoinCellVoltage = 3.292;
inline constexpr double kDepletionThreshold = 1.6;
inline constexpr double kEnergyReference = 3.3;

struct Battery {
  double voltage = kCoinCellVoltage;
  double initial_voltage = kCoinCellVoltage;
  bool mains_powered = false;

  friend bool operator==(const Battery&, const Battery&) = default;
};

/// Linear per-tick battery drain, volts per transmitted packet.
///
/// Each tick one packet crosses the active route. The route's battery-powered
/// source and intermediates pay `delta_forward` and its destination pays
/// `delta_receive`. Routers off the route pay `delta_maintenance` for their
/// share of discovery and upkeep, idle end devices pay `delta_idle`. A
/// battery node already below `threshold` pays `delta_forward` wherever it
/// sits: its radio keeps retrying the relay it can no longer sustain.
struct DecayModel {
  double delta_forward = 0.0;
  double delta_maintenance = 0.0;
  double delta_receive = 0.0;
  double delta_idle = 0.0;
  double threshold = kDepletionThreshold;

  /// Rates that reproduce the published endpoint voltages over 20000 packets:
  /// an always-forwarding router ends at 1.3383 V, an always-off-route router
  /// at 1.6442 V. Idle end devices drain at half the maintenance rate and the
  /// destination midway between maintenance and idle.
  static DecayModel calibrated() noexcept;

  /// Throws ValidationError unless forward >= maintenance >= receive >= idle >= 0
  /// and threshold < initial_voltage.
  void validate(double initial_voltage) const;

  friend bool operator==(const DecayModel&, const DecayModel&) = default;
};

enum class CostClass { Mains, Forward, Receive, Maintenance, Idle, Drain };

bool is_depleted(const Battery& b, double threshold) noexcept;

std::vector<Battery> fresh_batteries(const NetworkLayout& layout, double initial_voltage = kCoinCellVoltage);

/// Cost class of every node for one tick with `active_route` carrying the packet.
std::vector<CostClass> classify_nodes(std::span<const Battery> batteries, std::span<const Role> roles,
                                      const Route& active_route, const DecayModel& model);

double class_cost(CostClass c, const DecayModel& model) noexcept;

/// Per-node voltage drop for one tick, indexed like `batteries`.
std::vector<double> tick_costs(std::span<const Battery> batteries, std::span<const Role> roles,
                               const Route& active_route, const DecayModel& model);

/// Batteries after one tick. Voltages clamp at 0; mains nodes never change.
std::vector<Battery> apply_tick_costs(std::vector<Battery> batteries, std::span<const Role> roles,
                                      const Route& active_route, const DecayModel& model);

struct EnergyMap {
  /// Percent of the reference voltage, indexed by node index.
  std::vector<double> percent;
  double reference = kEnergyReference;

  friend bool operator==(const EnergyMap&, const EnergyMap&) = default;
};

/// percent = 100 * voltage / reference. Throws ValidationError if reference <= 0.
EnergyMap energy_map(std::span<const Battery> batteries, double reference = kEnergyReference);

}  // namespace meshlab

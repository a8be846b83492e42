#include "meshlab/energy.hpp"

#include "meshlab/error.hpp"
#include "meshlab/kernels.hpp"

namespace meshlab {

namespace {
constexpr double kPublishedPackets = 20000.0;
constexpr double kForwarderEndpoint = 1.3383;
constexpr double kOffRouteRouterEndpoint = 1.6442;
}  // namespace

DecayModel DecayModel::calibrated() noexcept {
  DecayModel m;
  m.delta_forward = (kCoinCellVoltage - kForwarderEndpoint) / kPublishedPackets;
  m.delta_maintenance = (kCoinCellVoltage - kOffRouteRouterEndpoint) / kPublishedPackets;
  m.delta_idle = 0.5 * m.delta_maintenance;
  m.delta_receive = 0.5 * (m.delta_maintenance + m.delta_idle);
  m.threshold = kDepletionThreshold;
  return m;
}

void DecayModel::validate(double initial_voltage) const {
  if (!(delta_idle >= 0.0)) throw ValidationError("delta_idle must be >= 0");
  if (!(delta_receive >= delta_idle)) throw ValidationError("delta_receive must be >= delta_idle");
  if (!(delta_maintenance >= delta_receive)) {
    throw ValidationError("delta_maintenance must be >= delta_receive");
  }
  if (!(delta_forward >= delta_maintenance)) {
    throw ValidationError("delta_forward must be >= delta_maintenance");
  }
  if (!(threshold < initial_voltage)) throw ValidationError("threshold must be below the initial voltage");
}

bool is_depleted(const Battery& b, double threshold) noexcept {
  return !b.mains_powered && b.voltage < threshold;
}

std::vector<Battery> fresh_batteries(const NetworkLayout& layout, double initial_voltage) {
  std::vector<Battery> out;
  out.reserve(layout.size());
  for (const auto& n : layout.nodes) {
    out.push_back({initial_voltage, initial_voltage, n.role == Role::Coordinator});
  }
  return out;
}

std::vector<CostClass> classify_nodes(std::span<const Battery> batteries, std::span<const Role> roles,
                                      const Route& active_route, const DecayModel& model) {
  if (roles.size() != batteries.size()) throw ValidationError("roles and batteries differ in length");
  std::vector<CostClass> out(batteries.size(), CostClass::Idle);
  for (std::size_t i = 0; i < batteries.size(); ++i) {
    out[i] = roles[i] == Role::Router ? CostClass::Maintenance : CostClass::Idle;
  }
  for (std::size_t k = 0; k < active_route.path.size(); ++k) {
    const std::size_t i = active_route.path[k].index();
    if (i >= batteries.size()) throw ValidationError("active route names a node outside the layout");
    out[i] = k + 1 == active_route.path.size() ? CostClass::Receive : CostClass::Forward;
  }
  for (std::size_t i = 0; i < batteries.size(); ++i) {
    if (batteries[i].mains_powered) {
      out[i] = CostClass::Mains;
    } else if (is_depleted(batteries[i], model.threshold) && out[i] != CostClass::Forward) {
      out[i] = CostClass::Drain;
    }
  }
  return out;
}

double class_cost(CostClass c, const DecayModel& model) noexcept {
  switch (c) {
    case CostClass::Mains: return 0.0;
    case CostClass::Forward: return model.delta_forward;
    case CostClass::Drain: return model.delta_forward;
    case CostClass::Receive: return model.delta_receive;
    case CostClass::Maintenance: return model.delta_maintenance;
    case CostClass::Idle: return model.delta_idle;
  }
  return 0.0;
}

std::vector<double> tick_costs(std::span<const Battery> batteries, std::span<const Role> roles,
                               const Route& active_route, const DecayModel& model) {
  const auto classes = classify_nodes(batteries, roles, active_route, model);
  std::vector<double> costs(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) costs[i] = class_cost(classes[i], model);
  return costs;
}

std::vector<Battery> apply_tick_costs(std::vector<Battery> batteries, std::span<const Role> roles,
                                      const Route& active_route, const DecayModel& model) {
  const auto costs = tick_costs(batteries, roles, active_route, model);
  std::vector<double> v(batteries.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = batteries[i].voltage;
  kernels::apply_decay(v, costs);
  for (std::size_t i = 0; i < v.size(); ++i) batteries[i].voltage = v[i];
  return batteries;
}

EnergyMap energy_map(std::span<const Battery> batteries, double reference) {
  if (!(reference > 0.0)) throw ValidationError("energy-map reference voltage must be positive");
  EnergyMap m;
  m.reference = reference;
  m.percent.reserve(batteries.size());
  for (const auto& b : batteries) m.percent.push_back(100.0 * b.voltage / reference);
  return m;
}

}  // namespace meshlab

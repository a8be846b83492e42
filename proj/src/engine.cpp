#include "meshlab/engine.hpp"

#include <algorithm>
#include <future>

#include "meshlab/error.hpp"
#include "meshlab/kernels.hpp"

namespace meshlab {

std::string_view to_string(ActivationReason r) noexcept {
  return r == ActivationReason::Initial ? "initial" : "failover";
}

std::string_view to_string(RunStatus s) noexcept {
  return s == RunStatus::Completed ? "completed" : "all_routes_depleted";
}

void SimConfig::validate() const {
  if (!(tick_duration > 0.0)) throw ValidationError("tick_duration must be positive");
  if (!(initial_voltage > 0.0)) throw ValidationError("initial_voltage must be positive");
  if (!(reference_voltage > 0.0)) throw ValidationError("reference_voltage must be positive");
  if (k_routes == 0) throw ValidationError("k_routes must be at least 1");
  if (sampling_stride == 0) throw ValidationError("sampling_stride must be at least 1");
  decay.validate(initial_voltage);
}

namespace {

class Simulation {
 public:
  Simulation(const NetworkLayout& layout, NodeId src, NodeId dst, const SimConfig& config,
             const std::vector<ForcedDepletion>& forced)
      : layout_(layout), config_(config), forced_(forced), batteries_(fresh_batteries(layout, config.initial_voltage)) {
    for (const auto& n : layout.nodes) roles_.push_back(n.role);
    voltages_.resize(batteries_.size());
    for (std::size_t i = 0; i < batteries_.size(); ++i) voltages_[i] = batteries_[i].voltage;
    report_.config = config;
    report_.layout = layout;
    report_.src = src;
    report_.dst = dst;
    report_.traces.resize(layout.size());
    depleted_seen_.assign(layout.size(), false);
    std::stable_sort(forced_.begin(), forced_.end(),
                     [](const ForcedDepletion& a, const ForcedDepletion& b) { return a.tick < b.tick; });
  }

  SimReport run() {
    report_.initial_candidates = discover_routes(layout_, report_.src, report_.dst, config_.k_routes);
    activate(0, report_.initial_candidates.front(), ActivationReason::Initial);
    sample(0);

    std::size_t next_forced = 0;
    bool stopped = false;
    for (std::uint64_t tick = 1; tick <= config_.total_transmissions; ++tick) {
      while (next_forced < forced_.size() && forced_[next_forced].tick <= tick) {
        const NodeId id = forced_[next_forced++].node;
        if (!batteries_[id.index()].mains_powered) voltages_[id.index()] = 0.0;
      }
      sync_batteries();

      ++report_.packets_delivered;
      const auto costs = tick_costs(batteries_, roles_, active(), config_.decay);
      kernels::apply_decay(voltages_, costs);
      sync_batteries();
      report_.ticks_executed = tick;

      record_depletions(tick);
      if (tick % config_.sampling_stride == 0) sample(tick);

      if (config_.failover && !check_active_route(tick)) {
        stopped = true;
        if (report_.sample_ticks.back() != tick) sample(tick);
        break;
      }
    }
    report_.status = stopped ? RunStatus::AllRoutesDepleted : RunStatus::Completed;

    report_.final_batteries = batteries_;
    report_.final_energy_map = energy_map(batteries_, config_.reference_voltage);
    report_.final_neighbor_table = build_neighbor_table(layout_, voltages_);
    return std::move(report_);
  }

 private:
  const Route& active() const { return report_.route_history.back().route; }

  void activate(std::uint64_t tick, Route route, ActivationReason reason) {
    const double delay = end_to_end_delay(route, config_.tick_duration);
    report_.route_history.push_back({tick, std::move(route), reason, delay});
  }

  void sync_batteries() {
    for (std::size_t i = 0; i < batteries_.size(); ++i) batteries_[i].voltage = voltages_[i];
  }

  void sample(std::uint64_t tick) {
    report_.sample_ticks.push_back(tick);
    for (std::size_t i = 0; i < voltages_.size(); ++i) report_.traces[i].push_back(voltages_[i]);
  }

  void record_depletions(std::uint64_t tick) {
    for (std::size_t i = 0; i < batteries_.size(); ++i) {
      if (!depleted_seen_[i] && is_depleted(batteries_[i], config_.decay.threshold)) {
        depleted_seen_[i] = true;
        report_.depletion_events.push_back({tick, NodeId::from_index(i)});
      }
    }
  }

  // Returns false when no admissible route remains.
  bool check_active_route(std::uint64_t tick) {
    std::vector<NodeId> failed;
    for (NodeId id : active().path) {
      if (is_depleted(batteries_[id.index()], config_.decay.threshold)) failed.push_back(id);
    }
    if (failed.empty()) return true;

    report_.failover_events.push_back({tick, failed});
    NodeSet depleted;
    for (std::size_t i = 0; i < batteries_.size(); ++i) {
      if (is_depleted(batteries_[i], config_.decay.threshold)) depleted.insert(NodeId::from_index(i));
    }
    try {
      activate(tick, on_route_failure(layout_, report_.src, report_.dst, depleted, config_.k_routes),
               ActivationReason::Failover);
      return true;
    } catch (const AllRoutesDepleted&) {
      return false;
    }
  }

  const NetworkLayout& layout_;
  const SimConfig& config_;
  std::vector<ForcedDepletion> forced_;
  std::vector<Battery> batteries_;
  std::vector<Role> roles_;
  std::vector<double> voltages_;
  std::vector<bool> depleted_seen_;
  SimReport report_;
};

}  // namespace

SimReport run(const NetworkLayout& layout, NodeId src, NodeId dst, const SimConfig& config,
              const std::vector<ForcedDepletion>& forced) {
  layout.validate();
  config.validate();
  for (const auto& f : forced) {
    if (!layout.contains(f.node)) throw ValidationError("forced depletion names an unknown node");
    if (f.tick == 0 || f.tick > config.total_transmissions) {
      throw ValidationError("forced depletion tick outside 1.." + std::to_string(config.total_transmissions));
    }
  }
  return Simulation(layout, src, dst, config, forced).run();
}

std::vector<PlacementRow> compare_placements(const std::vector<std::pair<std::string, NetworkLayout>>& layouts,
                                             NodeId src, NodeId dst, const SimConfig& config) {
  if (layouts.size() < 2) throw ValidationError("compare_placements needs at least two layouts");

  auto evaluate = [&](const std::string& label, const NetworkLayout& layout) {
    PlacementRow row;
    row.label = label;
    try {
      const SimReport rep = run(layout, src, dst, config);
      const Route& first = rep.route_history.front().route;
      row.first_route = first.to_string();
      row.first_route_distance = first.total_distance;
      row.links = first.hop_count();
      row.initial_delay = rep.route_history.front().delay;
      if (!rep.failover_events.empty()) row.first_failover_tick = rep.failover_events.front().tick;
      double sum = 0.0;
      std::size_t count = 0;
      for (const auto& b : rep.final_batteries) {
        if (b.mains_powered) continue;
        sum += b.voltage;
        ++count;
      }
      row.mean_final_voltage = count ? sum / static_cast<double>(count) : 0.0;
    } catch (const NoRoute& e) {
      row.error = e.what();
    }
    return row;
  };

  std::vector<std::future<PlacementRow>> pending;
  pending.reserve(layouts.size());
  for (const auto& [label, layout] : layouts) {
    pending.push_back(std::async(std::launch::async, evaluate, std::cref(label), std::cref(layout)));
  }
  std::vector<PlacementRow> rows;
  for (auto& f : pending) rows.push_back(f.get());

  std::stable_sort(rows.begin(), rows.end(), [](const PlacementRow& a, const PlacementRow& b) {
    if (a.error.has_value() != b.error.has_value()) return !a.error.has_value();
    if (a.error) return false;
    return a.first_route_distance < b.first_route_distance;
  });
  return rows;
}

}  // namespace meshlab

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "meshlab/engine.hpp"
#include "meshlab/scenario.hpp"
#include "meshlab/topology.hpp"

namespace meshlab {

/// Fixed-point text with round-half-up (away from zero for negatives) at
/// `decimals` places, e.g. format_fixed(122.06555, 4) == "122.0656".
std::string format_fixed(double value, int decimals);

struct TableRendering {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  /// Left-aligned columns separated by two spaces, LF line endings.
  std::string to_text() const;
  std::string to_csv() const;

  friend bool operator==(const TableRendering&, const TableRendering&) = default;
};

/// NODE / NEIGHBOURS / DISTANCES / ENERGY, sorted by (node, neighbor).
TableRendering render_neighbor_table(const NeighborTable& table);

/// Legs of each route followed by a "Sum" row naming its rank.
TableRendering render_route_summary(const std::vector<Route>& ranked);
TableRendering render_route_summary(const std::vector<RouteActivation>& history);

/// rank,path,links,intermediates,total_distance_m
TableRendering render_route_table(const std::vector<Route>& ranked);

struct RouteSumAudit {
  std::string label;
  std::string legs;  // "1-6,6-5,..."
  double recomputed = 0.0;
  std::string printed;
  /// Printed total agrees with its legs to within the printed precision.
  bool consistent = true;
};

std::vector<RouteSumAudit> audit_route_sums(const std::vector<PublishedRouteSum>& sums);
TableRendering render_route_sum_audit(const std::vector<RouteSumAudit>& audits);

/// node_id,voltage_v,percent for the final state of a run.
TableRendering render_energy_map(const SimReport& report);

TableRendering render_comparison(const std::vector<PlacementRow>& rows);

/// tick,node_id,voltage_v in long format, one row per node per sample.
TableRendering render_voltage_trace(const SimReport& report);
/// node_id,percent,x,y.
TableRendering render_energy_map_points(const SimReport& report);
/// tick,event,detail.
TableRendering render_events(const SimReport& report);
/// node,neighbor,distance_m,energy_v.
TableRendering render_neighbor_csv(const NeighborTable& table);

std::string summary_json(const SimReport& report, const std::string& label);

/// Writes voltages.csv and energy_map.csv. Throws IoError.
void emit_plot_data(const SimReport& report, const std::filesystem::path& out_dir);

/// Full run directory: voltages.csv, energy_map.csv, routes.csv, events.csv,
/// neighbors.csv, summary.json. Throws IoError.
void export_report(const SimReport& report, const std::string& label, const std::filesystem::path& out_dir);

}  // namespace meshlab

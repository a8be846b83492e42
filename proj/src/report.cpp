#include "meshlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "meshlab/error.hpp"
#include "meshlab/io.hpp"

namespace meshlab {

namespace fs = std::filesystem;

std::string format_fixed(double value, int decimals) {
  if (!std::isfinite(value)) return value != value ? "nan" : (value > 0 ? "inf" : "-inf");
  const bool negative = value < 0;
  const double scale = std::pow(10.0, decimals);
  // Half-up on the decimal scaled value; the nudge absorbs binary
  // representation error on exact halves such as 0.00005.
  const double scaled = std::floor(std::abs(value) * scale + 0.5 + 1e-9);
  auto units = static_cast<long long>(scaled);
  const auto unit = static_cast<long long>(std::llround(scale));
  std::string out = (negative && units != 0) ? "-" : "";
  out += std::to_string(units / unit);
  if (decimals > 0) {
    std::string frac = std::to_string(units % unit);
    out += '.';
    out += std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
  }
  return out;
}

std::string TableRendering::to_text() const {
  std::vector<std::size_t> width(columns.size(), 0);
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  std::string out = line(columns);
  for (const auto& r : rows) out += line(r);
  return out;
}

std::string TableRendering::to_csv() const {
  auto join = [](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += ',';
      s += cells[i];
    }
    return s + "\n";
  };
  std::string out = join(columns);
  for (const auto& r : rows) out += join(r);
  return out;
}

namespace {

std::string id(NodeId n) { return std::to_string(n.value); }

std::string rank_label(std::size_t rank) {
  static const char* names[] = {"First Route", "Second Route", "Third Route", "Fourth Route", "Fifth Route"};
  return rank < std::size(names) ? names[rank] : "Route " + std::to_string(rank + 1);
}

std::vector<NeighborRow> sorted_rows(const NeighborTable& t) {
  auto rows = t.rows;
  std::sort(rows.begin(), rows.end(), [](const NeighborRow& a, const NeighborRow& b) {
    return std::pair(a.node, a.neighbor) < std::pair(b.node, b.neighbor);
  });
  return rows;
}

void append_route(TableRendering& t, const Route& r, const std::string& label) {
  for (std::size_t i = 1; i < r.path.size(); ++i) {
    const double leg = i - 1 < r.legs.size() ? r.legs[i - 1] : 0.0;
    t.rows.push_back({id(r.path[i - 1]) + "-" + id(r.path[i]), format_fixed(leg, 4), ""});
  }
  t.rows.push_back({"Sum", format_fixed(r.total_distance, 4), label});
}

std::string tick_text(std::uint64_t t) { return std::to_string(t); }

}  // namespace

TableRendering render_neighbor_table(const NeighborTable& table) {
  TableRendering t{{"NODE", "NEIGHBOURS", "DISTANCES", "ENERGY"}, {}};
  for (const auto& r : sorted_rows(table)) {
    t.rows.push_back({id(r.node), id(r.neighbor), format_fixed(r.distance, 4), format_fixed(r.energy, 4)});
  }
  return t;
}

TableRendering render_neighbor_csv(const NeighborTable& table) {
  TableRendering t = render_neighbor_table(table);
  t.columns = {"node", "neighbor", "distance_m", "energy_v"};
  return t;
}

TableRendering render_route_summary(const std::vector<Route>& ranked) {
  TableRendering t{{"Node", "Distance", "Route"}, {}};
  for (std::size_t i = 0; i < ranked.size(); ++i) append_route(t, ranked[i], rank_label(i));
  return t;
}

TableRendering render_route_summary(const std::vector<RouteActivation>& history) {
  TableRendering t{{"Node", "Distance", "Route"}, {}};
  for (const auto& a : history) {
    const std::string label = a.reason == ActivationReason::Initial
                                  ? "Initial Route"
                                  : "Failover Route (tick " + tick_text(a.tick) + ")";
    append_route(t, a.route, label);
  }
  return t;
}

TableRendering render_route_table(const std::vector<Route>& ranked) {
  TableRendering t{{"rank", "path", "links", "intermediates", "total_distance_m"}, {}};
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& r = ranked[i];
    t.rows.push_back({std::to_string(i + 1), r.to_string(), std::to_string(r.hop_count()),
                      std::to_string(r.intermediates()), format_fixed(r.total_distance, 4)});
  }
  return t;
}

std::vector<RouteSumAudit> audit_route_sums(const std::vector<PublishedRouteSum>& sums) {
  std::vector<RouteSumAudit> out;
  for (const auto& s : sums) {
    RouteSumAudit a;
    a.label = s.label;
    a.printed = s.printed_sum;
    for (std::size_t i = 0; i < s.legs.size(); ++i) {
      if (i) a.legs += ',';
      a.legs += id(s.legs[i].a) + "-" + id(s.legs[i].b);
      a.recomputed += s.legs[i].distance;
    }
    // A printed total is consistent when it matches the recomputed sum to
    // half a unit in its last printed place, plus the legs' own rounding.
    const auto dot = s.printed_sum.find('.');
    const int places = dot == std::string::npos ? 0 : static_cast<int>(s.printed_sum.size() - dot - 1);
    const double slack = 0.5 * std::pow(10.0, -places) + 0.5e-4 * static_cast<double>(s.legs.size());
    a.consistent = std::abs(std::stod(s.printed_sum) - a.recomputed) <= slack;
    out.push_back(std::move(a));
  }
  return out;
}

TableRendering render_route_sum_audit(const std::vector<RouteSumAudit>& audits) {
  TableRendering t{{"Route", "Legs", "Recomputed", "Printed", "Note"}, {}};
  for (const auto& a : audits) {
    const std::string note =
        a.consistent ? "ok" : "printed " + a.printed + " disagrees with its legs (" + format_fixed(a.recomputed, 4) + ")";
    t.rows.push_back({a.label, a.legs, format_fixed(a.recomputed, 4), a.printed, note});
  }
  return t;
}

TableRendering render_energy_map(const SimReport& report) {
  TableRendering t{{"node_id", "voltage_v", "percent"}, {}};
  for (std::size_t i = 0; i < report.final_batteries.size(); ++i) {
    t.rows.push_back({std::to_string(i + 1), format_fixed(report.final_batteries[i].voltage, 4),
                      format_fixed(report.final_energy_map.percent[i], 3)});
  }
  return t;
}

TableRendering render_comparison(const std::vector<PlacementRow>& rows) {
  TableRendering t{{"label", "first_route", "distance_m", "links", "delay_s", "first_failover_tick", "mean_final_v"},
                   {}};
  for (const auto& r : rows) {
    if (r.error) {
      t.rows.push_back({r.label, "none", "-", "-", "-", "-", "-"});
      continue;
    }
    t.rows.push_back({r.label, r.first_route, format_fixed(r.first_route_distance, 4), std::to_string(r.links),
                      format_fixed(r.initial_delay, 4),
                      r.first_failover_tick ? tick_text(*r.first_failover_tick) : "-",
                      format_fixed(r.mean_final_voltage, 4)});
  }
  return t;
}

TableRendering render_voltage_trace(const SimReport& report) {
  TableRendering t{{"tick", "node_id", "voltage_v"}, {}};
  for (std::size_t s = 0; s < report.sample_ticks.size(); ++s) {
    for (std::size_t n = 0; n < report.traces.size(); ++n) {
      t.rows.push_back({tick_text(report.sample_ticks[s]), std::to_string(n + 1), format_fixed(report.traces[n][s], 4)});
    }
  }
  return t;
}

TableRendering render_energy_map_points(const SimReport& report) {
  TableRendering t{{"node_id", "percent", "x", "y"}, {}};
  for (std::size_t i = 0; i < report.final_energy_map.percent.size(); ++i) {
    const auto& p = report.layout.nodes[i].position;
    t.rows.push_back({std::to_string(i + 1), format_fixed(report.final_energy_map.percent[i], 3),
                      format_fixed(p.x, 4), format_fixed(p.y, 4)});
  }
  return t;
}

TableRendering render_events(const SimReport& report) {
  // Within a tick: depletions, then the failover they caused, then the new route.
  std::multimap<std::pair<std::uint64_t, int>, std::vector<std::string>> events;
  for (const auto& d : report.depletion_events) {
    events.insert({{d.tick, 0}, {tick_text(d.tick), "depleted", "node " + id(d.node)}});
  }
  for (const auto& f : report.failover_events) {
    std::string nodes;
    for (std::size_t i = 0; i < f.depleted.size(); ++i) nodes += (i ? " " : "") + id(f.depleted[i]);
    events.insert({{f.tick, 1}, {tick_text(f.tick), "route_failed", "depleted " + nodes}});
  }
  for (const auto& a : report.route_history) {
    events.insert({{a.tick, 2},
                   {tick_text(a.tick), "route_activated", a.route.to_string() + " " + std::string(to_string(a.reason))}});
  }
  if (report.status != RunStatus::Completed) {
    events.insert({{report.ticks_executed, 3},
                   {tick_text(report.ticks_executed), "terminated", std::string(to_string(report.status))}});
  }
  TableRendering t{{"tick", "event", "detail"}, {}};
  for (auto& [_, row] : events) t.rows.push_back(row);
  return t;
}

std::string summary_json(const SimReport& report, const std::string& label) {
  using nlohmann::json;
  json history = json::array();
  for (const auto& a : report.route_history) {
    json path = json::array();
    for (NodeId n : a.route.path) path.push_back(n.value);
    history.push_back({{"tick", a.tick},
                       {"path", path},
                       {"route", a.route.to_string()},
                       {"reason", std::string(to_string(a.reason))},
                       {"total_distance_m", a.route.total_distance},
                       {"links", a.route.hop_count()},
                       {"intermediates", a.route.intermediates()},
                       {"delay_s", a.delay}});
  }
  json failovers = json::array();
  for (const auto& f : report.failover_events) {
    json nodes = json::array();
    for (NodeId n : f.depleted) nodes.push_back(n.value);
    failovers.push_back({{"tick", f.tick}, {"depleted", nodes}});
  }
  json j = {{"label", label},
            {"src", report.src.value},
            {"dst", report.dst.value},
            {"status", std::string(to_string(report.status))},
            {"ticks_executed", report.ticks_executed},
            {"packets_delivered", report.packets_delivered},
            {"simulated_time_s", static_cast<double>(report.ticks_executed) * report.config.tick_duration},
            {"config", config_to_json(report.config)},
            {"route_history", history},
            {"failover_events", failovers}};
  return j.dump(2) + "\n";
}

void emit_plot_data(const SimReport& report, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  write_text(out_dir / "voltages.csv", render_voltage_trace(report).to_csv());
  write_text(out_dir / "energy_map.csv", render_energy_map_points(report).to_csv());
}

void export_report(const SimReport& report, const std::string& label, const fs::path& out_dir) {
  emit_plot_data(report, out_dir);
  write_text(out_dir / "routes.csv", render_route_table(report.initial_candidates).to_csv());
  write_text(out_dir / "events.csv", render_events(report).to_csv());
  write_text(out_dir / "neighbors.csv", render_neighbor_csv(report.final_neighbor_table).to_csv());
  write_text(out_dir / "summary.json", summary_json(report, label));
}

}  // namespace meshlab

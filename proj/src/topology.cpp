#include "meshlab/topology.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "meshlab/error.hpp"
#include "meshlab/kernels.hpp"
#include "meshlab/random.hpp"

namespace meshlab {

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::Coordinator: return "coordinator";
    case Role::Router: return "router";
    case Role::EndDevice: return "end_device";
  }
  return "unknown";
}

Role parse_role(std::string_view text) {
  if (text == "coordinator") return Role::Coordinator;
  if (text == "router") return Role::Router;
  if (text == "end_device" || text == "end-device" || text == "enddevice") return Role::EndDevice;
  throw ParseError("unknown role '" + std::string(text) + "'");
}

const Node& NetworkLayout::node(NodeId id) const {
  if (!contains(id)) {
    throw ValidationError("node " + std::to_string(id.value) + " is not in the layout");
  }
  return nodes[id.index()];
}

NodeId NetworkLayout::coordinator() const {
  for (const auto& n : nodes) {
    if (n.role == Role::Coordinator) return n.id;
  }
  throw ValidationError("layout has no coordinator");
}

RoleCensus NetworkLayout::census() const {
  RoleCensus c{0, 0, 0};
  for (const auto& n : nodes) {
    switch (n.role) {
      case Role::Coordinator: ++c.coordinators; break;
      case Role::Router: ++c.routers; break;
      case Role::EndDevice: ++c.end_devices; break;
    }
  }
  return c;
}

void NetworkLayout::validate(const std::optional<RoleCensus>& expected) const {
  if (!(area_side > 0.0)) throw ValidationError("area_side must be positive");
  if (!(radio_range > 0.0)) throw ValidationError("radio_range must be positive");
  if (nodes.empty()) throw ValidationError("layout has no nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.id.value != i + 1) {
      throw ValidationError("node ids must be 1..n in order; found id " +
                            std::to_string(n.id.value) + " at position " + std::to_string(i + 1));
    }
    const auto& p = n.position;
    if (!(p.x >= 0.0 && p.x <= area_side && p.y >= 0.0 && p.y <= area_side)) {
      throw ValidationError("node " + std::to_string(n.id.value) + " lies outside the " +
                            std::to_string(area_side) + " m area");
    }
  }
  const auto c = census();
  if (c.coordinators != 1) {
    throw ValidationError("layout must have exactly one coordinator, found " +
                          std::to_string(c.coordinators));
  }
  if (expected && c != *expected) {
    throw ValidationError("role census mismatch: expected " + std::to_string(expected->coordinators) +
                          "/" + std::to_string(expected->routers) + "/" +
                          std::to_string(expected->end_devices) + ", found " +
                          std::to_string(c.coordinators) + "/" + std::to_string(c.routers) + "/" +
                          std::to_string(c.end_devices));
  }
}

double distance(const Position& a, const Position& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

DistanceMatrix::DistanceMatrix(const NetworkLayout& layout) : n_(layout.size()), d_(n_ * n_) {
  std::vector<double> xs(n_), ys(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    xs[i] = layout.nodes[i].position.x;
    ys[i] = layout.nodes[i].position.y;
  }
  kernels::pairwise_distances(xs, ys, d_);
}

std::vector<NodeId> NeighborTable::neighbors_of(NodeId node) const {
  std::vector<NodeId> out;
  for (const auto& r : rows) {
    if (r.node == node) out.push_back(r.neighbor);
  }
  return out;
}

std::optional<NeighborRow> NeighborTable::find(NodeId node, NodeId neighbor) const {
  for (const auto& r : rows) {
    if (r.node == node && r.neighbor == neighbor) return r;
  }
  return std::nullopt;
}

NeighborTable build_neighbor_table(const NetworkLayout& layout, const std::vector<double>& voltages) {
  if (voltages.size() != layout.size()) {
    throw ValidationError("voltage vector does not match node count");
  }
  const DistanceMatrix dm(layout);
  NeighborTable table;
  for (const auto& a : layout.nodes) {
    for (const auto& b : layout.nodes) {
      if (a.id == b.id) continue;
      const double d = dm(a.id, b.id);
      if (d <= layout.radio_range) {
        table.rows.push_back({a.id, b.id, d, voltages[a.id.index()]});
      }
    }
  }
  return table;
}

Role census_role(NodeId id, std::size_t routers) noexcept {
  if (id.value == 1) return Role::Coordinator;
  if (id.value <= routers + 1) return Role::Router;
  return Role::EndDevice;
}

NetworkLayout random_layout(std::size_t node_count, std::size_t routers, std::uint64_t seed,
                            double area_side, double radio_range) {
  std::mt19937_64 rng(seed);
  NetworkLayout layout;
  layout.area_side = area_side;
  layout.radio_range = radio_range;
  layout.nodes.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) {
    const NodeId id = NodeId::from_index(i);
    const double x = uniform01(rng) * area_side;
    const double y = uniform01(rng) * area_side;
    layout.nodes.push_back({id, census_role(id, routers), {x, y}});
  }
  return layout;
}

}  // namespace meshlab

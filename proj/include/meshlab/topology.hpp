#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meshlab {

/// 1-based node identifier. Node 1 is the coordinator in the stock layouts.
struct NodeId {
  std::uint32_t value = 0;

  constexpr std::size_t index() const noexcept { return value - 1; }
  static constexpr NodeId from_index(std::size_t i) noexcept {
    return NodeId{static_cast<std::uint32_t>(i + 1)};
  }

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

enum class Role { Coordinator, Router, EndDevice };

std::string_view to_string(Role role) noexcept;
Role parse_role(std::string_view text);

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

struct Node {
  NodeId id;
  Role role = Role::EndDevice;
  Position position;

  friend bool operator==(const Node&, const Node&) = default;
};

/// Expected role counts; the stock networks have 1 / 6 / 8.
struct RoleCensus {
  std::size_t coordinators = 1;
  std::size_t routers = 6;
  std::size_t end_devices = 8;

  friend bool operator==(const RoleCensus&, const RoleCensus&) = default;
};

inline constexpr double kDefaultAreaSide = 600.0;
inline constexpr double kDefaultRadioRange = 185.0;

struct NetworkLayout {
  double area_side = kDefaultAreaSide;
  double radio_range = kDefaultRadioRange;
  // Sorted by id; nodes[i].id == i + 1.
  std::vector<Node> nodes;

  std::size_t size() const noexcept { return nodes.size(); }
  bool contains(NodeId id) const noexcept { return id.value >= 1 && id.value <= nodes.size(); }
  const Node& node(NodeId id) const;
  const Position& position(NodeId id) const { return node(id).position; }
  Role role(NodeId id) const { return node(id).role; }
  NodeId coordinator() const;
  RoleCensus census() const;

  /// Throws ValidationError naming the first violated invariant. When a census
  /// is given the role counts must match it exactly.
  void validate(const std::optional<RoleCensus>& expected = std::nullopt) const;

  friend bool operator==(const NetworkLayout&, const NetworkLayout&) = default;
};

double distance(const Position& a, const Position& b) noexcept;

/// Row-major n x n matrix of node-to-node distances.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const NetworkLayout& layout);

  std::size_t size() const noexcept { return n_; }
  double operator()(NodeId a, NodeId b) const noexcept { return d_[a.index() * n_ + b.index()]; }

 private:
  std::size_t n_;
  std::vector<double> d_;
};

struct NeighborRow {
  NodeId node;
  NodeId neighbor;
  double distance = 0.0;
  double energy = 0.0;

  friend bool operator==(const NeighborRow&, const NeighborRow&) = default;
};

struct NeighborTable {
  // Ordered by (node, neighbor).
  std::vector<NeighborRow> rows;

  std::vector<NodeId> neighbors_of(NodeId node) const;
  std::optional<NeighborRow> find(NodeId node, NodeId neighbor) const;

  friend bool operator==(const NeighborTable&, const NeighborTable&) = default;
};

/// One row per ordered in-range pair; `voltages` is indexed by node index.
NeighborTable build_neighbor_table(const NetworkLayout& layout, const std::vector<double>& voltages);

/// Uniform random placement for tests and sweeps. Node 1 is the coordinator,
/// the next `routers` nodes are routers and the rest end devices.
NetworkLayout random_layout(std::size_t node_count, std::size_t routers, std::uint64_t seed,
                            double area_side = kDefaultAreaSide,
                            double radio_range = kDefaultRadioRange);

/// Role assignment used for fitted layouts: 1 coordinator, then routers.
Role census_role(NodeId id, std::size_t routers) noexcept;

}  // namespace meshlab

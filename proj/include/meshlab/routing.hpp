#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "meshlab/energy.hpp"
#include "meshlab/route.hpp"
#include "meshlab/topology.hpp"

// Simplified AODV: request flooding with distance accumulation, replies along
// the reverse path, and ranking of loop-free routes whose intermediates are
// routers. Sequence numbers, HELLO and RERR traffic are not modeled; route
// failure is signalled by the engine's battery threshold check.
namespace meshlab {

using NodeSet = std::set<NodeId>;

/// Strict weak order used for every route ranking: distance ascending, with
/// distances equal to within 1e-6 m broken by the lexicographically smaller path.
bool route_less(const Route& a, const Route& b) noexcept;

/// Up to `k` admissible routes src -> dst ranked by `route_less`. Intermediates
/// must be routers not in `excluded`; src must be the coordinator.
/// Throws NoRoute when nothing is admissible.
std::vector<Route> discover_routes(const NetworkLayout& layout, NodeId src, NodeId dst, std::size_t k,
                                   const NodeSet& excluded = {});

struct RouteRequest {
  NodeId origin;
  NodeId destination;
  std::uint64_t request_id = 0;
  std::vector<NodeId> path_so_far;
  double accumulated_distance = 0.0;
};

/// Per-node duplicate-suppression state: (origin, request_id) pairs already handled.
using SeenSet = std::set<std::pair<NodeId, std::uint64_t>>;

struct RreqAction {
  enum class Kind { Drop, Reply, Forward };
  Kind kind = Kind::Drop;
  /// Reply: the completed route. Forward: unused.
  Route reply;
  /// Forward: the request as rebroadcast, with this node appended.
  RouteRequest forwarded;
  /// Forward: neighbors the rebroadcast reaches, sender excluded.
  std::vector<NodeId> targets;
};

/// Handles one RREQ reception at `node`. The sender is the last entry of
/// rreq.path_so_far. Nodes in `excluded` behave like non-routers.
RreqAction process_rreq(const NetworkLayout& layout, const DistanceMatrix& distances, NodeId node,
                        const RouteRequest& rreq, SeenSet& seen, const NodeSet& excluded = {});

struct FloodResult {
  std::optional<Route> reply;
  std::size_t broadcasts = 0;  // rebroadcasting nodes, origin included
  std::size_t receptions = 0;  // RREQ copies delivered to a neighbor
};

/// Floods one request from `src`. Copies propagate in order of accumulated
/// distance, so the first copy to reach `dst` is the shortest admissible route.
FloodResult flood_route_request(const NetworkLayout& layout, NodeId src, NodeId dst,
                                std::uint64_t request_id, const NodeSet& excluded = {});

/// First candidate none of whose battery-powered nodes is depleted.
/// Throws AllRoutesDepleted.
const Route& select_route(std::span<const Route> candidates, std::span<const Battery> batteries,
                          double threshold);

/// Rediscovery after the active route lost a node: depleted nodes may neither
/// forward nor terminate the route. Throws AllRoutesDepleted.
Route on_route_failure(const NetworkLayout& layout, NodeId src, NodeId dst, const NodeSet& depleted,
                       std::size_t k);

/// hop_count * per_hop_time.
double end_to_end_delay(const Route& route, double per_hop_time);

/// Ranked routes per (origin, destination) plus the active entry.
class RoutingTable {
 public:
  struct Entry {
    std::vector<Route> ranked;
    std::size_t active = 0;
  };

  void install(NodeId origin, NodeId destination, std::vector<Route> ranked, std::size_t active = 0);
  const Entry* find(NodeId origin, NodeId destination) const;
  const Route* active(NodeId origin, NodeId destination) const;

 private:
  std::map<std::pair<NodeId, NodeId>, Entry> entries_;
};

}  // namespace meshlab

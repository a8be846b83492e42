#include "meshlab/routing.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "meshlab/error.hpp"

namespace meshlab {

namespace {

// Distances are compared on a 1e-6 m grid so that sums accumulated in a
// different order still tie and fall through to the path comparison.
long long distance_key(double d) noexcept { return std::llround(d * 1e6); }

struct Graph {
  // adjacency[i] holds (neighbor index, link length), neighbors ascending.
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
};

Graph in_range_graph(const NetworkLayout& layout) {
  const DistanceMatrix dm(layout);
  Graph g;
  g.adjacency.resize(layout.size());
  for (std::size_t i = 0; i < layout.size(); ++i) {
    for (std::size_t j = 0; j < layout.size(); ++j) {
      if (i == j) continue;
      const double d = dm(NodeId::from_index(i), NodeId::from_index(j));
      if (d <= layout.radio_range) g.adjacency[i].emplace_back(j, d);
    }
  }
  return g;
}

void check_endpoints(const NetworkLayout& layout, NodeId src, NodeId dst) {
  if (!layout.contains(src)) throw ValidationError("source node " + std::to_string(src.value) + " does not exist");
  if (!layout.contains(dst)) {
    throw ValidationError("destination node " + std::to_string(dst.value) + " does not exist");
  }
  if (layout.role(src) != Role::Coordinator) {
    throw ValidationError("route source " + std::to_string(src.value) + " is not the coordinator");
  }
  if (src == dst) throw ValidationError("source and destination are the same node");
}

// Depth-first enumeration of loop-free paths with branch-and-bound against
// the current k-th best. Link lengths are positive, so a partial path whose
// distance key already exceeds the k-th best key cannot enter the list.
class KShortestSearch {
 public:
  KShortestSearch(const NetworkLayout& layout, const Graph& g, NodeId dst, std::size_t k,
                  const NodeSet& excluded)
      : layout_(layout), g_(g), dst_(dst.index()), k_(k), excluded_(excluded),
        on_path_(layout.size(), false) {}

  std::vector<Route> run(NodeId src) {
    path_.push_back(src);
    on_path_[src.index()] = true;
    extend(src.index(), 0.0);
    return std::move(best_);
  }

 private:
  bool can_forward(std::size_t i) const {
    return layout_.nodes[i].role == Role::Router && !excluded_.contains(NodeId::from_index(i));
  }

  bool pruned(double partial) const {
    return best_.size() == k_ && distance_key(partial) > distance_key(best_.back().total_distance);
  }

  void offer(Route r) {
    auto pos = std::upper_bound(best_.begin(), best_.end(), r, route_less);
    if (best_.size() == k_ && pos == best_.end()) return;
    best_.insert(pos, std::move(r));
    if (best_.size() > k_) best_.pop_back();
  }

  void extend(std::size_t u, double so_far) {
    for (const auto& [v, w] : g_.adjacency[u]) {
      if (on_path_[v]) continue;
      const double d = so_far + w;
      if (pruned(d)) continue;
      if (v == dst_) {
        Route r;
        r.path = path_;
        r.path.push_back(NodeId::from_index(v));
        r.legs = legs_;
        r.legs.push_back(w);
        r.total_distance = d;
        offer(std::move(r));
        continue;
      }
      if (!can_forward(v)) continue;
      on_path_[v] = true;
      path_.push_back(NodeId::from_index(v));
      legs_.push_back(w);
      extend(v, d);
      legs_.pop_back();
      path_.pop_back();
      on_path_[v] = false;
    }
  }

  const NetworkLayout& layout_;
  const Graph& g_;
  std::size_t dst_;
  std::size_t k_;
  const NodeSet& excluded_;
  std::vector<bool> on_path_;
  std::vector<NodeId> path_;
  std::vector<double> legs_;
  std::vector<Route> best_;
};

}  // namespace

bool route_less(const Route& a, const Route& b) noexcept {
  const auto ka = distance_key(a.total_distance), kb = distance_key(b.total_distance);
  if (ka != kb) return ka < kb;
  return a.path < b.path;
}

std::vector<Route> discover_routes(const NetworkLayout& layout, NodeId src, NodeId dst, std::size_t k,
                                   const NodeSet& excluded) {
  check_endpoints(layout, src, dst);
  if (k == 0) throw ValidationError("k must be at least 1");
  const Graph g = in_range_graph(layout);
  auto routes = KShortestSearch(layout, g, dst, k, excluded).run(src);
  if (routes.empty()) {
    throw NoRoute("no admissible route from " + std::to_string(src.value) + " to " + std::to_string(dst.value));
  }
  return routes;
}

RreqAction process_rreq(const NetworkLayout& layout, const DistanceMatrix& distances, NodeId node,
                        const RouteRequest& rreq, SeenSet& seen, const NodeSet& excluded) {
  RreqAction action;
  if (!seen.insert({rreq.origin, rreq.request_id}).second) return action;  // duplicate
  if (rreq.path_so_far.empty()) return action;

  const NodeId sender = rreq.path_so_far.back();
  const double arrived = rreq.accumulated_distance + distances(sender, node);

  if (node == rreq.destination) {
    action.kind = RreqAction::Kind::Reply;
    auto path = rreq.path_so_far;
    path.push_back(node);
    action.reply = make_route(distances, std::move(path));
    action.reply.total_distance = arrived;
    return action;
  }
  if (layout.role(node) != Role::Router || excluded.contains(node)) return action;

  action.kind = RreqAction::Kind::Forward;
  action.forwarded = rreq;
  action.forwarded.path_so_far.push_back(node);
  action.forwarded.accumulated_distance = arrived;
  for (const auto& other : layout.nodes) {
    if (other.id == node || other.id == sender) continue;
    if (distances(node, other.id) <= layout.radio_range) action.targets.push_back(other.id);
  }
  return action;
}

FloodResult flood_route_request(const NetworkLayout& layout, NodeId src, NodeId dst,
                                std::uint64_t request_id, const NodeSet& excluded) {
  check_endpoints(layout, src, dst);
  const DistanceMatrix dm(layout);
  std::vector<SeenSet> seen(layout.size());
  seen[src.index()].insert({src, request_id});

  struct InFlight {
    NodeId receiver;
    RouteRequest rreq;
    double arrival;  // accumulated distance once received
  };
  auto later = [](const InFlight& a, const InFlight& b) {
    const auto ka = distance_key(a.arrival), kb = distance_key(b.arrival);
    if (ka != kb) return ka > kb;
    auto pa = a.rreq.path_so_far, pb = b.rreq.path_so_far;
    pa.push_back(a.receiver);
    pb.push_back(b.receiver);
    return pa > pb;
  };
  std::priority_queue<InFlight, std::vector<InFlight>, decltype(later)> queue(later);

  FloodResult result;
  auto broadcast = [&](NodeId from, const RouteRequest& rreq, const std::vector<NodeId>& targets) {
    ++result.broadcasts;
    for (NodeId t : targets) queue.push({t, rreq, rreq.accumulated_distance + dm(from, t)});
  };

  RouteRequest initial{src, dst, request_id, {src}, 0.0};
  std::vector<NodeId> first_targets;
  for (const auto& n : layout.nodes) {
    if (n.id != src && dm(src, n.id) <= layout.radio_range) first_targets.push_back(n.id);
  }
  broadcast(src, initial, first_targets);

  while (!queue.empty()) {
    InFlight next = queue.top();
    queue.pop();
    ++result.receptions;
    auto action = process_rreq(layout, dm, next.receiver, next.rreq, seen[next.receiver.index()], excluded);
    switch (action.kind) {
      case RreqAction::Kind::Drop:
        break;
      case RreqAction::Kind::Reply:
        if (!result.reply) result.reply = std::move(action.reply);
        break;
      case RreqAction::Kind::Forward:
        broadcast(next.receiver, action.forwarded, action.targets);
        break;
    }
  }
  return result;
}

const Route& select_route(std::span<const Route> candidates, std::span<const Battery> batteries,
                          double threshold) {
  if (candidates.empty()) throw ValidationError("select_route needs at least one candidate");
  for (const auto& r : candidates) {
    const bool usable = std::none_of(r.path.begin(), r.path.end(), [&](NodeId id) {
      return id.index() < batteries.size() && is_depleted(batteries[id.index()], threshold);
    });
    if (usable) return r;
  }
  throw AllRoutesDepleted("every candidate route contains a depleted node");
}

Route on_route_failure(const NetworkLayout& layout, NodeId src, NodeId dst, const NodeSet& depleted,
                       std::size_t k) {
  if (depleted.contains(dst)) {
    throw AllRoutesDepleted("destination " + std::to_string(dst.value) + " is depleted");
  }
  try {
    return discover_routes(layout, src, dst, k, depleted).front();
  } catch (const NoRoute& e) {
    throw AllRoutesDepleted(std::string("no route avoids the depleted nodes (") + e.what() + ")");
  }
}

double end_to_end_delay(const Route& route, double per_hop_time) {
  if (!(per_hop_time > 0.0)) throw ValidationError("per-hop time must be positive");
  return static_cast<double>(route.hop_count()) * per_hop_time;
}

void RoutingTable::install(NodeId origin, NodeId destination, std::vector<Route> ranked, std::size_t active) {
  if (active >= ranked.size()) throw ValidationError("active route index out of range");
  entries_[{origin, destination}] = Entry{std::move(ranked), active};
}

const RoutingTable::Entry* RoutingTable::find(NodeId origin, NodeId destination) const {
  auto it = entries_.find({origin, destination});
  return it == entries_.end() ? nullptr : &it->second;
}

const Route* RoutingTable::active(NodeId origin, NodeId destination) const {
  const Entry* e = find(origin, destination);
  return e ? &e->ranked[e->active] : nullptr;
}

}  // namespace meshlab

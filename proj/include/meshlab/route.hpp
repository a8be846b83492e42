#pragma once

#include <string>
#include <vector>

#include "meshlab/topology.hpp"

namespace meshlab {

/// Loop-free path, source first and destination last.
struct Route {
  std::vector<NodeId> path;
  /// legs[i] is the length of the link path[i] -> path[i + 1].
  std::vector<double> legs;
  /// Sum of legs, accumulated in path order.
  double total_distance = 0.0;

  /// Number of links, |path| - 1. This is what "hop" means throughout.
  std::size_t hop_count() const noexcept { return path.empty() ? 0 : path.size() - 1; }
  /// Nodes strictly between source and destination.
  std::size_t intermediates() const noexcept { return path.size() < 2 ? 0 : path.size() - 2; }
  NodeId source() const { return path.front(); }
  NodeId destination() const { return path.back(); }
  bool contains(NodeId id) const noexcept;

  /// Dash-joined ids, e.g. "1-2-8".
  std::string to_string() const;

  friend bool operator==(const Route&, const Route&) = default;
};

/// Builds a route from a path, measuring links on `layout`.
Route make_route(const NetworkLayout& layout, std::vector<NodeId> path);
Route make_route(const DistanceMatrix& distances, std::vector<NodeId> path);

/// Parses "1-2-8".
std::vector<NodeId> parse_path(const std::string& text);

}  // namespace meshlab

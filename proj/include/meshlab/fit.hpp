#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "meshlab/topology.hpp"

namespace meshlab {

struct DistanceConstraint {
  NodeId a;
  NodeId b;
  double distance = 0.0;
};

struct FitOptions {
  /// Where node 1 is pinned. Defaults to the area center when unset.
  std::optional<Position> anchor;
  double radio_range = kDefaultRadioRange;
  std::size_t routers = 6;
  /// Total node count; 0 means the largest id seen in the constraints.
  std::size_t node_count = 0;
  /// Largest accepted |measured - target| over all constraints, meters.
  double tolerance = 1e-3;
  std::size_t max_starts = 64;
  std::size_t max_iterations = 400;
};

/// Recovers node coordinates from pairwise distances by multi-start
/// Levenberg-Marquardt on the squared residuals, node 1 pinned at the anchor
/// and every other node kept inside the square area. Nodes that no constraint
/// mentions keep their random start position. Deterministic for a given seed.
///
/// Throws NoFeasibleLayout when no start reaches `tolerance`, ValidationError
/// for malformed input (non-positive distance, self-pair, constrained nodes
/// not connected to node 1).
NetworkLayout fit_layout(std::span<const DistanceConstraint> constraints, double area_side,
                         std::uint64_t seed, const FitOptions& options = {});

/// Largest |measured - target| over the constraints.
double max_residual(const NetworkLayout& layout, std::span<const DistanceConstraint> constraints);

/// CSV with columns node_a,node_b,distance_m. Blank lines and lines starting
/// with '#' are skipped, as is a header row.
std::vector<DistanceConstraint> read_constraints_csv(const std::filesystem::path& path);

}  // namespace meshlab

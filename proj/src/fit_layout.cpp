#include "meshlab/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "meshlab/error.hpp"
#include "meshlab/random.hpp"

namespace meshlab {

namespace {

struct Problem {
  std::size_t n = 0;
  double side = 0.0;
  Position anchor;
  std::span<const DistanceConstraint> constraints;
};

// Positions are packed as [x1, y1, x2, y2, ...] over all n nodes; node 1's
// entries are never touched by the solver.
using Coords = Eigen::VectorXd;

double residual(const Coords& p, const DistanceConstraint& c) {
  const std::size_t a = c.a.index(), b = c.b.index();
  const double dx = p[2 * a] - p[2 * b];
  const double dy = p[2 * a + 1] - p[2 * b + 1];
  return std::sqrt(dx * dx + dy * dy) - c.distance;
}

double cost(const Problem& pr, const Coords& p) {
  double s = 0.0;
  for (const auto& c : pr.constraints) {
    const double r = residual(p, c);
    s += r * r;
  }
  return s;
}

double worst(const Problem& pr, const Coords& p) {
  double w = 0.0;
  for (const auto& c : pr.constraints) w = std::max(w, std::abs(residual(p, c)));
  return w;
}

void clamp_to_area(const Problem& pr, Coords& p) {
  for (Eigen::Index i = 2; i < p.size(); ++i) p[i] = std::clamp(p[i], 0.0, pr.side);
}

// One Levenberg-Marquardt descent from `p`. Unknowns are the coordinates of
// nodes 2..n, so variable k maps to p[k + 2].
void descend(const Problem& pr, Coords& p, std::size_t max_iterations, double target) {
  const Eigen::Index m = static_cast<Eigen::Index>(2 * (pr.n - 1));
  if (m == 0) return;
  Eigen::MatrixXd jtj(m, m);
  Eigen::VectorXd jtr(m);
  double current = cost(pr, p);
  double lambda = 1e-3;

  for (std::size_t it = 0; it < max_iterations; ++it) {
    if (worst(pr, p) <= target) return;
    jtj.setZero();
    jtr.setZero();
    for (const auto& c : pr.constraints) {
      const std::size_t a = c.a.index(), b = c.b.index();
      double dx = p[2 * a] - p[2 * b];
      double dy = p[2 * a + 1] - p[2 * b + 1];
      double len = std::sqrt(dx * dx + dy * dy);
      if (len < 1e-12) {
        // Coincident points have no gradient direction; pick one.
        dx = 1.0;
        dy = 0.0;
        len = 1.0;
      }
      const double r = len - c.distance;
      const double ux = dx / len, uy = dy / len;
      // Sparse Jacobian row: +u on a's coordinates, -u on b's.
      std::array<Eigen::Index, 4> cols{};
      std::array<double, 4> vals{};
      std::size_t k = 0;
      if (a != 0) {
        cols[k] = static_cast<Eigen::Index>(2 * a - 2);
        vals[k++] = ux;
        cols[k] = static_cast<Eigen::Index>(2 * a - 1);
        vals[k++] = uy;
      }
      if (b != 0) {
        cols[k] = static_cast<Eigen::Index>(2 * b - 2);
        vals[k++] = -ux;
        cols[k] = static_cast<Eigen::Index>(2 * b - 1);
        vals[k++] = -uy;
      }
      for (std::size_t i = 0; i < k; ++i) {
        jtr[cols[i]] += vals[i] * r;
        for (std::size_t j = 0; j < k; ++j) jtj(cols[i], cols[j]) += vals[i] * vals[j];
      }
    }

    bool improved = false;
    while (lambda < 1e12) {
      Eigen::MatrixXd a = jtj;
      a.diagonal().array() += lambda;
      const Eigen::VectorXd step = a.ldlt().solve(-jtr);
      Coords trial = p;
      trial.tail(m) += step;
      clamp_to_area(pr, trial);
      const double trial_cost = cost(pr, trial);
      if (trial_cost < current) {
        p = std::move(trial);
        current = trial_cost;
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) return;
  }
}

void check_input(std::span<const DistanceConstraint> constraints, std::size_t n) {
  if (constraints.empty()) throw ValidationError("fit_layout needs at least one constraint");
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> seen(n, false);
  for (const auto& c : constraints) {
    if (c.a.value == 0 || c.b.value == 0 || c.a.value > n || c.b.value > n) {
      throw ValidationError("constraint references a node outside 1.." + std::to_string(n));
    }
    if (c.a == c.b) throw ValidationError("constraint pairs node " + std::to_string(c.a.value) + " with itself");
    if (!(c.distance > 0.0)) {
      throw ValidationError("constraint " + std::to_string(c.a.value) + "-" + std::to_string(c.b.value) +
                            " has a non-positive distance");
    }
    seen[c.a.index()] = seen[c.b.index()] = true;
    parent[find(c.a.index())] = find(c.b.index());
  }
  if (!seen[0]) throw ValidationError("constraints must include node 1 (the anchored node)");
  for (std::size_t i = 1; i < n; ++i) {
    if (seen[i] && find(i) != find(0)) {
      throw ValidationError("constraint graph is disconnected: node " + std::to_string(i + 1) +
                            " is not linked to node 1");
    }
  }
}

}  // namespace

NetworkLayout fit_layout(std::span<const DistanceConstraint> constraints, double area_side,
                         std::uint64_t seed, const FitOptions& options) {
  if (!(area_side > 0.0)) throw ValidationError("area_side must be positive");
  std::size_t n = options.node_count;
  for (const auto& c : constraints) n = std::max<std::size_t>({n, c.a.value, c.b.value});
  check_input(constraints, n);

  const Position anchor = options.anchor.value_or(Position{area_side / 2, area_side / 2});
  if (anchor.x < 0 || anchor.x > area_side || anchor.y < 0 || anchor.y > area_side) {
    throw ValidationError("anchor lies outside the area");
  }

  const Problem pr{n, area_side, anchor, constraints};
  // Aim well below the acceptance tolerance so exported 4-decimal values are stable.
  const double target = options.tolerance * 1e-3;

  std::mt19937_64 rng(seed);
  Coords best;
  double best_worst = std::numeric_limits<double>::infinity();
  for (std::size_t start = 0; start < std::max<std::size_t>(options.max_starts, 1); ++start) {
    Coords p(static_cast<Eigen::Index>(2 * n));
    p[0] = anchor.x;
    p[1] = anchor.y;
    for (Eigen::Index i = 2; i < p.size(); ++i) p[i] = uniform01(rng) * area_side;
    descend(pr, p, options.max_iterations, target);
    const double w = worst(pr, p);
    if (w < best_worst) {
      best_worst = w;
      best = p;
    }
    if (best_worst <= target) break;
  }

  if (!(best_worst <= options.tolerance)) {
    std::ostringstream msg;
    msg << "best residual " << best_worst << " m exceeds tolerance " << options.tolerance << " m after "
        << options.max_starts << " starts";
    throw NoFeasibleLayout(msg.str());
  }

  NetworkLayout layout;
  layout.area_side = area_side;
  layout.radio_range = options.radio_range;
  for (std::size_t i = 0; i < n; ++i) {
    const NodeId id = NodeId::from_index(i);
    layout.nodes.push_back({id, census_role(id, options.routers), {best[2 * i], best[2 * i + 1]}});
  }
  return layout;
}

double max_residual(const NetworkLayout& layout, std::span<const DistanceConstraint> constraints) {
  double w = 0.0;
  for (const auto& c : constraints) {
    w = std::max(w, std::abs(distance(layout.position(c.a), layout.position(c.b)) - c.distance));
  }
  return w;
}

std::vector<DistanceConstraint> read_constraints_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open constraints file " + path.string());
  std::vector<DistanceConstraint> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!std::isdigit(static_cast<unsigned char>(line.front()))) {
      if (out.empty()) continue;  // header
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": unexpected text");
    }
    std::istringstream fields(line);
    std::string a, b, d;
    if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') || !std::getline(fields, d, ',')) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected node_a,node_b,distance_m");
    }
    try {
      out.push_back({NodeId{static_cast<std::uint32_t>(std::stoul(a))},
                     NodeId{static_cast<std::uint32_t>(std::stoul(b))}, std::stod(d)});
    } catch (const std::exception&) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": malformed number");
    }
  }
  return out;
}

}  // namespace meshlab

#include "meshlab/route.hpp"

#include <algorithm>
#include <sstream>

#include "meshlab/error.hpp"

namespace meshlab {

bool Route::contains(NodeId id) const noexcept {
  return std::find(path.begin(), path.end(), id) != path.end();
}

std::string Route::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(path[i].value);
  }
  return out;
}

Route make_route(const NetworkLayout& layout, std::vector<NodeId> path) {
  Route r;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double d = distance(layout.position(path[i - 1]), layout.position(path[i]));
    r.legs.push_back(d);
    r.total_distance += d;
  }
  r.path = std::move(path);
  return r;
}

Route make_route(const DistanceMatrix& distances, std::vector<NodeId> path) {
  Route r;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double d = distances(path[i - 1], path[i]);
    r.legs.push_back(d);
    r.total_distance += d;
  }
  r.path = std::move(path);
  return r;
}

std::vector<NodeId> parse_path(const std::string& text) {
  std::vector<NodeId> out;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, '-')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(part, &used);
      if (used != part.size() || v == 0) throw std::invalid_argument(part);
      out.push_back(NodeId{static_cast<std::uint32_t>(v)});
    } catch (const std::exception&) {
      throw ParseError("malformed path '" + text + "'");
    }
  }
  return out;
}

}  // namespace meshlab

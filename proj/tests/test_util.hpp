#pragma once

#include <vector>

#include "meshlab/route.hpp"

namespace meshlab::testing {

inline std::vector<NodeId> ids(std::initializer_list<std::uint32_t> v) {
  std::vector<NodeId> out;
  for (auto x : v) out.push_back(NodeId{x});
  return out;
}

inline std::vector<std::uint32_t> raw(const std::vector<NodeId>& path) {
  std::vector<std::uint32_t> out;
  for (auto n : path) out.push_back(n.value);
  return out;
}

}  // namespace meshlab::testing

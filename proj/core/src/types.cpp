#include "cifly/types.hpp"

#include <algorithm>
#include <iterator>

namespace cifly {

NodeSet make_node_set(std::vector<NodeId> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

NodeSet set_union(std::span<const NodeId> a, std::span<const NodeId> b) {
  NodeSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

NodeSet set_intersection(std::span<const NodeId> a,
                         std::span<const NodeId> b) {
  NodeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

NodeSet set_difference(std::span<const NodeId> a, std::span<const NodeId> b) {
  NodeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

bool intersects(std::span<const NodeId> a, std::span<const NodeId> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

bool contains(std::span<const NodeId> set, NodeId v) {
  return std::binary_search(set.begin(), set.end(), v);
}

NodeSet complement(std::span<const NodeId> set, std::size_t p) {
  NodeSet out;
  out.reserve(p - std::min(p, set.size()));
  auto it = set.begin();
  for (NodeId v = 0; v < p; ++v) {
    while (it != set.end() && *it < v) ++it;
    if (it == set.end() || *it != v) out.push_back(v);
  }
  return out;
}

NodeSet all_nodes(std::size_t p) {
  NodeSet out(p);
  for (NodeId v = 0; v < p; ++v) out[v] = v;
  return out;
}

}  // namespace cifly

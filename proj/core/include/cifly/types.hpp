#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cifly {

using NodeId = std::uint32_t;

// Sorted, duplicate-free list of nodes.
using NodeSet = std::vector<NodeId>;

NodeSet make_node_set(std::vector<NodeId> nodes);
NodeSet set_union(std::span<const NodeId> a, std::span<const NodeId> b);
NodeSet set_intersection(std::span<const NodeId> a, std::span<const NodeId> b);
NodeSet set_difference(std::span<const NodeId> a, std::span<const NodeId> b);
bool intersects(std::span<const NodeId> a, std::span<const NodeId> b);
bool contains(std::span<const NodeId> set, NodeId v);
NodeSet complement(std::span<const NodeId> set, std::size_t p);
NodeSet all_nodes(std::size_t p);

}  // namespace cifly

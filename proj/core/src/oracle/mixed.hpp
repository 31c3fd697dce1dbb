#pragma once

#include <vector>

#include "cifly/graph.hpp"

namespace cifly::oracle::detail {

// Edge end seen from the node that stores the arc: kOut is v -> to, kIn is
// v <- to.
enum class Mark { kOut, kIn, kBi, kUnd };

struct Arc {
  NodeId to;
  Mark mark;
};

inline bool head_here(Mark m) { return m == Mark::kIn || m == Mark::kBi; }
inline bool head_there(Mark m) { return m == Mark::kOut || m == Mark::kBi; }

struct Mixed {
  std::size_t p = 0;
  std::vector<std::vector<Arc>> arcs;
  std::vector<std::vector<bool>> adjacent;

  explicit Mixed(std::size_t n)
      : p(n), arcs(n), adjacent(n, std::vector<bool>(n, false)) {}
  void add(NodeId u, NodeId v, Mark from_u, Mark from_v) {
    arcs[u].push_back({v, from_u});
    arcs[v].push_back({u, from_v});
    adjacent[u][v] = adjacent[v][u] = true;
  }
};

// Built from the raw edge lists under keys "-->", "<->" and "---".
Mixed mixed_of(const Graph& g);

std::vector<bool> mask_of(const NodeSet& s, std::size_t p);
NodeSet set_of(const std::vector<bool>& mask);

// Nodes reachable from `from` along arcs whose mark is accepted, never
// entering nodes in `avoid`.
std::vector<bool> closure_along(const Mixed& m, const NodeSet& from,
                                bool (*accept)(Mark),
                                const std::vector<bool>& avoid);

void require_small(std::size_t p, std::size_t limit);

}  // namespace cifly::oracle::detail

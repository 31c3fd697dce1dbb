#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cifly/graph.hpp"
#include "cifly/types.hpp"

namespace cifly {

class BooleanMatrix {
 public:
  BooleanMatrix() = default;
  BooleanMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}
  static BooleanMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static BooleanMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t i, std::size_t j) const {
    return bits_[i * cols_ + j] != 0;
  }
  void set(std::size_t i, std::size_t j, bool v) {
    bits_[i * cols_ + j] = v ? 1 : 0;
  }

  bool operator==(const BooleanMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Topological order of the "-->" edges, or empty if a directed cycle exists
// (p > 0).
std::vector<NodeId> topological_order(const Graph& g);
bool is_acyclic(const Graph& g);

// Undirected graph (signature "---") with the skeleton of g and an edge
// between every two parents of a common child.
Graph moralize(const Graph& g);

BooleanMatrix bmm_naive(const BooleanMatrix& x, const BooleanMatrix& y);
BooleanMatrix bmm_via_moralize(const BooleanMatrix& x, const BooleanMatrix& y);

// Directed graph (DAG signature) with a -> b whenever b is reachable from a,
// a != b. Cycles are allowed in g.
Graph transitive_closure(const Graph& g);

// ADMG over the same node indices; nodes of L keep no edges.
Graph latent_projection(const Graph& g, const NodeSet& latent);
Graph tc_via_latent_projection(const Graph& g);

}  // namespace cifly

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cifly/ruletable.hpp"
#include "cifly/types.hpp"

namespace cifly {

using Edge = std::pair<NodeId, NodeId>;

struct EdgeInput {
  std::size_t p = 0;
  // Keyed by the forward token of ordered types or the token of unordered
  // types. For "A B", pair (u, v) under "A" means u -A-> v.
  std::map<std::string, std::vector<Edge>> edges;
};

class Graph {
 public:
  Graph() = default;

  std::size_t num_nodes() const { return p_; }
  // Number of stored pairs, duplicates included.
  std::size_t num_edges() const { return m_; }
  const EdgeSignature& signature() const { return signature_; }
  const EdgeInput& input() const { return input_; }

  // Nodes reached from v by one edge traversal arriving with neighbor-type n.
  std::span<const NodeId> neighbors(NodeId v, std::size_t n) const {
    std::size_t k = static_cast<std::size_t>(v) * num_types_ + n;
    return {targets_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
  }
  std::span<const NodeId> neighbors(NodeId v, std::string_view token) const;

  const std::vector<Edge>& edges(const std::string& key) const;

 private:
  friend Graph build_graph(EdgeInput input, const EdgeSignature& signature);

  std::size_t p_ = 0;
  std::size_t m_ = 0;
  std::size_t num_types_ = 0;
  EdgeSignature signature_;
  EdgeInput input_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

Graph build_graph(EdgeInput input, const EdgeSignature& signature);

// Copy of g without the listed pairs of the ordered type `type_key`.
Graph remove_directed_edges(const Graph& g, std::span<const Edge> pairs,
                            const std::string& type_key);

// The same edge lists under another signature whose keys cover g's.
Graph with_signature(const Graph& g, const EdgeSignature& signature);

Graph make_dag(std::size_t p, std::vector<Edge> directed);
Graph make_admg(std::size_t p, std::vector<Edge> directed,
                std::vector<Edge> bidirected = {});
Graph make_cpdag(std::size_t p, std::vector<Edge> directed,
                 std::vector<Edge> undirected = {});

// Bindings of a table's set symbols to node sets, with per-node membership
// masks (bit i set iff the node is in the i-th SETS symbol).
class SetAssignment {
 public:
  SetAssignment(const RuleTable& table, std::size_t p,
                const std::map<std::string, NodeSet>& sets);

  const std::vector<std::string>& symbols() const { return symbols_; }
  const NodeSet& members(std::size_t i) const { return members_[i]; }
  std::uint64_t mask(NodeId v) const { return masks_[v]; }
  std::size_t num_nodes() const { return masks_.size(); }

 private:
  std::vector<std::string> symbols_;
  std::vector<NodeSet> members_;
  std::vector<std::uint64_t> masks_;
};

}  // namespace cifly

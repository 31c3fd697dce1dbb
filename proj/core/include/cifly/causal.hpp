#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cifly/graph.hpp"
#include "cifly/types.hpp"

namespace cifly {

struct IvResult {
  NodeSet z;
  NodeSet w;
  bool optimal = false;

  bool operator==(const IvResult&) const = default;
};

struct IvPair {
  NodeId z;
  NodeSet w;

  bool operator==(const IvPair&) const = default;
};

// ADMG (signature "--> <--, <->") operations.
NodeSet dconnected_admg(const Graph& g, const NodeSet& x, const NodeSet& z);
bool test_dsep(const Graph& g, const NodeSet& x, const NodeSet& y,
               const NodeSet& z);
NodeSet ancestors(const Graph& g, const NodeSet& x, const NodeSet& w = {});
NodeSet descendants(const Graph& g, const NodeSet& x, const NodeSet& w = {});
NodeSet parents(const Graph& g, NodeId v);
NodeSet siblings(const Graph& g, NodeId v);

// CPDAG (signature "--> <--, ---") operations.
NodeSet possible_ancestors(const Graph& g, const NodeSet& x,
                           const NodeSet& w = {});
NodeSet possible_descendants(const Graph& g, const NodeSet& x,
                             const NodeSet& w = {});
bool adjustment_check_cpdag(const Graph& g, const NodeSet& x,
                            const NodeSet& y, const NodeSet& w);
std::size_t parent_aid(const Graph& g_true, const Graph& g_guess,
                       unsigned threads = 1);

// Instrumental variables in ADMGs.
NodeSet iv_verify_all(const Graph& g, NodeId x, const NodeSet& z,
                      const NodeSet& w);
std::optional<IvResult> iv_optimal(const Graph& g, NodeId x, NodeId y);
NodeSet closure(const Graph& g, const NodeSet& x, const NodeSet& z,
                const NodeSet& a);
std::optional<NodeSet> nearest_separator(const Graph& g, NodeId x, NodeId y,
                                         const NodeSet& r);
std::vector<IvPair> iv_find(const Graph& g, NodeId x, NodeId y,
                            bool exhaustive = false);

// an_{G,{x}}(y) intersected with de(x).
NodeSet causal_nodes(const Graph& g, NodeId x, NodeId y);
// de(causal_nodes(x, y)) together with x.
NodeSet forbidden_nodes(const Graph& g, NodeId x, NodeId y);

}  // namespace cifly

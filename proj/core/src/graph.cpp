#include "cifly/graph.hpp"

#include <algorithm>
#include <unordered_set>

#include "cifly/error.hpp"

namespace cifly {

namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

Graph build_graph(EdgeInput input, const EdgeSignature& signature) {
  const std::size_t p = input.p;
  const std::size_t nt = signature.num_neighbor_types();

  struct Arc {
    std::size_t from_type;  // neighbor-type index for u -> v
    std::size_t back_type;  // neighbor-type index for v -> u
  };
  std::vector<std::pair<const std::vector<Edge>*, Arc>> groups;
  for (const auto& [key, pairs] : input.edges) {
    auto d = signature.find_decl(key);
    if (!d) {
      throw Error(ErrorCode::kUnknownEdgeType,
                  "edge type '" + key + "' is not in signature '" +
                      signature.to_string() + "'");
    }
    const EdgeDecl& decl = signature.decls()[*d];
    std::size_t fwd = *signature.find(decl.forward);
    std::size_t back = decl.backward ? *signature.find(*decl.backward) : fwd;
    for (const Edge& e : pairs) {
      if (e.first >= p || e.second >= p) {
        throw Error(ErrorCode::kNodeOutOfRange,
                    "edge (" + std::to_string(e.first) + ", " +
                        std::to_string(e.second) + ") out of range for p=" +
                        std::to_string(p));
      }
    }
    groups.push_back({&pairs, {fwd, back}});
  }

  Graph g;
  g.p_ = p;
  g.num_types_ = nt;
  g.signature_ = signature;
  g.offsets_.assign(p * nt + 1, 0);
  std::size_t m = 0;
  for (const auto& [pairs, arc] : groups) {
    m += pairs->size();
    for (const Edge& e : *pairs) {
      ++g.offsets_[e.first * nt + arc.from_type + 1];
      ++g.offsets_[e.second * nt + arc.back_type + 1];
    }
  }
  for (std::size_t k = 1; k < g.offsets_.size(); ++k)
    g.offsets_[k] += g.offsets_[k - 1];
  g.targets_.resize(2 * m);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [pairs, arc] : groups) {
    for (const Edge& e : *pairs) {
      g.targets_[fill[e.first * nt + arc.from_type]++] = e.second;
      g.targets_[fill[e.second * nt + arc.back_type]++] = e.first;
    }
  }
  g.m_ = m;
  g.input_ = std::move(input);
  return g;
}

std::span<const NodeId> Graph::neighbors(NodeId v,
                                         std::string_view token) const {
  auto n = signature_.find(token);
  if (!n) {
    throw Error(ErrorCode::kUnknownEdgeType,
                "neighbor-type '" + std::string(token) + "' not in signature");
  }
  return neighbors(v, *n);
}

const std::vector<Edge>& Graph::edges(const std::string& key) const {
  static const std::vector<Edge> kEmpty;
  auto it = input_.edges.find(key);
  return it == input_.edges.end() ? kEmpty : it->second;
}

Graph remove_directed_edges(const Graph& g, std::span<const Edge> pairs,
                            const std::string& type_key) {
  auto d = g.signature().find_decl(type_key);
  if (!d || !g.signature().decls()[*d].ordered()) {
    throw Error(ErrorCode::kUnknownEdgeType,
                "'" + type_key + "' is not an ordered edge type");
  }
  std::unordered_set<std::uint64_t> drop;
  drop.reserve(pairs.size() * 2);
  for (const Edge& e : pairs) drop.insert(pair_key(e.first, e.second));
  EdgeInput input = g.input();
  auto it = input.edges.find(type_key);
  if (it != input.edges.end() && !drop.empty()) {
    auto& list = it->second;
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](const Edge& e) {
                                return drop.count(pair_key(e.first, e.second));
                              }),
               list.end());
  }
  return build_graph(std::move(input), g.signature());
}

Graph with_signature(const Graph& g, const EdgeSignature& signature) {
  return build_graph(g.input(), signature);
}

Graph make_dag(std::size_t p, std::vector<Edge> directed) {
  EdgeInput in{p, {}};
  in.edges["-->"] = std::move(directed);
  return build_graph(std::move(in), dag_signature());
}

Graph make_admg(std::size_t p, std::vector<Edge> directed,
                std::vector<Edge> bidirected) {
  EdgeInput in{p, {}};
  in.edges["-->"] = std::move(directed);
  in.edges["<->"] = std::move(bidirected);
  return build_graph(std::move(in), admg_signature());
}

Graph make_cpdag(std::size_t p, std::vector<Edge> directed,
                 std::vector<Edge> undirected) {
  EdgeInput in{p, {}};
  in.edges["-->"] = std::move(directed);
  in.edges["---"] = std::move(undirected);
  return build_graph(std::move(in), cpdag_signature());
}

SetAssignment::SetAssignment(const RuleTable& table, std::size_t p,
                             const std::map<std::string, NodeSet>& sets)
    : symbols_(table.sets), members_(table.sets.size()), masks_(p, 0) {
  for (const auto& [name, nodes] : sets) {
    auto i = table.find_set(name);
    if (!i) {
      throw Error(ErrorCode::kSetMismatch,
                  "set '" + name + "' is not declared by the table");
    }
    for (NodeId v : nodes) {
      if (v >= p) {
        throw Error(ErrorCode::kNodeOutOfRange,
                    "node " + std::to_string(v) + " in set '" + name +
                        "' out of range for p=" + std::to_string(p));
      }
      masks_[v] |= std::uint64_t{1} << *i;
    }
    members_[*i] = make_node_set(nodes);
  }
  for (const std::string& s : table.sets) {
    if (!sets.count(s)) {
      throw Error(ErrorCode::kSetMismatch, "no nodes given for set '" + s + "'");
    }
  }
}

}  // namespace cifly

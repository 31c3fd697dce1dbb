#include "cifly/reductions.hpp"

#include <algorithm>

#include "cifly/catalog.hpp"
#include "cifly/engine.hpp"
#include "cifly/error.hpp"

namespace cifly {

namespace {

void require_acyclic(const Graph& g) {
  if (!is_acyclic(g)) {
    throw Error(ErrorCode::kCyclicInput, "graph has a directed cycle");
  }
}

void require_dag_signature(const Graph& g) {
  if (!(g.signature() == dag_signature())) {
    throw Error(ErrorCode::kSignatureMismatch,
                "expected a directed graph with signature '--> <--', got '" +
                    g.signature().to_string() + "'");
  }
}

std::vector<Edge> dedup(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

BooleanMatrix BooleanMatrix::from_rows(
    const std::vector<std::vector<int>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BooleanMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix rows");
    }
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j] != 0);
  }
  return m;
}

BooleanMatrix BooleanMatrix::identity(std::size_t n) {
  BooleanMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

std::vector<NodeId> topological_order(const Graph& g) {
  const std::size_t p = g.num_nodes();
  std::vector<std::size_t> indegree(p, 0);
  const auto& directed = g.edges("-->");
  for (const Edge& e : directed) ++indegree[e.second];
  std::vector<NodeId> order;
  order.reserve(p);
  for (NodeId v = 0; v < p; ++v)
    if (indegree[v] == 0) order.push_back(v);
  auto fwd = g.signature().find("-->");
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!fwd) break;
    for (NodeId w : g.neighbors(order[i], *fwd))
      if (--indegree[w] == 0) order.push_back(w);
  }
  if (order.size() != p) return {};
  return order;
}

bool is_acyclic(const Graph& g) {
  return g.num_nodes() == 0 || !topological_order(g).empty();
}

Graph moralize(const Graph& g) {
  require_dag_signature(g);
  require_acyclic(g);
  const std::size_t p = g.num_nodes();
  std::vector<Edge> edges;
  for (const Edge& e : g.edges("-->"))
    edges.emplace_back(std::min(e.first, e.second),
                       std::max(e.first, e.second));
  // Worst case cubic in p: every pair of parents of every node.
  for (NodeId v = 0; v < p; ++v) {
    auto pa = g.neighbors(v, std::size_t{1});
    for (std::size_t i = 0; i < pa.size(); ++i)
      for (std::size_t j = i + 1; j < pa.size(); ++j)
        if (pa[i] != pa[j])
          edges.emplace_back(std::min(pa[i], pa[j]), std::max(pa[i], pa[j]));
  }
  EdgeInput in{p, {}};
  in.edges["---"] = dedup(std::move(edges));
  return build_graph(std::move(in), undirected_signature());
}

BooleanMatrix bmm_naive(const BooleanMatrix& x, const BooleanMatrix& y) {
  if (x.cols() != y.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot multiply " + std::to_string(x.rows()) + "x" +
                    std::to_string(x.cols()) + " by " +
                    std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
  }
  BooleanMatrix z(x.rows(), y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t k = 0; k < x.cols(); ++k)
      if (x.get(i, k))
        for (std::size_t j = 0; j < y.cols(); ++j)
          if (y.get(k, j)) z.set(i, j, true);
  return z;
}

BooleanMatrix bmm_via_moralize(const BooleanMatrix& x, const BooleanMatrix& y) {
  if (x.cols() != y.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot multiply " + std::to_string(x.rows()) + "x" +
                    std::to_string(x.cols()) + " by " +
                    std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
  }
  // Nodes a_i, then b_k, then c_j.
  const std::size_t p1 = x.rows();
  const std::size_t p2 = x.cols();
  const std::size_t p3 = y.cols();
  auto a = [](std::size_t i) { return static_cast<NodeId>(i); };
  auto b = [&](std::size_t k) { return static_cast<NodeId>(p1 + k); };
  auto c = [&](std::size_t j) { return static_cast<NodeId>(p1 + p2 + j); };
  std::vector<Edge> directed;
  for (std::size_t i = 0; i < p1; ++i)
    for (std::size_t k = 0; k < p2; ++k)
      if (x.get(i, k)) directed.emplace_back(a(i), b(k));
  for (std::size_t k = 0; k < p2; ++k)
    for (std::size_t j = 0; j < p3; ++j)
      if (y.get(k, j)) directed.emplace_back(c(j), b(k));
  Graph moral = moralize(make_dag(p1 + p2 + p3, std::move(directed)));
  BooleanMatrix z(p1, p3);
  for (const Edge& e : moral.edges("---")) {
    if (e.first < p1 && e.second >= p1 + p2) z.set(e.first, e.second - p1 - p2, true);
  }
  return z;
}

Graph transitive_closure(const Graph& g) {
  require_dag_signature(g);
  const std::size_t p = g.num_nodes();
  std::vector<Edge> edges;
  std::vector<NodeId> seen(p, 0);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < p; ++s) {
    const NodeId mark = s + 1;
    stack.assign(1, s);
    seen[s] = mark;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(v, std::size_t{0})) {
        if (seen[w] == mark) continue;
        seen[w] = mark;
        stack.push_back(w);
        edges.emplace_back(s, w);
      }
    }
    // A cycle back to s is not reported as a self-edge.
  }
  return make_dag(p, dedup(std::move(edges)));
}

Graph latent_projection(const Graph& g, const NodeSet& latent) {
  require_dag_signature(g);
  require_acyclic(g);
  const std::size_t p = g.num_nodes();
  const NodeSet l = make_node_set(latent);
  for (NodeId v : l) {
    if (v >= p) {
      throw Error(ErrorCode::kNodeOutOfRange,
                  "latent node " + std::to_string(v) + " out of range");
    }
  }
  const CompiledTable& dir = catalog::get(catalog::kLatentDir);
  const CompiledTable& bidir = catalog::get(catalog::kLatentBidir);
  std::vector<Edge> directed;
  std::vector<Edge> bidirected;
  for (NodeId s : complement(l, p)) {
    std::map<std::string, NodeSet> sets{{"S", {s}}, {"L", l}};
    for (NodeId t : reach(g, SetAssignment(dir.table(), p, sets), dir))
      if (t != s) directed.emplace_back(s, t);
    for (NodeId t : reach(g, SetAssignment(bidir.table(), p, sets), bidir))
      if (t > s) bidirected.emplace_back(s, t);
  }
  return make_admg(p, std::move(directed), dedup(std::move(bidirected)));
}

Graph tc_via_latent_projection(const Graph& g) {
  require_dag_signature(g);
  require_acyclic(g);
  // Copies v^s = v, v = p + v, v^t = 2p + v.
  const std::size_t p = g.num_nodes();
  const auto n = static_cast<NodeId>(p);
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) {
    edges.emplace_back(v, n + v);
    edges.emplace_back(n + v, 2 * n + v);
  }
  for (const Edge& e : g.edges("-->"))
    edges.emplace_back(n + e.first, n + e.second);
  NodeSet middle;
  for (NodeId v = 0; v < n; ++v) middle.push_back(n + v);
  Graph projected = latent_projection(make_dag(3 * p, std::move(edges)), middle);
  std::vector<Edge> closure;
  for (const Edge& e : projected.edges("-->")) {
    if (e.first < n && e.second >= 2 * n && e.second - 2 * n != e.first)
      closure.emplace_back(e.first, e.second - 2 * n);
  }
  return make_dag(p, dedup(std::move(closure)));
}

}  // namespace cifly

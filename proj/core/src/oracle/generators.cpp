#include <algorithm>
#include <array>
#include <map>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_set>

#include "cifly/error.hpp"
#include "cifly/oracle.hpp"
#include "mixed.hpp"

namespace cifly::oracle {

using namespace detail;

namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

std::vector<Edge> orient_by_rank(const std::vector<Edge>& skeleton,
                                 const std::vector<NodeId>& rank) {
  std::vector<Edge> out;
  out.reserve(skeleton.size());
  for (const Edge& e : skeleton) {
    if (rank[e.first] < rank[e.second]) {
      out.push_back(e);
    } else {
      out.emplace_back(e.second, e.first);
    }
  }
  return out;
}

// Sorted (a, c, b) triples a -> b <- c with a < c nonadjacent.
std::vector<std::array<NodeId, 3>> v_structures(
    std::size_t p, const std::vector<Edge>& directed,
    const std::unordered_set<std::uint64_t>& adjacent) {
  std::vector<std::vector<NodeId>> pa(p);
  for (const Edge& e : directed) pa[e.second].push_back(e.first);
  std::vector<std::array<NodeId, 3>> out;
  for (NodeId b = 0; b < p; ++b) {
    for (std::size_t i = 0; i < pa[b].size(); ++i) {
      for (std::size_t j = i + 1; j < pa[b].size(); ++j) {
        NodeId a = std::min(pa[b][i], pa[b][j]);
        NodeId c = std::max(pa[b][i], pa[b][j]);
        if (a != c && !adjacent.count(pair_key(a, c))) out.push_back({a, c, b});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Edge> random_skeleton(std::size_t p, double degree,
                                  std::mt19937_64& rng) {
  std::vector<Edge> edges;
  if (p < 2 || degree <= 0) return edges;
  const double q = std::min(1.0, degree / static_cast<double>(p - 1));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // Geometric skipping over the pairs (w, v) with w < v.
  const double log_q = std::log1p(-q);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto n = static_cast<std::int64_t>(p);
  while (v < n) {
    if (q >= 1.0) {
      ++w;
    } else {
      double r = unit(rng);
      w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    }
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return edges;
}

Graph random_instance(const GenConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<NodeId> rank(cfg.p);
  std::iota(rank.begin(), rank.end(), NodeId{0});
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<Edge> directed =
      orient_by_rank(random_skeleton(cfg.p, cfg.degree, rng), rank);
  switch (cfg.kind) {
    case GraphKind::kDag:
      return make_dag(cfg.p, std::move(directed));
    case GraphKind::kAdmg: {
      std::vector<Edge> bidirected =
          random_skeleton(cfg.p, cfg.bidirected_degree, rng);
      return make_admg(cfg.p, std::move(directed), std::move(bidirected));
    }
    case GraphKind::kCpdag: {
      Graph dag = make_dag(cfg.p, std::move(directed));
      return cfg.p <= kMaxEnumerationNodes ? enumerate_cpdag(dag)
                                           : cpdag_of(dag);
    }
  }
  throw Error(ErrorCode::kInvalidInput, "unknown graph kind");
}

Graph random_signature_graph(const EdgeSignature& sig, std::size_t p,
                             double degree, std::mt19937_64& rng) {
  EdgeInput in{p, {}};
  if (p == 0) return build_graph(std::move(in), sig);
  const std::size_t keys = sig.decls().size();
  const double mean = static_cast<double>(p) * degree / 2.0 /
                      static_cast<double>(std::max<std::size_t>(keys, 1));
  std::poisson_distribution<std::size_t> count(std::max(mean, 0.0));
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(p - 1));
  for (const EdgeDecl& d : sig.decls()) {
    auto& list = in.edges[d.forward];
    std::size_t m = count(rng);
    for (std::size_t i = 0; i < m; ++i) list.emplace_back(node(rng), node(rng));
  }
  return build_graph(std::move(in), sig);
}

SetMap random_sets(const RuleTable& table, std::size_t p, double density,
                   std::mt19937_64& rng) {
  std::bernoulli_distribution in(std::clamp(density, 0.0, 1.0));
  SetMap out;
  for (const std::string& name : table.sets) {
    NodeSet s;
    for (NodeId v = 0; v < p; ++v)
      if (in(rng)) s.push_back(v);
    out[name] = std::move(s);
  }
  return out;
}

std::vector<std::vector<Edge>> markov_equivalent_dags(const Graph& g) {
  const std::size_t p = g.num_nodes();
  require_small(p, kMaxEnumerationNodes);
  std::vector<Edge> skeleton;
  std::unordered_set<std::uint64_t> adjacent;
  for (const auto& [key, pairs] : g.input().edges) {
    for (const Edge& e : pairs) {
      if (e.first == e.second) continue;
      if (adjacent.insert(pair_key(e.first, e.second)).second)
        skeleton.push_back(e);
    }
  }
  const auto reference = v_structures(p, g.edges("-->"), adjacent);
  std::vector<NodeId> rank(p);
  std::iota(rank.begin(), rank.end(), NodeId{0});
  std::set<std::vector<Edge>> found;
  do {
    std::vector<Edge> edges = orient_by_rank(skeleton, rank);
    if (v_structures(p, edges, adjacent) != reference) continue;
    std::sort(edges.begin(), edges.end());
    found.insert(std::move(edges));
  } while (std::next_permutation(rank.begin(), rank.end()));
  return {found.begin(), found.end()};
}

Graph enumerate_cpdag(const Graph& dag) {
  const auto members = markov_equivalent_dags(dag);
  const std::size_t p = dag.num_nodes();
  std::map<std::uint64_t, std::set<Edge>> seen;
  for (const auto& edges : members)
    for (const Edge& e : edges) seen[pair_key(e.first, e.second)].insert(e);
  std::vector<Edge> directed;
  std::vector<Edge> undirected;
  for (const auto& [key, orientations] : seen) {
    if (orientations.size() == 1) {
      directed.push_back(*orientations.begin());
    } else {
      undirected.emplace_back(static_cast<NodeId>(key >> 32),
                              static_cast<NodeId>(key & 0xffffffffU));
    }
  }
  return make_cpdag(p, std::move(directed), std::move(undirected));
}

Graph cpdag_of(const Graph& dag) {
  // Orient the v-structures, then close under the first three Meek rules.
  const std::size_t p = dag.num_nodes();
  std::unordered_set<std::uint64_t> adjacent;
  std::vector<Edge> edges;
  for (const Edge& e : dag.edges("-->")) {
    if (e.first != e.second && adjacent.insert(pair_key(e.first, e.second)).second)
      edges.push_back(e);
  }
  auto adj = [&](NodeId a, NodeId b) { return adjacent.count(pair_key(a, b)) > 0; };
  std::vector<std::set<NodeId>> pa(p), ch(p), und(p);
  for (const Edge& e : edges) {
    und[e.first].insert(e.second);
    und[e.second].insert(e.first);
  }
  auto orient = [&](NodeId a, NodeId b) {
    und[a].erase(b);
    und[b].erase(a);
    ch[a].insert(b);
    pa[b].insert(a);
  };
  for (const auto& t : v_structures(p, edges, adjacent)) {
    if (und[t[0]].count(t[2])) orient(t[0], t[2]);
    if (und[t[1]].count(t[2])) orient(t[1], t[2]);
  }
  auto forced = [&](NodeId a, NodeId b) {
    for (NodeId c : pa[a])
      if (!adj(c, b)) return true;
    for (NodeId w : ch[a])
      if (pa[b].count(w)) return true;
    std::vector<NodeId> both;
    for (NodeId c : und[a])
      if (pa[b].count(c)) both.push_back(c);
    for (std::size_t i = 0; i < both.size(); ++i)
      for (std::size_t j = i + 1; j < both.size(); ++j)
        if (!adj(both[i], both[j])) return true;
    return false;
  };
  std::deque<NodeId> work(p);
  std::iota(work.begin(), work.end(), NodeId{0});
  std::vector<bool> queued(p, true);
  while (!work.empty()) {
    NodeId v = work.front();
    work.pop_front();
    queued[v] = false;
    std::vector<NodeId> candidates(und[v].begin(), und[v].end());
    for (NodeId u : candidates) {
      if (!und[v].count(u)) continue;
      NodeId a = v;
      NodeId b = u;
      if (!forced(a, b)) {
        std::swap(a, b);
        if (!forced(a, b)) continue;
      }
      orient(a, b);
      for (NodeId t : {a, b}) {
        if (!queued[t]) {
          queued[t] = true;
          work.push_back(t);
        }
      }
    }
  }
  std::vector<Edge> directed;
  std::vector<Edge> undirected;
  for (NodeId v = 0; v < p; ++v) {
    for (NodeId c : ch[v]) directed.emplace_back(v, c);
    for (NodeId u : und[v])
      if (v < u) undirected.emplace_back(v, u);
  }
  return make_cpdag(p, std::move(directed), std::move(undirected));
}

}  // namespace cifly::oracle

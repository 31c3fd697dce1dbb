#include "cifly/causal.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "cifly/catalog.hpp"
#include "cifly/engine.hpp"
#include "cifly/error.hpp"

namespace cifly {

namespace {

using SetMap = std::map<std::string, NodeSet>;

NodeSet run(const Graph& g, std::string_view table, const SetMap& sets) {
  const CompiledTable& ct = catalog::get(table);
  return reach(g, SetAssignment(ct.table(), g.num_nodes(), sets), ct);
}

void require_disjoint(std::initializer_list<const NodeSet*> sets,
                      std::string_view what) {
  for (auto i = sets.begin(); i != sets.end(); ++i) {
    for (auto j = std::next(i); j != sets.end(); ++j) {
      if (intersects(**i, **j)) {
        throw Error(ErrorCode::kOverlappingSets,
                    std::string(what) + " must be pairwise disjoint");
      }
    }
  }
}

void require_node(const Graph& g, NodeId v) {
  if (v >= g.num_nodes()) {
    throw Error(ErrorCode::kNodeOutOfRange,
                "node " + std::to_string(v) + " out of range for p=" +
                    std::to_string(g.num_nodes()));
  }
}

}  // namespace

NodeSet dconnected_admg(const Graph& g, const NodeSet& x, const NodeSet& z) {
  NodeSet xs = make_node_set(x);
  NodeSet zs = make_node_set(z);
  require_disjoint({&xs, &zs}, "X and Z");
  return run(g, catalog::kAdmgDsep, {{"X", xs}, {"Z", zs}});
}

bool test_dsep(const Graph& g, const NodeSet& x, const NodeSet& y,
               const NodeSet& z) {
  NodeSet xs = make_node_set(x);
  NodeSet ys = make_node_set(y);
  NodeSet zs = make_node_set(z);
  require_disjoint({&xs, &ys, &zs}, "X, Y and Z");
  return !intersects(ys, dconnected_admg(g, xs, zs));
}

NodeSet ancestors(const Graph& g, const NodeSet& x, const NodeSet& w) {
  NodeSet xs = make_node_set(x);
  NodeSet ws = make_node_set(w);
  require_disjoint({&xs, &ws}, "X and W");
  return run(g, catalog::kAdmgAnc, {{"X", xs}, {"W", ws}});
}

NodeSet descendants(const Graph& g, const NodeSet& x, const NodeSet& w) {
  NodeSet xs = make_node_set(x);
  NodeSet ws = make_node_set(w);
  require_disjoint({&xs, &ws}, "X and W");
  return run(g, catalog::kAdmgDesc, {{"X", xs}, {"W", ws}});
}

NodeSet parents(const Graph& g, NodeId v) {
  auto n = g.neighbors(v, "<--");
  return make_node_set({n.begin(), n.end()});
}

NodeSet siblings(const Graph& g, NodeId v) {
  auto n = g.neighbors(v, "<->");
  return make_node_set({n.begin(), n.end()});
}

NodeSet possible_ancestors(const Graph& g, const NodeSet& x,
                           const NodeSet& w) {
  NodeSet xs = make_node_set(x);
  NodeSet ws = make_node_set(w);
  require_disjoint({&xs, &ws}, "X and W");
  return run(g, catalog::kCpdagPossAnc, {{"X", xs}, {"W", ws}});
}

NodeSet possible_descendants(const Graph& g, const NodeSet& x,
                             const NodeSet& w) {
  NodeSet xs = make_node_set(x);
  NodeSet ws = make_node_set(w);
  require_disjoint({&xs, &ws}, "X and W");
  return run(g, catalog::kCpdagPossDesc, {{"X", xs}, {"W", ws}});
}

bool adjustment_check_cpdag(const Graph& g, const NodeSet& x,
                            const NodeSet& y, const NodeSet& w) {
  NodeSet xs = make_node_set(x);
  NodeSet ys = make_node_set(y);
  NodeSet ws = make_node_set(w);
  require_disjoint({&xs, &ys, &ws}, "X, Y and W");

  NodeSet not_amenable = run(g, catalog::kCpdagNotAmenable, {{"X", xs}});
  if (intersects(ys, not_amenable)) return false;
  NodeSet anc = possible_ancestors(g, ys, xs);
  NodeSet des = possible_descendants(g, xs);
  NodeSet causal = set_intersection(anc, des);
  NodeSet forb = possible_descendants(g, causal);
  if (intersects(forb, ws)) return false;
  NodeSet connected = run(g, catalog::kCpdagBackdoor,
                          {{"X", xs}, {"W", ws}, {"C", causal}});
  return !intersects(ys, connected);
}

std::size_t parent_aid(const Graph& g_true, const Graph& g_guess,
                       unsigned threads) {
  const std::size_t p = g_true.num_nodes();
  if (g_guess.num_nodes() != p) {
    throw Error(ErrorCode::kSizeMismatch,
                "graphs have " + std::to_string(p) + " and " +
                    std::to_string(g_guess.num_nodes()) + " nodes");
  }

  auto mistakes_for = [&](NodeId x) {
    const NodeSet xs{x};
    const NodeSet pa = parents(g_guess, x);
    NodeSet nam_guess = run(g_guess, catalog::kCpdagNotAmenable, {{"X", xs}});
    NodeSet desc_true = run(g_true, catalog::kCpdagPossDesc,
                            {{"X", xs}, {"W", {}}});
    NodeSet nam_true = run(g_true, catalog::kCpdagNotAmenable, {{"X", xs}});
    NodeSet nad_true = set_union(
        nam_true,
        set_union(run(g_true, catalog::kAidForbidden, {{"X", xs}, {"W", pa}}),
                  run(g_true, catalog::kAidNonCausal,
                      {{"X", xs}, {"W", pa}})));
    std::size_t count = 0;
    for (NodeId y = 0; y < p; ++y) {
      if (y == x) continue;
      if (contains(pa, y)) {
        count += contains(desc_true, y);
      } else if (contains(nam_guess, y)) {
        count += !contains(nam_true, y);
      } else {
        count += contains(nad_true, y);
      }
    }
    return count;
  };

  if (threads <= 1 || p < 2) {
    std::size_t total = 0;
    for (NodeId x = 0; x < p; ++x) total += mistakes_for(x);
    return total;
  }
  std::vector<std::size_t> counts(p, 0);
  std::atomic<NodeId> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        for (NodeId x = next++; x < p; x = next++) counts[x] = mistakes_for(x);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  std::size_t total = 0;
  for (std::size_t c : counts) total += c;
  return total;
}

NodeSet iv_verify_all(const Graph& g, NodeId x, const NodeSet& z,
                      const NodeSet& w) {
  require_node(g, x);
  const NodeSet xs{x};
  NodeSet zs = make_node_set(z);
  NodeSet ws = make_node_set(w);
  if (zs.empty()) throw Error(ErrorCode::kEmptyZ, "Z must be nonempty");
  require_disjoint({&xs, &zs, &ws}, "{x}, Z and W");

  if (!contains(dconnected_admg(g, zs, ws), x)) return {};
  NodeSet blocked = run(g, catalog::kIvCausalBlocked, {{"X", xs}, {"W", ws}});
  NodeSet non_causal = run(g, catalog::kIvNonCausal,
                           {{"Z", zs}, {"X", xs}, {"W", ws}});
  NodeSet excluded = set_union(set_union(blocked, non_causal),
                               set_union(set_union(ws, zs), xs));
  return complement(excluded, g.num_nodes());
}

std::optional<IvResult> iv_optimal(const Graph& g, NodeId x, NodeId y) {
  require_node(g, x);
  require_node(g, y);
  const NodeSet de = descendants(g, {x});
  if (x == y || !contains(de, y)) return std::nullopt;
  const NodeSet a = complement(de, g.num_nodes());
  const NodeSet b = set_difference(de, NodeSet{x});
  NodeSet w = run(g, catalog::kIvOptimal, {{"S", {y}}, {"A", a}, {"B", b}});
  NodeSet z = set_difference(
      run(g, catalog::kIvOptimal, {{"S", {x}}, {"A", a}, {"B", {}}}), w);
  if (z.empty()) return std::nullopt;
  bool optimal = intersects(z, set_union(parents(g, x), siblings(g, x)));
  return IvResult{std::move(z), std::move(w), optimal};
}

NodeSet closure(const Graph& g, const NodeSet& x, const NodeSet& z,
                const NodeSet& a) {
  NodeSet xs = make_node_set(x);
  NodeSet as = make_node_set(a);
  if (!set_difference(xs, as).empty()) {
    throw Error(ErrorCode::kStartOutsideA, "X must be a subset of A");
  }
  return run(g, catalog::kClosure,
             {{"X", xs}, {"Z", make_node_set(z)}, {"A", as}});
}

std::optional<NodeSet> nearest_separator(const Graph& g, NodeId x, NodeId y,
                                         const NodeSet& r) {
  require_node(g, x);
  require_node(g, y);
  const NodeSet xy = make_node_set({x, y});
  const NodeSet anc = ancestors(g, xy);
  const NodeSet z0 =
      set_difference(set_intersection(make_node_set(r), anc), xy);
  const NodeSet reached = closure(g, {x}, z0, anc);
  if (contains(reached, y)) return std::nullopt;
  return set_intersection(z0, reached);
}

NodeSet causal_nodes(const Graph& g, NodeId x, NodeId y) {
  require_node(g, x);
  require_node(g, y);
  if (x == y) return {};
  return set_intersection(ancestors(g, {y}, {x}), descendants(g, {x}));
}

NodeSet forbidden_nodes(const Graph& g, NodeId x, NodeId y) {
  NodeSet causal = causal_nodes(g, x, y);
  return set_union(descendants(g, causal), NodeSet{x});
}

std::vector<IvPair> iv_find(const Graph& g, NodeId x, NodeId y,
                            bool exhaustive) {
  require_node(g, x);
  require_node(g, y);
  std::vector<IvPair> out;
  if (x == y) return out;
  const NodeSet causal = causal_nodes(g, x, y);
  const NodeSet forb = set_union(descendants(g, causal), NodeSet{x});
  std::vector<Edge> cut;
  for (NodeId c : causal) cut.emplace_back(x, c);
  const Graph tilde = remove_directed_edges(g, cut, "-->");
  const NodeSet allowed = complement(forb, g.num_nodes());
  for (NodeId z : allowed) {
    if (z == y) continue;
    auto w = nearest_separator(tilde, y, z, allowed);
    if (!w) continue;
    if (contains(dconnected_admg(g, {z}, *w), x)) {
      out.push_back({z, std::move(*w)});
      if (!exhaustive) break;
    }
  }
  return out;
}

}  // namespace cifly

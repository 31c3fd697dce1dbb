#include <algorithm>
#include <deque>
#include <functional>

#include "cifly/error.hpp"
#include "cifly/oracle.hpp"
#include "mixed.hpp"

namespace cifly::oracle {

namespace detail {

Mixed mixed_of(const Graph& g) {
  Mixed m(g.num_nodes());
  for (const auto& [key, pairs] : g.input().edges) {
    for (const Edge& e : pairs) {
      if (key == "-->") {
        m.add(e.first, e.second, Mark::kOut, Mark::kIn);
      } else if (key == "<->") {
        m.add(e.first, e.second, Mark::kBi, Mark::kBi);
      } else if (key == "---") {
        m.add(e.first, e.second, Mark::kUnd, Mark::kUnd);
      } else {
        throw Error(ErrorCode::kUnknownEdgeType,
                    "oracle does not know edge type '" + key + "'");
      }
    }
  }
  return m;
}

std::vector<bool> mask_of(const NodeSet& s, std::size_t p) {
  std::vector<bool> m(p, false);
  for (NodeId v : s) m[v] = true;
  return m;
}

NodeSet set_of(const std::vector<bool>& mask) {
  NodeSet out;
  for (NodeId v = 0; v < mask.size(); ++v)
    if (mask[v]) out.push_back(v);
  return out;
}

std::vector<bool> closure_along(const Mixed& m, const NodeSet& from,
                                bool (*accept)(Mark),
                                const std::vector<bool>& avoid) {
  std::vector<bool> seen(m.p, false);
  std::deque<NodeId> queue;
  for (NodeId v : from) {
    if (!seen[v]) {
      seen[v] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    NodeId v = queue.front();
    queue.pop_front();
    for (const Arc& a : m.arcs[v]) {
      if (!accept(a.mark) || seen[a.to] || avoid[a.to]) continue;
      seen[a.to] = true;
      queue.push_back(a.to);
    }
  }
  return seen;
}

void require_small(std::size_t p, std::size_t limit) {
  if (p > limit) {
    throw Error(ErrorCode::kTooLarge,
                "oracle limited to " + std::to_string(limit) + " nodes, got " +
                    std::to_string(p));
  }
}

}  // namespace detail

using namespace detail;

namespace {

bool is_out(Mark m) { return m == Mark::kOut; }
bool is_in(Mark m) { return m == Mark::kIn; }
bool out_or_und(Mark m) { return m == Mark::kOut || m == Mark::kUnd; }
bool in_or_und(Mark m) { return m == Mark::kIn || m == Mark::kUnd; }

void require_disjoint(std::initializer_list<const NodeSet*> sets) {
  for (auto i = sets.begin(); i != sets.end(); ++i)
    for (auto j = std::next(i); j != sets.end(); ++j)
      if (intersects(**i, **j))
        throw Error(ErrorCode::kOverlappingSets, "sets must be disjoint");
}

// Ancestors of s (s included) along directed edges.
std::vector<bool> ancestors_of(const Mixed& m, const NodeSet& s) {
  return closure_along(m, s, is_in, std::vector<bool>(m.p, false));
}

std::vector<bool> descendants_of(const Mixed& m, const NodeSet& s) {
  return closure_along(m, s, is_out, std::vector<bool>(m.p, false));
}

// True iff some path from X to Y is open given Z: non-colliders outside Z,
// colliders in an(Z).
bool open_path_exists(const Mixed& m, const NodeSet& x, const NodeSet& y,
                      const NodeSet& z) {
  const auto in_y = mask_of(y, m.p);
  const auto in_z = mask_of(z, m.p);
  const auto an_z = ancestors_of(m, z);
  std::vector<bool> on_path(m.p, false);
  std::function<bool(NodeId, bool, bool)> extend = [&](NodeId v, bool interior,
                                                       bool head_in) {
    for (const Arc& a : m.arcs[v]) {
      if (on_path[a.to]) continue;
      if (interior) {
        bool collider = head_in && head_here(a.mark);
        if (collider ? !an_z[v] : in_z[v]) continue;
      }
      if (in_y[a.to]) return true;
      on_path[a.to] = true;
      bool found = extend(a.to, true, head_there(a.mark));
      on_path[a.to] = false;
      if (found) return true;
    }
    return false;
  };
  for (NodeId s : x) {
    on_path[s] = true;
    bool found = extend(s, false, false);
    on_path[s] = false;
    if (found) return true;
  }
  return false;
}

Graph without_edges_into(const Graph& g, NodeId x, const NodeSet& targets) {
  std::vector<Edge> directed;
  for (const Edge& e : g.edges("-->"))
    if (!(e.first == x && contains(targets, e.second))) directed.push_back(e);
  return make_admg(g.num_nodes(), std::move(directed), g.edges("<->"));
}

}  // namespace

StateSpace explicit_state_space(const Graph& g, const SetMap& sets,
                                const RuleTable& table) {
  if (!(g.signature() == table.signature)) {
    throw Error(ErrorCode::kSignatureMismatch, "signature mismatch");
  }
  const EdgeSignature& sig = table.signature;
  const std::size_t p = g.num_nodes();
  StateSpace ss;
  ss.num_types = sig.num_neighbor_types();
  ss.num_colors = table.num_colors();

  std::vector<std::uint64_t> member(p, 0);
  for (std::size_t i = 0; i < table.sets.size(); ++i) {
    auto it = sets.find(table.sets[i]);
    if (it == sets.end()) {
      throw Error(ErrorCode::kSetMismatch, "missing set " + table.sets[i]);
    }
    for (NodeId v : it->second) member.at(v) |= std::uint64_t{1} << i;
  }
  if (sets.size() != table.sets.size()) {
    throw Error(ErrorCode::kSetMismatch, "extra sets given");
  }

  for (NodeId v = 0; v < p; ++v)
    for (std::size_t n = 0; n < ss.num_types; ++n)
      for (std::size_t c = 0; c < ss.num_colors; ++c)
        ss.states.push_back({v, static_cast<std::uint32_t>(n),
                             static_cast<std::uint32_t>(c)});
  ss.successors.resize(ss.states.size());

  struct Step {
    NodeId from;
    NodeId to;
    std::size_t type;
  };
  std::vector<Step> steps;
  for (const auto& [key, pairs] : g.input().edges) {
    const EdgeDecl& decl = sig.decls()[*sig.find_decl(key)];
    std::size_t fwd = *sig.find(decl.forward);
    std::size_t back = decl.backward ? *sig.find(*decl.backward) : fwd;
    for (const Edge& e : pairs) {
      steps.push_back({e.first, e.second, fwd});
      steps.push_back({e.second, e.first, back});
    }
  }
  for (const Step& st : steps) {
    for (std::size_t n1 = 0; n1 < ss.num_types; ++n1) {
      for (std::size_t c1 = 0; c1 < ss.num_colors; ++c1) {
        for (std::size_t c2 = 0; c2 < ss.num_colors; ++c2) {
          auto r = table.first_match(n1, c1, st.type, c2);
          if (!r) continue;
          if (!table.rules[*r].expr.evaluate(member[st.from], member[st.to]))
            continue;
          ss.successors[ss.id(st.from, n1, c1)].push_back(
              ss.id(st.to, st.type, c2));
        }
      }
    }
  }
  for (const StartSpec& spec : table.starts) {
    for (NodeId v : sets.at(table.sets[spec.set]))
      for (std::size_t n = 0; n < ss.num_types; ++n)
        for (std::size_t c = 0; c < ss.num_colors; ++c)
          if (spec.state.matches(n, c)) ss.starts.push_back(ss.id(v, n, c));
  }
  return ss;
}

NodeSet explicit_reach(const Graph& g, const SetMap& sets,
                       const RuleTable& table) {
  StateSpace ss = explicit_state_space(g, sets, table);
  std::vector<bool> seen(ss.states.size(), false);
  std::deque<std::size_t> queue;
  for (std::size_t s : ss.starts) {
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t t : ss.successors[s]) {
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  std::vector<bool> out(g.num_nodes(), false);
  for (std::size_t s = 0; s < ss.states.size(); ++s) {
    if (!seen[s]) continue;
    const State& st = ss.states[s];
    for (const CasePattern& o : table.outputs)
      if (o.matches(st.neighbor_type, st.color)) out[st.node] = true;
  }
  return set_of(out);
}

bool dsep_bruteforce(const Graph& g, const NodeSet& x, const NodeSet& y,
                     const NodeSet& z) {
  require_small(g.num_nodes(), kMaxOracleNodes);
  require_disjoint({&x, &y, &z});
  return !open_path_exists(mixed_of(g), x, y, z);
}

bool amenable_oracle(const Graph& g, NodeId x, NodeId y) {
  require_small(g.num_nodes(), kMaxOracleNodes);
  const Mixed m = mixed_of(g);
  std::vector<bool> on_path(m.p, false);
  on_path[x] = true;
  // Possibly directed paths from x that start with an undirected edge.
  std::function<bool(NodeId)> extend = [&](NodeId v) {
    for (const Arc& a : m.arcs[v]) {
      if (!out_or_und(a.mark) || on_path[a.to]) continue;
      if (a.to == y) return true;
      on_path[a.to] = true;
      bool found = extend(a.to);
      on_path[a.to] = false;
      if (found) return true;
    }
    return false;
  };
  for (const Arc& a : m.arcs[x]) {
    if (a.mark != Mark::kUnd) continue;
    if (a.to == y) return false;
    on_path[a.to] = true;
    bool found = extend(a.to);
    on_path[a.to] = false;
    if (found) return false;
  }
  return true;
}

NodeSet possible_descendants_oracle(const Graph& g, NodeId x) {
  const Mixed m = mixed_of(g);
  return set_of(closure_along(m, {x}, out_or_und, std::vector<bool>(m.p)));
}

bool adjustment_oracle(const Graph& g, const NodeSet& x, const NodeSet& y,
                       const NodeSet& w) {
  require_small(g.num_nodes(), kMaxOracleNodes);
  require_disjoint({&x, &y, &w});
  const Mixed m = mixed_of(g);
  const std::size_t p = m.p;
  const auto in_x = mask_of(x, p);

  // 1. Every proper possibly directed path from X to Y starts directed.
  {
    std::vector<bool> on_path(p, false);
    const auto in_y = mask_of(y, p);
    std::function<bool(NodeId)> extend = [&](NodeId v) {
      for (const Arc& a : m.arcs[v]) {
        if (!out_or_und(a.mark) || on_path[a.to] || in_x[a.to]) continue;
        if (in_y[a.to]) return true;
        on_path[a.to] = true;
        bool found = extend(a.to);
        on_path[a.to] = false;
        if (found) return true;
      }
      return false;
    };
    for (NodeId s : x) {
      on_path[s] = true;
      for (const Arc& a : m.arcs[s]) {
        if (a.mark != Mark::kUnd || in_x[a.to]) continue;
        if (in_y[a.to]) return false;
        on_path[a.to] = true;
        bool found = extend(a.to);
        on_path[a.to] = false;
        if (found) return false;
      }
      on_path[s] = false;
    }
  }

  // 2. forb(X, Y) = possde(causal(X, Y)) together with X avoids W.
  const auto possan = closure_along(m, y, in_or_und, in_x);
  const auto possde = closure_along(m, x, out_or_und, std::vector<bool>(p));
  NodeSet causal;
  for (NodeId v = 0; v < p; ++v)
    if (possan[v] && possde[v]) causal.push_back(v);
  auto forb = closure_along(m, causal, out_or_und, std::vector<bool>(p));
  for (NodeId v : x) forb[v] = true;
  for (NodeId v : w)
    if (forb[v]) return false;

  // 3. No definite-status path from X to Y open given W once the edges
  // from X into causal nodes are removed.
  Mixed t(p);
  const auto in_causal = mask_of(causal, p);
  for (NodeId u = 0; u < p; ++u) {
    for (const Arc& a : m.arcs[u]) {
      if (a.mark == Mark::kIn) continue;  // added from the tail side
      if (a.mark == Mark::kUnd || a.mark == Mark::kBi) {
        if (u < a.to) t.add(u, a.to, a.mark, a.mark);
        continue;
      }
      if (in_x[u] && in_causal[a.to]) continue;
      t.add(u, a.to, Mark::kOut, Mark::kIn);
    }
  }
  const auto in_y = mask_of(y, p);
  const auto in_w = mask_of(w, p);
  const auto an_w = ancestors_of(t, w);
  std::vector<bool> on_path(p, false);
  // prev: previous node; prev_mark: arc mark seen from prev.
  std::function<bool(NodeId, NodeId, Mark, bool)> extend =
      [&](NodeId v, NodeId prev, Mark prev_mark, bool interior) {
        for (const Arc& a : t.arcs[v]) {
          if (on_path[a.to]) continue;
          if (interior) {
            bool into_from_prev = prev_mark == Mark::kOut;  // prev -> v
            bool out_to_prev = prev_mark == Mark::kIn;      // prev <- v
            bool collider = into_from_prev && a.mark == Mark::kIn;
            bool non_collider =
                out_to_prev || a.mark == Mark::kOut ||
                (prev_mark == Mark::kUnd && a.mark == Mark::kUnd &&
                 !t.adjacent[prev][a.to]);
            if (!collider && !non_collider) continue;
            if (collider ? !an_w[v] : in_w[v]) continue;
          }
          if (in_y[a.to]) return true;
          on_path[a.to] = true;
          bool found = extend(a.to, v, a.mark, true);
          on_path[a.to] = false;
          if (found) return true;
        }
        return false;
      };
  for (NodeId s : x) {
    on_path[s] = true;
    bool found = extend(s, s, Mark::kUnd, false);
    on_path[s] = false;
    if (found) return false;
  }
  return true;
}

bool adjustment_mec_oracle(const Graph& g, const NodeSet& x, const NodeSet& y,
                           const NodeSet& w) {
  require_disjoint({&x, &y, &w});
  const std::size_t p = g.num_nodes();
  for (const auto& edges : markov_equivalent_dags(g)) {
    Graph d = make_admg(p, edges);
    const Mixed m = mixed_of(d);
    // Proper causal nodes: descendants of X that reach Y avoiding X.
    const auto an = closure_along(m, y, is_in, mask_of(x, p));
    const auto de = descendants_of(m, x);
    NodeSet causal;
    for (NodeId v = 0; v < p; ++v)
      if (an[v] && de[v]) causal.push_back(v);
    auto forb = descendants_of(m, causal);
    for (NodeId v : x) forb[v] = true;
    for (NodeId v : w)
      if (forb[v]) return false;
    std::vector<Edge> kept;
    for (const Edge& e : edges)
      if (!(contains(x, e.first) && contains(causal, e.second)))
        kept.push_back(e);
    if (open_path_exists(mixed_of(make_admg(p, kept)), x, y, w)) return false;
  }
  return true;
}

std::size_t parent_aid_oracle(const Graph& g_true, const Graph& g_guess) {
  const std::size_t p = g_true.num_nodes();
  if (g_guess.num_nodes() != p) {
    throw Error(ErrorCode::kSizeMismatch, "graphs differ in size");
  }
  const Mixed guess = mixed_of(g_guess);
  std::size_t mistakes = 0;
  for (NodeId x = 0; x < p; ++x) {
    NodeSet pa;
    for (const Arc& a : guess.arcs[x])
      if (a.mark == Mark::kIn) pa.push_back(a.to);
    pa = make_node_set(pa);
    const NodeSet de_true = possible_descendants_oracle(g_true, x);
    for (NodeId y = 0; y < p; ++y) {
      if (y == x) continue;
      if (contains(pa, y)) {
        mistakes += contains(de_true, y);
      } else if (!amenable_oracle(g_guess, x, y)) {
        mistakes += amenable_oracle(g_true, x, y);
      } else {
        mistakes += !adjustment_oracle(g_true, {x}, {y}, pa);
      }
    }
  }
  return mistakes;
}

bool iv_valid_oracle(const Graph& g, NodeId x, NodeId y, const NodeSet& z,
                     const NodeSet& w) {
  require_small(g.num_nodes(), kMaxOracleNodes);
  const NodeSet xy = make_node_set({x, y});
  if (x == y) throw Error(ErrorCode::kOverlappingSets, "x equals y");
  require_disjoint({&xy, &z, &w});
  const Mixed m = mixed_of(g);
  const std::size_t p = m.p;
  const auto an = closure_along(m, {y}, is_in, mask_of({x}, p));
  const auto de = descendants_of(m, {x});
  NodeSet causal;
  for (NodeId v = 0; v < p; ++v)
    if (an[v] && de[v]) causal.push_back(v);
  auto forb = descendants_of(m, causal);
  forb[x] = true;
  for (NodeId v : set_union(z, w))
    if (forb[v]) return false;
  if (!open_path_exists(m, {x}, z, w)) return false;
  return !open_path_exists(mixed_of(without_edges_into(g, x, causal)), {y}, z,
                           w);
}

std::vector<IvPair> iv_exhaustive(const Graph& g, NodeId x, NodeId y) {
  const std::size_t p = g.num_nodes();
  require_small(p, 10);
  std::vector<IvPair> out;
  for (NodeId z = 0; z < p; ++z) {
    if (z == x || z == y) continue;
    NodeSet rest;
    for (NodeId v = 0; v < p; ++v)
      if (v != x && v != y && v != z) rest.push_back(v);
    for (std::size_t bits = 0; bits < (std::size_t{1} << rest.size()); ++bits) {
      NodeSet w;
      for (std::size_t i = 0; i < rest.size(); ++i)
        if (bits >> i & 1U) w.push_back(rest[i]);
      if (iv_valid_oracle(g, x, y, {z}, w)) out.push_back({z, w});
    }
  }
  return out;
}

Graph latent_projection_oracle(const Graph& g, const NodeSet& latent) {
  require_small(g.num_nodes(), kMaxOracleNodes);
  const Mixed m = mixed_of(g);
  const std::size_t p = m.p;
  const auto in_l = mask_of(latent, p);
  std::vector<Edge> directed;
  std::vector<Edge> bidirected;
  std::vector<bool> on_path(p, false);
  for (NodeId a = 0; a < p; ++a) {
    if (in_l[a]) continue;
    // Phase 0 walks up through parents, phase 1 walks down through
    // children; `up` records whether any upward step was taken.
    std::function<void(NodeId, bool, bool)> extend = [&](NodeId v, bool down,
                                                         bool up) {
      for (const Arc& arc : m.arcs[v]) {
        if (on_path[arc.to]) continue;
        bool step_down = arc.mark == Mark::kOut;
        bool step_up = arc.mark == Mark::kIn;
        if (!step_down && !step_up) continue;
        if (down && step_up) continue;
        if (!in_l[arc.to]) {
          if (step_down && !up) directed.emplace_back(a, arc.to);
          if (step_down && up && a < arc.to) bidirected.emplace_back(a, arc.to);
          continue;
        }
        on_path[arc.to] = true;
        extend(arc.to, down || step_down, up || step_up);
        on_path[arc.to] = false;
      }
    };
    on_path[a] = true;
    extend(a, false, false);
    on_path[a] = false;
  }
  auto tidy = [](std::vector<Edge> e) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
  };
  return make_admg(p, tidy(directed), tidy(bidirected));
}

Graph admg_projection_oracle(const Graph& g, const NodeSet& latent) {
  require_small(g.num_nodes(), kMaxOracleNodes);
  const Mixed m = mixed_of(g);
  const std::size_t p = m.p;
  const auto in_l = mask_of(latent, p);
  std::vector<Edge> directed;
  std::vector<Edge> bidirected;
  std::vector<bool> on_path(p, false);
  for (NodeId a = 0; a < p; ++a) {
    if (in_l[a]) continue;
    // head_at_a: arrowhead at a on the first edge; head_in: arrowhead at v
    // on the edge just taken.
    std::function<void(NodeId, bool, bool, bool)> extend =
        [&](NodeId v, bool head_at_a, bool head_in, bool all_out) {
          for (const Arc& arc : m.arcs[v]) {
            if (on_path[arc.to]) continue;
            bool first = v == a;
            if (!first && head_in && head_here(arc.mark)) continue;
            bool at_a = first ? head_here(arc.mark) : head_at_a;
            bool still_out = all_out && arc.mark == Mark::kOut;
            if (!in_l[arc.to]) {
              if (still_out) directed.emplace_back(a, arc.to);
              if (at_a && head_there(arc.mark) && a < arc.to)
                bidirected.emplace_back(a, arc.to);
              continue;
            }
            on_path[arc.to] = true;
            extend(arc.to, at_a, head_there(arc.mark), still_out);
            on_path[arc.to] = false;
          }
        };
    on_path[a] = true;
    extend(a, false, false, true);
    on_path[a] = false;
  }
  auto tidy = [](std::vector<Edge> e) {
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
  };
  return make_admg(p, tidy(directed), tidy(bidirected));
}

}  // namespace cifly::oracle

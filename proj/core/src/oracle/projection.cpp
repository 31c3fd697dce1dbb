#include <functional>

#include "cifly/error.hpp"
#include "cifly/oracle.hpp"
#include "mixed.hpp"

namespace cifly::oracle {

using namespace detail;

namespace {

bool is_out(Mark m) { return m == Mark::kOut; }
bool is_bi(Mark m) { return m == Mark::kBi; }

}  // namespace

NodeSet dis_plus(const Graph& g, const NodeSet& w, NodeId u) {
  const Mixed m = mixed_of(g);
  const auto in_w = mask_of(w, m.p);
  if (in_w[u]) return {};
  const auto dis = closure_along(m, {u}, is_bi, in_w);
  std::vector<bool> out = dis;
  for (NodeId v = 0; v < m.p; ++v) {
    if (!dis[v]) continue;
    for (const Arc& a : m.arcs[v])
      if (a.mark == Mark::kIn) out[a.to] = true;
  }
  for (NodeId v = 0; v < m.p; ++v)
    if (in_w[v]) out[v] = false;
  return set_of(out);
}

std::optional<IvResult> optimal_iv_oracle(const Graph& g, NodeId x, NodeId y) {
  require_small(g.num_nodes(), kMaxOracleNodes);
  const Mixed m = mixed_of(g);
  if (x == y) return std::nullopt;
  const auto de = closure_along(m, {x}, is_out, std::vector<bool>(m.p));
  if (!de[y]) return std::nullopt;
  NodeSet hidden;
  for (NodeId v = 0; v < m.p; ++v)
    if (de[v] && v != x && v != y) hidden.push_back(v);
  const Graph t = admg_projection_oracle(g, hidden);
  const NodeSet xy = make_node_set({x, y});
  NodeSet w = set_difference(dis_plus(t, {x}, y), xy);
  NodeSet z = set_difference(dis_plus(t, {y}, x), set_union(w, xy));
  if (z.empty()) return std::nullopt;
  const Mixed mt = mixed_of(t);
  NodeSet near;
  for (const Arc& a : mt.arcs[x])
    if (a.mark == Mark::kIn || a.mark == Mark::kBi) near.push_back(a.to);
  bool optimal = intersects(z, make_node_set(near));
  return IvResult{std::move(z), std::move(w), optimal};
}

NodeSet closure_oracle(const Graph& g, const NodeSet& x, const NodeSet& z,
                       const NodeSet& a) {
  require_small(g.num_nodes(), kMaxOracleNodes);
  if (!set_difference(make_node_set(x), make_node_set(a)).empty()) {
    throw Error(ErrorCode::kStartOutsideA, "X must be a subset of A");
  }
  const Mixed m = mixed_of(g);
  const auto in_z = mask_of(z, m.p);
  const auto in_a = mask_of(a, m.p);
  std::vector<bool> reached = mask_of(x, m.p);
  std::vector<bool> on_path(m.p, false);
  // The start node counts as a non-collider.
  std::function<void(NodeId, bool)> extend = [&](NodeId v, bool head_in) {
    for (const Arc& arc : m.arcs[v]) {
      if (on_path[arc.to] || !in_a[arc.to]) continue;
      bool collider = head_in && head_here(arc.mark);
      if (!collider && in_z[v]) continue;
      reached[arc.to] = true;
      on_path[arc.to] = true;
      extend(arc.to, head_there(arc.mark));
      on_path[arc.to] = false;
    }
  };
  for (NodeId s : make_node_set(x)) {
    on_path[s] = true;
    extend(s, false);
    on_path[s] = false;
  }
  return set_of(reached);
}

}  // namespace cifly::oracle

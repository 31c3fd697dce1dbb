#include "cifly/engine.hpp"

#include <algorithm>
#include <array>

#include "cifly/error.hpp"

namespace cifly {

namespace {

constexpr std::size_t kMaxStack = 256;

struct Workspace {
  std::vector<std::uint32_t> state_stamp;
  std::vector<std::uint32_t> node_stamp;
  std::uint32_t epoch = 0;
  std::vector<std::size_t> stack;
  std::vector<NodeId> out;

  void begin(std::size_t states, std::size_t nodes) {
    if (state_stamp.size() < states) state_stamp.resize(states, 0);
    if (node_stamp.size() < nodes) node_stamp.resize(nodes, 0);
    if (++epoch == 0) {
      std::fill(state_stamp.begin(), state_stamp.end(), 0);
      std::fill(node_stamp.begin(), node_stamp.end(), 0);
      epoch = 1;
    }
    stack.clear();
    out.clear();
  }
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

void check_inputs(const Graph& g, const SetAssignment& sets,
                  const RuleTable& table) {
  if (!(g.signature() == table.signature)) {
    throw Error(ErrorCode::kSignatureMismatch,
                "graph signature '" + g.signature().to_string() +
                    "' differs from table signature '" +
                    table.signature.to_string() + "'");
  }
  if (sets.symbols() != table.sets) {
    throw Error(ErrorCode::kSetMismatch,
                "set assignment was built for a different table");
  }
  if (sets.num_nodes() != g.num_nodes()) {
    throw Error(ErrorCode::kSizeMismatch,
                "set assignment covers " + std::to_string(sets.num_nodes()) +
                    " nodes, graph has " + std::to_string(g.num_nodes()));
  }
}

// Runs the traversal; visited states are optionally appended to `visited`.
void traverse(const Graph& g, const SetAssignment& sets,
              const CompiledTable& ct, Workspace& ws, ReachStats* stats,
              std::vector<std::size_t>* visited) {
  check_inputs(g, sets, ct.table());
  const std::size_t nt = ct.num_types();
  const std::size_t nc = ct.num_colors();
  const std::size_t per_node = nt * nc;
  ws.begin(g.num_nodes() * per_node, g.num_nodes());
  const std::uint32_t epoch = ws.epoch;
  std::uint32_t* stamp = ws.state_stamp.data();
  std::uint32_t* node_stamp = ws.node_stamp.data();
  std::uint64_t visits = 0;
  std::uint64_t evaluations = 0;

  auto mark = [&](std::size_t s, NodeId v, std::size_t n, std::size_t c) {
    stamp[s] = epoch;
    ++visits;
    ws.stack.push_back(s);
    if (visited) visited->push_back(s);
    if (ct.is_output(n, c) && node_stamp[v] != epoch) {
      node_stamp[v] = epoch;
      ws.out.push_back(v);
    }
  };

  for (const StartSpec& spec : ct.table().starts) {
    for (NodeId v : sets.members(spec.set)) {
      for (std::size_t n = 0; n < nt; ++n) {
        if (!spec.state.neighbor_types.matches(n)) continue;
        for (std::size_t c = 0; c < nc; ++c) {
          if (!spec.state.colors.matches(c)) continue;
          std::size_t s = v * per_node + n * nc + c;
          if (stamp[s] != epoch) mark(s, v, n, c);
        }
      }
    }
  }

  const TransitionIndex& index = ct.index();
  while (!ws.stack.empty()) {
    std::size_t s = ws.stack.back();
    ws.stack.pop_back();
    const NodeId v1 = static_cast<NodeId>(s / per_node);
    const std::size_t rem = s % per_node;
    const std::size_t n1 = rem / nc;
    const std::size_t c1 = rem % nc;
    const std::uint64_t m1 = sets.mask(v1);
    for (std::size_t n2 = 0; n2 < nt; ++n2) {
      if (index.row_empty(n1, c1, n2)) continue;
      const std::int32_t* row = index.row(n1, c1, n2);
      for (NodeId v2 : g.neighbors(v1, n2)) {
        const std::size_t base = v2 * per_node + n2 * nc;
        const std::uint64_t m2 = sets.mask(v2);
        for (std::size_t c2 = 0; c2 < nc; ++c2) {
          const std::int32_t r = row[c2];
          if (r == TransitionIndex::kNone) continue;
          const std::size_t s2 = base + c2;
          if (stamp[s2] == epoch) continue;
          ++evaluations;
          if (ct.evaluate(r, m1, m2)) mark(s2, v2, n2, c2);
        }
      }
    }
  }
  if (stats) {
    stats->visits = visits;
    stats->evaluations = evaluations;
  }
}

NodeSet collect_output(Workspace& ws, std::size_t p) {
  NodeSet out;
  if (ws.out.size() * 16 > p) {
    out.reserve(ws.out.size());
    for (NodeId v = 0; v < p; ++v)
      if (ws.node_stamp[v] == ws.epoch) out.push_back(v);
  } else {
    out = ws.out;
    std::sort(out.begin(), out.end());
  }
  return out;
}

std::vector<State> decode(std::vector<std::size_t> visited, std::size_t nt,
                          std::size_t nc) {
  std::sort(visited.begin(), visited.end());
  std::vector<State> out;
  out.reserve(visited.size());
  for (std::size_t s : visited) {
    std::size_t rem = s % (nt * nc);
    out.push_back({static_cast<NodeId>(s / (nt * nc)),
                   static_cast<std::uint32_t>(rem / nc),
                   static_cast<std::uint32_t>(rem % nc)});
  }
  return out;
}

}  // namespace

TransitionIndex::TransitionIndex(const RuleTable& table)
    : types_(table.num_neighbor_types()), colors_(table.num_colors()) {
  entries_.assign(types_ * colors_ * types_ * colors_, kNone);
  live_.assign(types_ * colors_ * types_, false);
  for (std::size_t n1 = 0; n1 < types_; ++n1) {
    for (std::size_t c1 = 0; c1 < colors_; ++c1) {
      for (std::size_t n2 = 0; n2 < types_; ++n2) {
        for (std::size_t c2 = 0; c2 < colors_; ++c2) {
          auto r = table.first_match(n1, c1, n2, c2);
          if (!r) continue;
          entries_[row_index(n1, c1, n2) * colors_ + c2] =
              static_cast<std::int32_t>(*r);
          live_[row_index(n1, c1, n2)] = true;
        }
      }
    }
  }
}

TransitionIndex build_transition_index(const RuleTable& table) {
  return TransitionIndex(table);
}

Program::Program(const Expression& e) { emit(e, 1); }

void Program::emit(const Expression& e, std::size_t depth) {
  using Kind = Expression::Kind;
  if (depth > kMaxStack) {
    throw Error(ErrorCode::kInvalidInput, "expression nested too deeply");
  }
  max_depth_ = std::max(max_depth_, depth);
  switch (e.kind) {
    case Kind::kMember:
      code_.push_back({Op::kMember, e.subject == Expression::Subject::kNext,
                       e.negated, static_cast<std::uint8_t>(e.set), 0});
      return;
    case Kind::kLiteral:
      code_.push_back({Op::kConst, false, e.value, 0, 0});
      return;
    case Kind::kNot:
      emit(e.children.front(), depth);
      code_.push_back({Op::kNot, false, false, 0, 1});
      return;
    case Kind::kAnd:
    case Kind::kOr:
      for (std::size_t i = 0; i < e.children.size(); ++i)
        emit(e.children[i], depth + i);
      code_.push_back({e.kind == Kind::kAnd ? Op::kAnd : Op::kOr, false, false,
                       0, static_cast<std::uint32_t>(e.children.size())});
      return;
  }
}

bool Program::run(std::uint64_t current_mask, std::uint64_t next_mask) const {
  std::array<bool, kMaxStack> stack;
  std::size_t top = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::kMember: {
        std::uint64_t m = in.next ? next_mask : current_mask;
        stack[top++] = (((m >> in.set) & 1U) != 0) != in.flag;
        break;
      }
      case Op::kConst:
        stack[top++] = in.flag;
        break;
      case Op::kNot:
        stack[top - 1] = !stack[top - 1];
        break;
      case Op::kAnd: {
        bool v = true;
        for (std::uint32_t i = 0; i < in.arity; ++i) v = stack[--top] && v;
        stack[top++] = v;
        break;
      }
      case Op::kOr: {
        bool v = false;
        for (std::uint32_t i = 0; i < in.arity; ++i) v = stack[--top] || v;
        stack[top++] = v;
        break;
      }
    }
  }
  return stack[0];
}

CompiledTable::CompiledTable(RuleTable table)
    : table_(std::move(table)),
      index_(table_),
      types_(table_.num_neighbor_types()),
      colors_(table_.num_colors()) {
  programs_.reserve(table_.rules.size());
  for (const Rule& r : table_.rules) programs_.emplace_back(r.expr);
  output_.assign(types_ * colors_, false);
  for (const CasePattern& o : table_.outputs)
    for (std::size_t n = 0; n < types_; ++n)
      for (std::size_t c = 0; c < colors_; ++c)
        if (o.matches(n, c)) output_[n * colors_ + c] = true;
}

NodeSet reach(const Graph& g, const SetAssignment& sets,
              const CompiledTable& table, ReachStats* stats) {
  Workspace& ws = workspace();
  traverse(g, sets, table, ws, stats, nullptr);
  return collect_output(ws, g.num_nodes());
}

NodeSet reach(const Graph& g, const SetAssignment& sets,
              const RuleTable& table, ReachStats* stats) {
  return reach(g, sets, CompiledTable(table), stats);
}

std::vector<State> reach_states(const Graph& g, const SetAssignment& sets,
                                const CompiledTable& table,
                                ReachStats* stats) {
  std::vector<std::size_t> visited;
  traverse(g, sets, table, workspace(), stats, &visited);
  return decode(std::move(visited), table.num_types(), table.num_colors());
}

std::vector<State> reach_states(const Graph& g, const SetAssignment& sets,
                                const RuleTable& table, ReachStats* stats) {
  return reach_states(g, sets, CompiledTable(table), stats);
}

}  // namespace cifly

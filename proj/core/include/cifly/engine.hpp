#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cifly/graph.hpp"
#include "cifly/ruletable.hpp"
#include "cifly/types.hpp"

namespace cifly {

struct State {
  NodeId node;
  std::uint32_t neighbor_type;
  std::uint32_t color;

  auto operator<=>(const State&) const = default;
};

// First matching rule for every (n1, c1, n2, c2).
class TransitionIndex {
 public:
  static constexpr std::int32_t kNone = -1;

  TransitionIndex() = default;
  explicit TransitionIndex(const RuleTable& table);

  std::int32_t rule(std::size_t n1, std::size_t c1, std::size_t n2,
                    std::size_t c2) const {
    return entries_[row_index(n1, c1, n2) * colors_ + c2];
  }
  // Entries for all c2 of one (n1, c1, n2) triple.
  const std::int32_t* row(std::size_t n1, std::size_t c1,
                          std::size_t n2) const {
    return entries_.data() + row_index(n1, c1, n2) * colors_;
  }
  bool row_empty(std::size_t n1, std::size_t c1, std::size_t n2) const {
    return !live_[row_index(n1, c1, n2)];
  }

 private:
  std::size_t row_index(std::size_t n1, std::size_t c1, std::size_t n2) const {
    return (n1 * colors_ + c1) * types_ + n2;
  }

  std::size_t types_ = 0;
  std::size_t colors_ = 0;
  std::vector<std::int32_t> entries_;
  std::vector<bool> live_;
};

TransitionIndex build_transition_index(const RuleTable& table);

// Rule expression flattened into postfix form.
class Program {
 public:
  explicit Program(const Expression& e);

  bool run(std::uint64_t current_mask, std::uint64_t next_mask) const;

 private:
  enum class Op : std::uint8_t { kMember, kConst, kNot, kAnd, kOr };
  struct Instr {
    Op op;
    bool next;     // kMember: subject is the next node
    bool flag;     // kMember: negated; kConst: value
    std::uint8_t set;
    std::uint32_t arity;
  };

  void emit(const Expression& e, std::size_t depth);

  std::vector<Instr> code_;
  std::size_t max_depth_ = 0;
};

// A rule table prepared for repeated traversal.
class CompiledTable {
 public:
  explicit CompiledTable(RuleTable table);

  const RuleTable& table() const { return table_; }
  const TransitionIndex& index() const { return index_; }
  std::size_t num_types() const { return types_; }
  std::size_t num_colors() const { return colors_; }
  bool evaluate(std::int32_t rule, std::uint64_t current_mask,
                std::uint64_t next_mask) const {
    return programs_[static_cast<std::size_t>(rule)].run(current_mask,
                                                         next_mask);
  }
  bool is_output(std::size_t n, std::size_t c) const {
    return output_[n * colors_ + c];
  }

 private:
  RuleTable table_;
  TransitionIndex index_;
  std::vector<Program> programs_;
  std::vector<bool> output_;
  std::size_t types_;
  std::size_t colors_;
};

struct ReachStats {
  std::uint64_t visits = 0;
  std::uint64_t evaluations = 0;
};

NodeSet reach(const Graph& g, const SetAssignment& sets,
              const CompiledTable& table, ReachStats* stats = nullptr);
NodeSet reach(const Graph& g, const SetAssignment& sets,
              const RuleTable& table, ReachStats* stats = nullptr);

// All visited states, sorted.
std::vector<State> reach_states(const Graph& g, const SetAssignment& sets,
                                const CompiledTable& table,
                                ReachStats* stats = nullptr);
std::vector<State> reach_states(const Graph& g, const SetAssignment& sets,
                                const RuleTable& table,
                                ReachStats* stats = nullptr);

}  // namespace cifly

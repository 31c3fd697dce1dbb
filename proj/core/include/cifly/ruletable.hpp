#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cifly {

struct EdgeDecl {
  std::string forward;
  // Present for ordered edge types only.
  std::optional<std::string> backward;

  bool ordered() const { return backward.has_value(); }
  bool operator==(const EdgeDecl&) const = default;
};

// Edge types of a graph class. Neighbor-types are numbered in declaration
// order: an ordered decl contributes its forward then backward token.
class EdgeSignature {
 public:
  EdgeSignature() = default;
  explicit EdgeSignature(std::vector<EdgeDecl> decls);

  // Parses the body of an EDGES line, e.g. "--> <--, <->".
  static EdgeSignature parse(std::string_view text);

  const std::vector<EdgeDecl>& decls() const { return decls_; }
  const std::vector<std::string>& neighbor_types() const { return tokens_; }
  std::size_t num_neighbor_types() const { return tokens_.size(); }

  std::optional<std::size_t> find(std::string_view token) const;
  // Index of the decl whose identifying token (forward or unordered token)
  // equals `key`.
  std::optional<std::size_t> find_decl(std::string_view key) const;

  std::string to_string() const;

  bool operator==(const EdgeSignature& other) const {
    return decls_ == other.decls_;
  }

 private:
  std::vector<EdgeDecl> decls_;
  std::vector<std::string> tokens_;
};

EdgeSignature dag_signature();
EdgeSignature admg_signature();
EdgeSignature cpdag_signature();
EdgeSignature undirected_signature();

// A list of neighbor-type or color indices, or the wildcard.
struct Selector {
  bool wildcard = true;
  std::vector<std::size_t> items;

  static Selector any() { return {}; }
  static Selector of(std::vector<std::size_t> items) {
    return {false, std::move(items)};
  }
  bool matches(std::size_t i) const;
  bool operator==(const Selector&) const = default;
};

struct Expression {
  enum class Kind : std::uint8_t { kMember, kLiteral, kNot, kAnd, kOr };
  enum class Subject : std::uint8_t { kCurrent, kNext };

  Kind kind = Kind::kLiteral;
  Subject subject = Subject::kCurrent;
  bool negated = false;  // "not in" for membership atoms
  bool value = true;     // literal value
  std::size_t set = 0;
  std::vector<Expression> children;

  static Expression literal(bool v);
  static Expression member(Subject s, std::size_t set, bool negated);
  static Expression unary_not(Expression e);
  static Expression conjunction(std::vector<Expression> es);
  static Expression disjunction(std::vector<Expression> es);

  // Direct tree evaluation; bit i of a mask is membership in set i.
  bool evaluate(std::uint64_t current_mask, std::uint64_t next_mask) const;

  bool operator==(const Expression&) const = default;
};

struct CasePattern {
  Selector neighbor_types;
  Selector colors;

  bool matches(std::size_t n, std::size_t c) const {
    return neighbor_types.matches(n) && colors.matches(c);
  }
  bool operator==(const CasePattern&) const = default;
};

struct Rule {
  CasePattern current;
  CasePattern next;
  Expression expr;

  bool operator==(const Rule&) const = default;
};

struct StartSpec {
  CasePattern state;
  std::size_t set = 0;

  bool operator==(const StartSpec&) const = default;
};

struct RuleTable {
  EdgeSignature signature;
  // Empty when the table has no COLORS line; one anonymous color is used then.
  std::vector<std::string> colors;
  std::vector<std::string> sets;
  std::vector<StartSpec> starts;
  std::vector<CasePattern> outputs;
  std::vector<Rule> rules;

  bool has_colors() const { return !colors.empty(); }
  std::size_t num_colors() const { return colors.empty() ? 1 : colors.size(); }
  std::size_t num_neighbor_types() const {
    return signature.num_neighbor_types();
  }
  std::optional<std::size_t> find_set(std::string_view name) const;
  std::optional<std::size_t> find_color(std::string_view name) const;
  // Index of the first rule matching (n1, c1 | n2, c2).
  std::optional<std::size_t> first_match(std::size_t n1, std::size_t c1,
                                         std::size_t n2, std::size_t c2) const;

  bool operator==(const RuleTable&) const = default;
};

RuleTable parse_rule_table(std::string_view text);
std::string format_rule_table(const RuleTable& table);

struct Diagnostic {
  enum class Kind { kShadowedRule, kUnproducibleColor, kUnreachableOutput };
  Kind kind;
  // 1-based rule or output index, or the color index.
  std::size_t index;
  std::string message;
};

std::vector<Diagnostic> validate_rule_table(const RuleTable& table);

}  // namespace cifly

#include "cifly/ruletable.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "cifly/error.hpp"

namespace cifly {

namespace {

constexpr std::size_t kMaxSets = 64;

constexpr std::array<std::string_view, 5> kDirectives = {
    "EDGES", "COLORS", "SETS", "START", "OUTPUT"};
constexpr std::array<std::string_view, 9> kReserved = {
    "AT", "in", "not", "and", "or", "true", "false", "current", "next"};

bool is_directive(std::string_view w) {
  return std::find(kDirectives.begin(), kDirectives.end(), w) !=
         kDirectives.end();
}

bool is_reserved(std::string_view w) {
  return is_directive(w) || w == "..." ||
         std::find(kReserved.begin(), kReserved.end(), w) != kReserved.end();
}

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_delim(char c) {
  return is_space(c) || c == ',' || c == '|' || c == '[' || c == ']' ||
         c == '#';
}

[[noreturn]] void fail(ErrorCode code, std::size_t line, std::size_t col,
                       const std::string& msg) {
  throw ParseError(code, line, col, msg);
}

struct Token {
  enum class Kind { kWord, kComma, kLBracket, kRBracket };
  Kind kind;
  std::string text;
  std::size_t column;  // 1-based
};

// Splits line[begin, end) into words and punctuation.
std::vector<Token> lex(std::string_view line, std::size_t begin,
                       std::size_t end, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = begin;
  while (i < end) {
    char c = line[i];
    if (is_space(c)) {
      ++i;
    } else if (c == ',') {
      out.push_back({Token::Kind::kComma, ",", i + 1});
      ++i;
    } else if (c == '[') {
      out.push_back({Token::Kind::kLBracket, "[", i + 1});
      ++i;
    } else if (c == ']') {
      out.push_back({Token::Kind::kRBracket, "]", i + 1});
      ++i;
    } else if (c == '|') {
      fail(ErrorCode::kSyntaxError, line_no, i + 1, "unexpected '|'");
    } else {
      std::size_t j = i;
      while (j < end && !is_delim(line[j])) ++j;
      out.push_back(
          {Token::Kind::kWord, std::string(line.substr(i, j - i)), i + 1});
      i = j;
    }
  }
  return out;
}

std::size_t end_column(std::string_view line, std::size_t end) {
  return std::min(end, line.size()) + 1;
}

// Parses "a, b, c" from tokens[pos..] as a comma separated word list. Stops at
// the first token that is neither a word nor a comma following a word.
std::vector<const Token*> word_list(const std::vector<Token>& toks,
                                    std::size_t& pos, std::size_t line_no,
                                    std::size_t eol_col,
                                    std::string_view what) {
  std::vector<const Token*> words;
  while (true) {
    if (pos >= toks.size() || toks[pos].kind != Token::Kind::kWord) {
      std::size_t col = pos < toks.size() ? toks[pos].column : eol_col;
      fail(ErrorCode::kSyntaxError, line_no, col,
           "expected " + std::string(what));
    }
    words.push_back(&toks[pos++]);
    if (pos < toks.size() && toks[pos].kind == Token::Kind::kComma) {
      ++pos;
      continue;
    }
    return words;
  }
}

void check_ident(const Token& t, std::size_t line_no) {
  if (is_reserved(t.text) ||
      t.text.find_first_of("()") != std::string::npos) {
    fail(ErrorCode::kSyntaxError, line_no, t.column,
         "'" + t.text + "' is not a valid identifier");
  }
}

struct RawLine {
  std::size_t number;
  std::string_view text;
  std::size_t begin;  // offset just past the directive keyword, if any
  std::size_t end;    // offset of comment start or line end
};

class TableParser {
 public:
  explicit TableParser(std::string_view text) : text_(text) {}

  RuleTable run() {
    split_lines();
    parse_header();
    for (const RawLine& l : starts_) parse_start(l);
    for (const RawLine& l : outputs_) parse_output(l);
    for (const RawLine& l : rules_) parse_rule(l);
    if (starts_.empty())
      fail(ErrorCode::kMissingDirective, 0, 0, "missing START directive");
    if (outputs_.empty())
      fail(ErrorCode::kMissingDirective, 0, 0, "missing OUTPUT directive");
    return std::move(table_);
  }

 private:
  void split_lines() {
    std::size_t pos = 0;
    std::size_t number = 0;
    while (pos <= text_.size()) {
      std::size_t nl = text_.find('\n', pos);
      if (nl == std::string_view::npos) nl = text_.size();
      ++number;
      std::string_view line = text_.substr(pos, nl - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      classify(number, line);
      if (nl == text_.size()) break;
      pos = nl + 1;
    }
  }

  void classify(std::size_t number, std::string_view line) {
    std::size_t end = std::min(line.find('#'), line.size());
    std::size_t b = 0;
    while (b < end && is_space(line[b])) ++b;
    if (b == end) return;
    std::size_t w = b;
    while (w < end && !is_delim(line[w])) ++w;
    std::string_view word = line.substr(b, w - b);
    RawLine raw{number, line, w, end};
    if (is_directive(word)) {
      if (!rules_.empty()) {
        fail(ErrorCode::kSyntaxError, number, b + 1,
             "directive " + std::string(word) + " after the first rule");
      }
      if (word == "EDGES") {
        set_once(edges_, raw, word);
      } else if (word == "COLORS") {
        set_once(colors_, raw, word);
      } else if (word == "SETS") {
        set_once(sets_, raw, word);
      } else if (word == "START") {
        starts_.push_back(raw);
      } else {
        outputs_.push_back(raw);
      }
    } else {
      raw.begin = b;
      rules_.push_back(raw);
    }
  }

  static void set_once(std::optional<RawLine>& slot, const RawLine& raw,
                       std::string_view word) {
    if (slot) {
      fail(ErrorCode::kDuplicateDirective, raw.number, 1,
           "duplicate " + std::string(word) + " directive (first on line " +
               std::to_string(slot->number) + ")");
    }
    slot = raw;
  }

  void parse_header() {
    if (!edges_)
      fail(ErrorCode::kMissingDirective, 0, 0, "missing EDGES directive");
    parse_edges(*edges_);
    if (colors_) {
      table_.colors = parse_idents(*colors_, "color name");
    }
    if (!sets_)
      fail(ErrorCode::kMissingDirective, 0, 0, "missing SETS directive");
    table_.sets = parse_idents(*sets_, "set name");
    if (table_.sets.size() > kMaxSets) {
      fail(ErrorCode::kSyntaxError, sets_->number, 1,
           "at most " + std::to_string(kMaxSets) + " sets are supported");
    }
  }

  void parse_edges(const RawLine& l) {
    auto toks = lex(l.text, l.begin, l.end, l.number);
    std::vector<EdgeDecl> decls;
    std::unordered_set<std::string> seen;
    std::size_t pos = 0;
    std::size_t eol = end_column(l.text, l.end);
    while (true) {
      std::vector<const Token*> group;
      while (pos < toks.size() && toks[pos].kind == Token::Kind::kWord) {
        group.push_back(&toks[pos++]);
      }
      if (group.empty() || group.size() > 2) {
        std::size_t col = group.empty()
                              ? (pos < toks.size() ? toks[pos].column : eol)
                              : group[2]->column;
        fail(ErrorCode::kSyntaxError, l.number, col,
             "edge declaration must have one or two tokens");
      }
      for (const Token* t : group) {
        if (is_reserved(t->text)) {
          fail(ErrorCode::kSyntaxError, l.number, t->column,
               "'" + t->text + "' cannot be a neighbor-type");
        }
        if (!seen.insert(t->text).second) {
          fail(ErrorCode::kSyntaxError, l.number, t->column,
               "duplicate neighbor-type '" + t->text + "'");
        }
      }
      EdgeDecl d{group[0]->text, std::nullopt};
      if (group.size() == 2) d.backward = group[1]->text;
      decls.push_back(std::move(d));
      if (pos == toks.size()) break;
      if (toks[pos].kind != Token::Kind::kComma) {
        fail(ErrorCode::kSyntaxError, l.number, toks[pos].column,
             "unexpected '" + toks[pos].text + "'");
      }
      ++pos;
    }
    table_.signature = EdgeSignature(std::move(decls));
  }

  std::vector<std::string> parse_idents(const RawLine& l,
                                        std::string_view what) {
    auto toks = lex(l.text, l.begin, l.end, l.number);
    std::size_t pos = 0;
    auto words = word_list(toks, pos, l.number, end_column(l.text, l.end), what);
    if (pos != toks.size()) {
      fail(ErrorCode::kSyntaxError, l.number, toks[pos].column,
           "unexpected '" + toks[pos].text + "'");
    }
    std::vector<std::string> out;
    for (const Token* t : words) {
      check_ident(*t, l.number);
      if (std::find(out.begin(), out.end(), t->text) != out.end()) {
        fail(ErrorCode::kSyntaxError, l.number, t->column,
             "duplicate " + std::string(what) + " '" + t->text + "'");
      }
      out.push_back(t->text);
    }
    return out;
  }

  // Parses "ntlist [colorlist]" starting at toks[pos].
  CasePattern parse_case(const std::vector<Token>& toks, std::size_t& pos,
                         std::size_t line_no, std::size_t eol) {
    CasePattern cp;
    if (pos < toks.size() && toks[pos].kind == Token::Kind::kWord &&
        toks[pos].text == "...") {
      ++pos;
    } else {
      if (pos < toks.size() && toks[pos].text == "AT") {
        fail(ErrorCode::kSyntaxError, line_no, toks[pos].column,
             "expected neighbor-type before 'AT'");
      }
      auto words = word_list(toks, pos, line_no, eol, "neighbor-type");
      std::vector<std::size_t> items;
      for (const Token* t : words) {
        auto n = table_.signature.find(t->text);
        if (!n) {
          fail(ErrorCode::kUnknownSymbol, line_no, t->column,
               "unknown neighbor-type '" + t->text + "'");
        }
        items.push_back(*n);
      }
      cp.neighbor_types = Selector::of(std::move(items));
    }
    if (pos < toks.size() && toks[pos].kind == Token::Kind::kLBracket) {
      if (!table_.has_colors()) {
        fail(ErrorCode::kColorUsageError, line_no, toks[pos].column,
             "color list used without a COLORS directive");
      }
      ++pos;
      if (pos < toks.size() && toks[pos].kind == Token::Kind::kWord &&
          toks[pos].text == "...") {
        ++pos;
      } else {
        auto words = word_list(toks, pos, line_no, eol, "color");
        std::vector<std::size_t> items;
        for (const Token* t : words) {
          auto c = table_.find_color(t->text);
          if (!c) {
            fail(ErrorCode::kUnknownSymbol, line_no, t->column,
                 "unknown color '" + t->text + "'");
          }
          items.push_back(*c);
        }
        cp.colors = Selector::of(std::move(items));
      }
      if (pos >= toks.size() || toks[pos].kind != Token::Kind::kRBracket) {
        fail(ErrorCode::kSyntaxError, line_no,
             pos < toks.size() ? toks[pos].column : eol, "expected ']'");
      }
      ++pos;
    } else if (pos < toks.size() && toks[pos].kind == Token::Kind::kRBracket) {
      fail(ErrorCode::kSyntaxError, line_no, toks[pos].column,
           "unexpected ']'");
    }
    return cp;
  }

  void parse_start(const RawLine& l) {
    auto toks = lex(l.text, l.begin, l.end, l.number);
    std::size_t eol = end_column(l.text, l.end);
    std::size_t pos = 0;
    StartSpec spec;
    spec.state = parse_case(toks, pos, l.number, eol);
    if (pos >= toks.size() || toks[pos].text != "AT") {
      fail(ErrorCode::kSyntaxError, l.number,
           pos < toks.size() ? toks[pos].column : eol, "expected 'AT'");
    }
    ++pos;
    if (pos >= toks.size() || toks[pos].kind != Token::Kind::kWord) {
      fail(ErrorCode::kSyntaxError, l.number,
           pos < toks.size() ? toks[pos].column : eol,
           "expected set name after 'AT'");
    }
    auto s = table_.find_set(toks[pos].text);
    if (!s) {
      fail(ErrorCode::kUnknownSymbol, l.number, toks[pos].column,
           "unknown set '" + toks[pos].text + "'");
    }
    spec.set = *s;
    ++pos;
    if (pos != toks.size()) {
      fail(ErrorCode::kSyntaxError, l.number, toks[pos].column,
           "unexpected '" + toks[pos].text + "'");
    }
    table_.starts.push_back(std::move(spec));
  }

  void parse_output(const RawLine& l) {
    auto toks = lex(l.text, l.begin, l.end, l.number);
    std::size_t pos = 0;
    CasePattern cp = parse_case(toks, pos, l.number, end_column(l.text, l.end));
    if (pos != toks.size()) {
      fail(ErrorCode::kSyntaxError, l.number, toks[pos].column,
           "unexpected '" + toks[pos].text + "'");
    }
    table_.outputs.push_back(std::move(cp));
  }

  void parse_rule(const RawLine& l) {
    std::size_t bar1 = l.text.find('|', l.begin);
    if (bar1 >= l.end) {
      fail(ErrorCode::kSyntaxError, l.number, l.begin + 1,
           "rule must have three columns separated by '|'");
    }
    std::size_t bar2 = l.text.find('|', bar1 + 1);
    if (bar2 >= l.end) {
      fail(ErrorCode::kSyntaxError, l.number, bar1 + 1,
           "rule must have three columns separated by '|'");
    }
    std::size_t bar3 = l.text.find('|', bar2 + 1);
    if (bar3 < l.end) {
      fail(ErrorCode::kSyntaxError, l.number, bar3 + 1,
           "rule has more than three columns");
    }
    Rule rule;
    rule.current = parse_column_case(l, l.begin, bar1, bar1 + 1);
    rule.next = parse_column_case(l, bar1 + 1, bar2, bar2 + 1);
    rule.expr = parse_expression(l, bar2 + 1, l.end);
    table_.rules.push_back(std::move(rule));
  }

  CasePattern parse_column_case(const RawLine& l, std::size_t begin,
                                std::size_t end, std::size_t eol) {
    auto toks = lex(l.text, begin, end, l.number);
    std::size_t pos = 0;
    CasePattern cp = parse_case(toks, pos, l.number, eol);
    if (pos != toks.size()) {
      fail(ErrorCode::kSyntaxError, l.number, toks[pos].column,
           "unexpected '" + toks[pos].text + "'");
    }
    return cp;
  }

  struct ExprToken {
    std::string text;
    std::size_t column;
  };

  Expression parse_expression(const RawLine& l, std::size_t begin,
                              std::size_t end) {
    expr_toks_.clear();
    std::size_t i = begin;
    while (i < end) {
      char c = l.text[i];
      if (is_space(c)) {
        ++i;
      } else if (c == '(' || c == ')') {
        expr_toks_.push_back({std::string(1, c), i + 1});
        ++i;
      } else {
        std::size_t j = i;
        while (j < end && !is_space(l.text[j]) && l.text[j] != '(' &&
               l.text[j] != ')') {
          ++j;
        }
        expr_toks_.push_back({std::string(l.text.substr(i, j - i)), i + 1});
        i = j;
      }
    }
    expr_pos_ = 0;
    expr_line_ = l.number;
    expr_eol_ = end + 1;
    if (expr_toks_.empty()) {
      fail(ErrorCode::kSyntaxError, l.number, end + 1, "missing expression");
    }
    Expression e = parse_or();
    if (expr_pos_ != expr_toks_.size()) {
      const ExprToken& t = expr_toks_[expr_pos_];
      fail(ErrorCode::kSyntaxError, l.number, t.column,
           "unexpected '" + t.text + "'");
    }
    return e;
  }

  const ExprToken* peek() const {
    return expr_pos_ < expr_toks_.size() ? &expr_toks_[expr_pos_] : nullptr;
  }

  [[noreturn]] void expr_fail(const std::string& expected) const {
    const ExprToken* t = peek();
    fail(ErrorCode::kSyntaxError, expr_line_, t ? t->column : expr_eol_,
         "expected " + expected + (t ? " before '" + t->text + "'" : ""));
  }

  Expression parse_or() {
    std::vector<Expression> parts{parse_and()};
    while (peek() && peek()->text == "or") {
      ++expr_pos_;
      parts.push_back(parse_and());
    }
    return Expression::disjunction(std::move(parts));
  }

  Expression parse_and() {
    std::vector<Expression> parts{parse_unary()};
    while (peek() && peek()->text == "and") {
      ++expr_pos_;
      parts.push_back(parse_unary());
    }
    return Expression::conjunction(std::move(parts));
  }

  Expression parse_unary() {
    const ExprToken* t = peek();
    if (!t) expr_fail("an expression");
    if (t->text == "not") {
      ++expr_pos_;
      return Expression::unary_not(parse_unary());
    }
    if (t->text == "(") {
      ++expr_pos_;
      Expression e = parse_or();
      if (!peek() || peek()->text != ")") expr_fail("')'");
      ++expr_pos_;
      return e;
    }
    return parse_atom();
  }

  Expression parse_atom() {
    const ExprToken* t = peek();
    if (t->text == "true" || t->text == "false") {
      ++expr_pos_;
      return Expression::literal(t->text == "true");
    }
    Expression::Subject subject;
    if (t->text == "current") {
      subject = Expression::Subject::kCurrent;
    } else if (t->text == "next") {
      subject = Expression::Subject::kNext;
    } else {
      expr_fail("'current', 'next', 'true', 'false', 'not' or '('");
    }
    ++expr_pos_;
    bool negated = false;
    if (peek() && peek()->text == "not") {
      negated = true;
      ++expr_pos_;
    }
    if (!peek() || peek()->text != "in") expr_fail("'in'");
    ++expr_pos_;
    const ExprToken* name = peek();
    if (!name || name->text == "(" || name->text == ")") expr_fail("set name");
    auto s = table_.find_set(name->text);
    if (!s) {
      fail(ErrorCode::kUnknownSymbol, expr_line_, name->column,
           "unknown set '" + name->text + "'");
    }
    ++expr_pos_;
    return Expression::member(subject, *s, negated);
  }

  std::string_view text_;
  RuleTable table_;
  std::optional<RawLine> edges_, colors_, sets_;
  std::vector<RawLine> starts_, outputs_, rules_;

  std::vector<ExprToken> expr_toks_;
  std::size_t expr_pos_ = 0;
  std::size_t expr_line_ = 0;
  std::size_t expr_eol_ = 0;
};

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

std::string format_case(const RuleTable& t, const CasePattern& cp) {
  std::string out;
  if (cp.neighbor_types.wildcard) {
    out = "...";
  } else {
    std::vector<std::string> names;
    for (std::size_t n : cp.neighbor_types.items)
      names.push_back(t.signature.neighbor_types()[n]);
    out = join(names, ", ");
  }
  if (t.has_colors() && !cp.colors.wildcard) {
    std::vector<std::string> names;
    for (std::size_t c : cp.colors.items) names.push_back(t.colors[c]);
    out += " [" + join(names, ", ") + "]";
  }
  return out;
}

std::string format_expr(const RuleTable& t, const Expression& e) {
  using Kind = Expression::Kind;
  auto child = [&](const Expression& c, bool wrap) {
    std::string s = format_expr(t, c);
    return wrap ? "(" + s + ")" : s;
  };
  switch (e.kind) {
    case Kind::kLiteral:
      return e.value ? "true" : "false";
    case Kind::kMember:
      return std::string(e.subject == Expression::Subject::kCurrent
                             ? "current"
                             : "next") +
             (e.negated ? " not in " : " in ") + t.sets[e.set];
    case Kind::kNot: {
      const Expression& c = e.children.front();
      return "not " + child(c, c.kind == Kind::kAnd || c.kind == Kind::kOr);
    }
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<std::string> parts;
      for (const Expression& c : e.children) {
        bool wrap = c.kind == Kind::kOr ||
                    (e.kind == Kind::kAnd && c.kind == Kind::kAnd);
        parts.push_back(child(c, wrap));
      }
      return join(parts, e.kind == Kind::kAnd ? " and " : " or ");
    }
  }
  return {};
}

}  // namespace

EdgeSignature::EdgeSignature(std::vector<EdgeDecl> decls)
    : decls_(std::move(decls)) {
  for (const EdgeDecl& d : decls_) {
    tokens_.push_back(d.forward);
    if (d.backward) tokens_.push_back(*d.backward);
  }
}

EdgeSignature EdgeSignature::parse(std::string_view text) {
  std::string src = "EDGES " + std::string(text) +
                    "\nSETS X\nSTART ... AT X\nOUTPUT ...\n";
  return parse_rule_table(src).signature;
}

std::optional<std::size_t> EdgeSignature::find(std::string_view token) const {
  for (std::size_t i = 0; i < tokens_.size(); ++i)
    if (tokens_[i] == token) return i;
  return std::nullopt;
}

std::optional<std::size_t> EdgeSignature::find_decl(std::string_view key) const {
  for (std::size_t i = 0; i < decls_.size(); ++i)
    if (decls_[i].forward == key) return i;
  return std::nullopt;
}

std::string EdgeSignature::to_string() const {
  std::vector<std::string> parts;
  for (const EdgeDecl& d : decls_)
    parts.push_back(d.backward ? d.forward + " " + *d.backward : d.forward);
  return join(parts, ", ");
}

EdgeSignature dag_signature() {
  return EdgeSignature(std::vector<EdgeDecl>{{"-->", "<--"}});
}
EdgeSignature admg_signature() {
  return EdgeSignature(
      std::vector<EdgeDecl>{{"-->", "<--"}, {"<->", std::nullopt}});
}
EdgeSignature cpdag_signature() {
  return EdgeSignature(
      std::vector<EdgeDecl>{{"-->", "<--"}, {"---", std::nullopt}});
}
EdgeSignature undirected_signature() {
  return EdgeSignature(std::vector<EdgeDecl>{{"---", std::nullopt}});
}

bool Selector::matches(std::size_t i) const {
  return wildcard || std::find(items.begin(), items.end(), i) != items.end();
}

Expression Expression::literal(bool v) {
  Expression e;
  e.kind = Kind::kLiteral;
  e.value = v;
  return e;
}

Expression Expression::member(Subject s, std::size_t set, bool negated) {
  Expression e;
  e.kind = Kind::kMember;
  e.subject = s;
  e.set = set;
  e.negated = negated;
  return e;
}

Expression Expression::unary_not(Expression inner) {
  Expression e;
  e.kind = Kind::kNot;
  e.children.push_back(std::move(inner));
  return e;
}

Expression Expression::conjunction(std::vector<Expression> es) {
  if (es.size() == 1) return std::move(es.front());
  Expression e;
  e.kind = Kind::kAnd;
  e.children = std::move(es);
  return e;
}

Expression Expression::disjunction(std::vector<Expression> es) {
  if (es.size() == 1) return std::move(es.front());
  Expression e;
  e.kind = Kind::kOr;
  e.children = std::move(es);
  return e;
}

bool Expression::evaluate(std::uint64_t current_mask,
                          std::uint64_t next_mask) const {
  switch (kind) {
    case Kind::kLiteral:
      return value;
    case Kind::kMember: {
      std::uint64_t m = subject == Subject::kCurrent ? current_mask : next_mask;
      bool in = ((m >> set) & 1U) != 0;
      return in != negated;
    }
    case Kind::kNot:
      return !children.front().evaluate(current_mask, next_mask);
    case Kind::kAnd:
      for (const Expression& c : children)
        if (!c.evaluate(current_mask, next_mask)) return false;
      return true;
    case Kind::kOr:
      for (const Expression& c : children)
        if (c.evaluate(current_mask, next_mask)) return true;
      return false;
  }
  return false;
}

std::optional<std::size_t> RuleTable::find_set(std::string_view name) const {
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (sets[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> RuleTable::find_color(std::string_view name) const {
  for (std::size_t i = 0; i < colors.size(); ++i)
    if (colors[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> RuleTable::first_match(std::size_t n1,
                                                  std::size_t c1,
                                                  std::size_t n2,
                                                  std::size_t c2) const {
  for (std::size_t r = 0; r < rules.size(); ++r) {
    if (rules[r].current.matches(n1, c1) && rules[r].next.matches(n2, c2))
      return r;
  }
  return std::nullopt;
}

RuleTable parse_rule_table(std::string_view text) {
  return TableParser(text).run();
}

std::string format_rule_table(const RuleTable& t) {
  std::ostringstream out;
  out << "EDGES " << t.signature.to_string() << '\n';
  if (t.has_colors()) out << "COLORS " << join(t.colors, ", ") << '\n';
  out << "SETS " << join(t.sets, ", ") << '\n';
  for (const StartSpec& s : t.starts)
    out << "START " << format_case(t, s.state) << " AT " << t.sets[s.set]
        << '\n';
  for (const CasePattern& o : t.outputs)
    out << "OUTPUT " << format_case(t, o) << '\n';
  for (const Rule& r : t.rules) {
    out << format_case(t, r.current) << " | " << format_case(t, r.next)
        << " | " << format_expr(t, r.expr) << '\n';
  }
  return out.str();
}

std::vector<Diagnostic> validate_rule_table(const RuleTable& t) {
  std::vector<Diagnostic> out;
  const std::size_t n_types = t.num_neighbor_types();
  const std::size_t n_colors = t.num_colors();

  for (std::size_t r = 0; r < t.rules.size(); ++r) {
    bool live = false;
    for (std::size_t n1 = 0; n1 < n_types && !live; ++n1)
      for (std::size_t c1 = 0; c1 < n_colors && !live; ++c1)
        for (std::size_t n2 = 0; n2 < n_types && !live; ++n2)
          for (std::size_t c2 = 0; c2 < n_colors && !live; ++c2)
            live = t.first_match(n1, c1, n2, c2) == r;
    if (!live) {
      out.push_back({Diagnostic::Kind::kShadowedRule, r + 1,
                     "rule " + std::to_string(r + 1) +
                         " is shadowed by earlier rules"});
    }
  }

  // (neighbor-type, color) pairs that some start spec or rule can produce.
  std::vector<bool> producible(n_types * n_colors, false);
  auto mark = [&](const CasePattern& cp) {
    for (std::size_t n = 0; n < n_types; ++n)
      for (std::size_t c = 0; c < n_colors; ++c)
        if (cp.matches(n, c)) producible[n * n_colors + c] = true;
  };
  for (const StartSpec& s : t.starts) mark(s.state);
  for (const Rule& r : t.rules) mark(r.next);

  if (t.has_colors()) {
    for (std::size_t c = 0; c < n_colors; ++c) {
      bool any = false;
      for (std::size_t n = 0; n < n_types; ++n)
        any = any || producible[n * n_colors + c];
      if (!any) {
        out.push_back({Diagnostic::Kind::kUnproducibleColor, c,
                       "color '" + t.colors[c] + "' is never produced"});
      }
    }
  }

  for (std::size_t k = 0; k < t.outputs.size(); ++k) {
    bool any = false;
    for (std::size_t n = 0; n < n_types; ++n)
      for (std::size_t c = 0; c < n_colors; ++c)
        any = any || (t.outputs[k].matches(n, c) && producible[n * n_colors + c]);
    if (!any) {
      out.push_back({Diagnostic::Kind::kUnreachableOutput, k + 1,
                     "output " + std::to_string(k + 1) + " can never match"});
    }
  }
  return out;
}

}  // namespace cifly

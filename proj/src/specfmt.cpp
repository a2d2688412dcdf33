#include "ostr/specfmt.hpp"

#include <cctype>
#include <map>
#include <set>

#include "fixtures.hpp"

namespace ostr {

namespace {

// ---- lexing ----

enum class Tok { ident, colon, arrow, double_arrow, equals, less, semicolon, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> kw{"algebra", "sorts", "subsorts", "op", "eq", "rule"};
  return kw;
}

bool ident_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  switch (c) {
    case '_': case '+': case '-': case '*': case '/': case '.': case '\'': case '!': case '?':
    case '|': case '&': case '^': case '~': case '%': case '$': case '@':
      return true;
    default:
      return false;
  }
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    SourceSpan span{line, col};
    auto next_is = [&](char n) { return i + 1 < text.size() && text[i + 1] == n; };
    if (c == '-' && next_is('>')) {
      out.push_back({Tok::arrow, "->", span});
      advance(2);
      continue;
    }
    if (c == '=' && next_is('>')) {
      out.push_back({Tok::double_arrow, "=>", span});
      advance(2);
      continue;
    }
    Tok single = Tok::end;
    switch (c) {
      case ':': single = Tok::colon; break;
      case '=': single = Tok::equals; break;
      case '<': single = Tok::less; break;
      case ';': single = Tok::semicolon; break;
      case '(': single = Tok::lparen; break;
      case ')': single = Tok::rparen; break;
      case ',': single = Tok::comma; break;
      default: break;
    }
    if (single != Tok::end) {
      out.push_back({single, std::string(1, c), span});
      advance(1);
      continue;
    }
    if (!ident_char(c)) {
      throw Error(ErrorCode::syntax_error, std::string("unexpected character '") + c + "'", span);
    }
    std::size_t start = i;
    while (i < text.size() && ident_char(text[i])) {
      if (text[i] == '-' && next_is('>')) break;
      advance(1);
    }
    out.push_back({Tok::ident, std::string(text.substr(start, i - start)), span});
  }
  out.push_back({Tok::end, "", {line, col}});
  return out;
}

// ---- parsing ----

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::ident: return "'" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  SpecDocument document() {
    SpecDocument doc;
    expect_keyword("algebra");
    doc.name_span = peek().span;
    doc.name = name("algebra name");
    while (peek().kind != Tok::end) doc.items.push_back(item());
    return doc;
  }

  SpecTerm single_term() {
    SpecTerm t = term();
    if (peek().kind != Tok::end) fail("expected end of term, found " + describe(peek()));
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_keyword() const { return peek().kind == Tok::ident && keywords().count(peek().text); }

  [[noreturn]] void fail(const std::string& msg) const { throw Error(ErrorCode::syntax_error, msg, peek().span); }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", found " + describe(peek()));
    take();
  }

  void expect_keyword(const char* kw) {
    if (peek().kind != Tok::ident || peek().text != kw) fail(std::string("expected '") + kw + "', found " + describe(peek()));
    take();
  }

  std::string name(const char* what) {
    if (peek().kind != Tok::ident || at_keyword()) fail(std::string("expected ") + what + ", found " + describe(peek()));
    return take().text;
  }

  SpecItem item() {
    SpecItem it;
    it.span = peek().span;
    if (peek().kind != Tok::ident || !at_keyword() || peek().text == "algebra") {
      fail("expected sorts, subsorts, op, eq or rule, found " + describe(peek()));
    }
    std::string kw = take().text;
    if (kw == "sorts") {
      it.kind = SpecItem::Kind::sorts;
      do {
        it.name_spans.push_back(peek().span);
        it.names.push_back(name("sort name"));
      } while (peek().kind == Tok::ident && !at_keyword());
    } else if (kw == "subsorts") {
      it.kind = SpecItem::Kind::subsorts;
      while (true) {
        it.name_spans.push_back(peek().span);
        std::string lo = name("sort name");
        expect(Tok::less, "'<'");
        std::string hi = name("sort name");
        it.pairs.emplace_back(lo, hi);
        if (peek().kind != Tok::semicolon) break;
        take();
      }
    } else if (kw == "op") {
      it.kind = SpecItem::Kind::op;
      it.op_name = name("constructor name");
      expect(Tok::colon, "':'");
      while (peek().kind == Tok::ident && !at_keyword()) {
        it.name_spans.push_back(peek().span);
        it.op_args.push_back(take().text);
      }
      expect(Tok::arrow, "'->'");
      it.name_spans.push_back(peek().span);
      it.op_target = name("target sort");
    } else if (kw == "eq") {
      it.kind = SpecItem::Kind::eq;
      it.lhs = term();
      expect(Tok::equals, "'='");
      it.rhs = term();
    } else {
      it.kind = SpecItem::Kind::rule;
      it.lhs = term();
      expect(Tok::double_arrow, "'=>'");
      it.rhs = term();
    }
    return it;
  }

  SpecTerm term() {
    SpecTerm t;
    t.span = peek().span;
    t.name = name("term");
    if (peek().kind == Tok::colon) {
      take();
      t.is_variable = true;
      t.sort = name("sort name");
    } else if (peek().kind == Tok::lparen) {
      take();
      t.args.push_back(term());
      while (peek().kind == Tok::comma) {
        take();
        t.args.push_back(term());
      }
      expect(Tok::rparen, "')' or ','");
    }
    return t;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---- elaboration ----

struct Declarations {
  std::vector<Sort> sorts;
  std::vector<SortPair> pairs;
  SourceSpan first_subsorts;
  std::vector<Operator> ops;
  std::vector<SourceSpan> op_spans;
};

Declarations declarations(const SpecDocument& doc) {
  Declarations d;
  std::set<std::string> sort_names;
  for (const auto& it : doc.items) {
    if (it.kind != SpecItem::Kind::sorts) continue;
    for (std::size_t i = 0; i < it.names.size(); ++i) {
      if (!sort_names.insert(it.names[i]).second) {
        throw Error(ErrorCode::duplicate_declaration, "sort " + it.names[i] + " is declared twice", it.name_spans[i]);
      }
      d.sorts.emplace_back(it.names[i]);
    }
  }
  auto known = [&](const std::string& s, SourceSpan span) {
    if (!sort_names.count(s)) throw Error(ErrorCode::unknown_sort, "unknown sort " + s, span);
    return Sort(s);
  };
  std::set<std::tuple<std::string, std::vector<Sort>, Sort>> seen_ops;
  for (const auto& it : doc.items) {
    if (it.kind == SpecItem::Kind::subsorts) {
      if (d.first_subsorts.line == 0) d.first_subsorts = it.span;
      for (std::size_t i = 0; i < it.pairs.size(); ++i) {
        d.pairs.emplace_back(known(it.pairs[i].first, it.name_spans[i]), known(it.pairs[i].second, it.name_spans[i]));
      }
    } else if (it.kind == SpecItem::Kind::op) {
      Operator op;
      op.constructor = it.op_name;
      for (std::size_t i = 0; i < it.op_args.size(); ++i) op.arg_sorts.push_back(known(it.op_args[i], it.name_spans[i]));
      op.target = known(it.op_target, it.name_spans.back());
      if (!seen_ops.insert({op.constructor, op.arg_sorts, op.target}).second) {
        throw Error(ErrorCode::duplicate_declaration, "operator " + to_string(op) + " is declared twice", it.span);
      }
      d.ops.push_back(std::move(op));
      d.op_spans.push_back(it.span);
    }
  }
  return d;
}

PatternTerm elaborate_at(const SpecTerm& t, const OperatorTable& table) {
  if (t.is_variable) {
    if (!table.has_sort(Sort(t.sort))) throw Error(ErrorCode::unknown_sort, "unknown sort " + t.sort, t.span);
    return PatternTerm::variable(t.name, Sort(t.sort));
  }
  const auto& idx = table.operators_named(t.name);
  if (idx.empty()) throw Error(ErrorCode::ill_formed_term, "unknown constructor " + t.name, t.span);
  bool arity_ok = false;
  for (std::size_t i : idx) arity_ok = arity_ok || table.operators()[i].arity() == t.args.size();
  if (!arity_ok) {
    throw Error(ErrorCode::ill_formed_term,
                "no operator " + t.name + " takes " + std::to_string(t.args.size()) + " arguments", t.span);
  }
  std::vector<PatternTerm> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(elaborate_at(a, table));
  return PatternTerm::node(t.name, std::move(args));
}

template <typename Fn>
auto with_span(SourceSpan span, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.span().line != 0) throw;
    throw Error(e.code(), e.detail(), span);
  }
}

// Equations and rules in document order; both sides share one variable annotation.
template <typename Table>
void elaborate_axioms(const SpecDocument& doc, const Table& table, std::vector<Equation>& eqs, std::vector<Rule>& rules) {
  std::set<std::string> seen_eqs, seen_rules;
  for (const auto& it : doc.items) {
    if (it.kind != SpecItem::Kind::eq && it.kind != SpecItem::Kind::rule) continue;
    PatternTerm lhs = elaborate_at(it.lhs, table);
    PatternTerm rhs = elaborate_at(it.rhs, table);
    with_span(it.span, [&] { return variables_of(lhs, rhs); });
    std::string key = to_string(lhs) + " " + to_string(rhs);
    bool fresh = it.kind == SpecItem::Kind::eq ? seen_eqs.insert(key).second : seen_rules.insert(key).second;
    if (!fresh) throw Error(ErrorCode::duplicate_declaration, "axiom is declared twice", it.span);
    if (it.kind == SpecItem::Kind::eq) {
      eqs.push_back({std::move(lhs), std::move(rhs)});
    } else {
      rules.push_back({std::move(lhs), std::move(rhs)});
    }
  }
}

// Variable under at least one cast, and that variable.
const PatternTerm* cast_chain_core(const PatternTerm& p) {
  if (p.is_variable() || !is_cast_name(p.name)) return nullptr;
  const PatternTerm* q = &p;
  while (!q->is_variable() && is_cast_name(q->name) && q->args.size() == 1) q = &q->args[0];
  return q->is_variable() ? q : nullptr;
}

}  // namespace

SpecDocument parse_spec(std::string_view text) { return Parser(lex(text)).document(); }

SpecTerm parse_spec_term(std::string_view text) { return Parser(lex(text)).single_term(); }

OSAlgebra elaborate_os(const SpecDocument& doc) {
  Declarations d = declarations(doc);
  for (std::size_t i = 0; i < d.ops.size(); ++i) {
    if (is_cast_name(d.ops[i].constructor)) {
      throw Error(ErrorCode::cast_name_reserved, d.ops[i].constructor + " has the form reserved for generated casts",
                  d.op_spans[i]);
    }
  }
  OSAlgebra alg;
  alg.name = doc.name;
  alg.signature = with_span(d.first_subsorts.line ? d.first_subsorts : doc.name_span,
                            [&] { return OSSignature(d.sorts, d.pairs, d.ops); });
  elaborate_axioms(doc, alg.signature.table(), alg.equations, alg.rules);
  return alg;
}

MSAlgebra elaborate_ms(const SpecDocument& doc) {
  Declarations d = declarations(doc);
  if (!d.pairs.empty()) {
    throw Error(ErrorCode::invalid_algebra, "a many-sorted algebra has no subsorts", d.first_subsorts);
  }
  std::vector<bool> non_core;
  for (std::size_t i = 0; i < d.ops.size(); ++i) {
    const Operator& op = d.ops[i];
    bool cast = is_cast_name(op.constructor);
    if (cast && (op.arity() != 1 || cast_name(op.arg_sorts[0], op.target) != op.constructor)) {
      throw Error(ErrorCode::invalid_algebra, op.constructor + " must have the profile its name states", d.op_spans[i]);
    }
    non_core.push_back(cast);
  }
  MSAlgebra alg;
  alg.name = doc.name;
  alg.signature = with_span(doc.name_span, [&] { return MSSignature(d.sorts, d.ops, non_core); });
  elaborate_axioms(doc, alg.signature.table(), alg.equations, alg.rules);
  for (const auto& e : alg.equations) {
    const PatternTerm* a = cast_chain_core(e.lhs);
    const PatternTerm* b = cast_chain_core(e.rhs);
    alg.core_equation.push_back(a && b && *a == *b && e.lhs != e.rhs);
  }
  return alg;
}

OSAlgebra parse_os_algebra(std::string_view text) { return elaborate_os(parse_spec(text)); }

MSAlgebra parse_ms_algebra(std::string_view text) { return elaborate_ms(parse_spec(text)); }

PatternTerm elaborate_term(const SpecTerm& t, const OperatorTable& table) { return elaborate_at(t, table); }

GroundTerm parse_ground_term(std::string_view text, const OperatorTable& table) {
  SpecTerm st = parse_spec_term(text);
  PatternTerm p = elaborate_at(st, table);
  if (!is_ground(p)) throw Error(ErrorCode::unbound_variable, "term has variables: " + to_string(p), st.span);
  return to_ground(p);
}

// ---- printing ----

namespace {

void print_header(std::string& out, const std::string& name, const std::vector<Sort>& sorts) {
  out += "algebra " + name + "\n";
  if (!sorts.empty()) {
    out += "sorts";
    for (const auto& s : sorts) out += " " + s.name();
    out += "\n";
  }
}

void print_ops(std::string& out, const std::vector<Operator>& ops) {
  for (const auto& op : ops) {
    out += "op " + op.constructor + " :";
    for (const auto& s : op.arg_sorts) out += " " + s.name();
    out += " -> " + op.target.name() + "\n";
  }
}

void print_axioms(std::string& out, const std::vector<Equation>& eqs, const std::vector<Rule>& rules) {
  for (const auto& e : eqs) out += "eq " + to_string(e.lhs) + " = " + to_string(e.rhs) + "\n";
  for (const auto& r : rules) out += "rule " + to_string(r.lhs) + " => " + to_string(r.rhs) + "\n";
}

}  // namespace

std::string print_spec(const OSAlgebra& alg) {
  std::string out;
  print_header(out, alg.name, alg.signature.sorts());
  const auto& pairs = alg.signature.poset().base_pairs();
  if (!pairs.empty()) {
    out += "subsorts";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      out += (i ? "; " : " ") + pairs[i].first.name() + " < " + pairs[i].second.name();
    }
    out += "\n";
  }
  print_ops(out, alg.signature.operators());
  print_axioms(out, alg.equations, alg.rules);
  return out;
}

std::string print_spec(const MSAlgebra& alg) {
  std::string out;
  print_header(out, alg.name, alg.signature.sorts());
  print_ops(out, alg.signature.operators());
  print_axioms(out, alg.equations, alg.rules);
  return out;
}

// ---- fixtures ----

std::string_view imp_fixture_text() { return fixtures::imp_osa; }
std::string_view imp_real_fixture_text() { return fixtures::imp_real_osa; }

OSAlgebra imp_algebra() {
  static const OSAlgebra alg = parse_os_algebra(imp_fixture_text());
  return alg;
}

OSAlgebra imp_real_algebra() {
  static const OSAlgebra alg = parse_os_algebra(imp_real_fixture_text());
  return alg;
}

}  // namespace ostr

#include "schemasat/parser.hpp"

#include <cctype>
#include <cstring>

namespace schemasat {

namespace {

struct Token {
  enum class Kind { Id, Int, Sym, Eof };
  Kind kind;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;
};

const char* kSymbols[] = {"/\\", "\\/", "<->", "->", "<=", ">=", "!=", "..",
                          "~",  "(",  ")",  "{",  "}",  "[",  "]",  ",",
                          ";",  ":",  "=",  "<",  ">",  "+",  "-",  "*", "."};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance(size_t k) {
    for (size_t i = 0; i < k; ++i) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  void skip_space() {
    while (pos < src.size()) {
      if (std::isspace((unsigned char)src[pos])) {
        advance(1);
      } else if (src[pos] == '#') {  // comment to end of line
        while (pos < src.size() && src[pos] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  Token next() {
    skip_space();
    Token t;
    t.line = line;
    t.col = col;
    if (pos >= src.size()) {
      t.kind = Token::Kind::Eof;
      return t;
    }
    char c = src[pos];
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos;
      while (pos < src.size() && std::isdigit((unsigned char)src[pos])) advance(1);
      t.kind = Token::Kind::Int;
      t.text = src.substr(start, pos - start);
      t.value = std::stoll(t.text);
      return t;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum((unsigned char)src[pos]) || src[pos] == '_'))
        advance(1);
      t.kind = Token::Kind::Id;
      t.text = src.substr(start, pos - start);
      return t;
    }
    for (const char* sym : kSymbols) {
      size_t len = std::strlen(sym);
      if (src.compare(pos, len, sym) == 0) {
        advance(len);
        t.kind = Token::Kind::Sym;
        t.text = sym;
        return t;
      }
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t at = 0;

  explicit Parser(const std::string& text) {
    Lexer lx(text);
    while (true) {
      Token t = lx.next();
      toks.push_back(t);
      if (t.kind == Token::Kind::Eof) break;
    }
  }

  const Token& peek(size_t ahead = 0) const {
    return toks[std::min(at + ahead, toks.size() - 1)];
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().col);
  }
  bool at_sym(const std::string& s) const {
    return peek().kind == Token::Kind::Sym && peek().text == s;
  }
  bool at_kw(const std::string& s) const {
    return peek().kind == Token::Kind::Id && peek().text == s;
  }
  bool eat_sym(const std::string& s) {
    if (!at_sym(s)) return false;
    ++at;
    return true;
  }
  bool eat_kw(const std::string& s) {
    if (!at_kw(s)) return false;
    ++at;
    return true;
  }
  void expect_sym(const std::string& s) {
    if (!eat_sym(s)) fail("expected '" + s + "'");
  }
  void expect_kw(const std::string& s) {
    if (!eat_kw(s)) fail("expected '" + s + "'");
  }

  static bool is_keyword(const std::string& s) {
    static const std::set<std::string> kws{"true", "false", "And",    "Or",
                                           "in",   "exists", "forall", "xor",
                                           "schema", "params", "constraint", "pattern"};
    return kws.count(s) != 0;
  }

  std::string expect_name() {
    if (peek().kind != Token::Kind::Id || is_keyword(peek().text))
      fail("expected identifier");
    return toks[at++].text;
  }

  // --- linear expressions ---

  LinearExpr parse_factor() {
    if (eat_sym("-")) return -parse_factor();
    if (eat_sym("(")) {
      LinearExpr e = parse_expr();
      expect_sym(")");
      return e;
    }
    if (peek().kind == Token::Kind::Int) {
      long long v = toks[at++].value;
      if (eat_sym("*")) return parse_factor().scaled(v);
      return LinearExpr(v);
    }
    if (peek().kind == Token::Kind::Id && !is_keyword(peek().text))
      return LinearExpr::var(toks[at++].text);
    fail("expected expression");
  }

  LinearExpr parse_expr() {
    LinearExpr e = parse_factor();
    while (true) {
      if (eat_sym("+"))
        e = e + parse_factor();
      else if (eat_sym("-"))
        e = e - parse_factor();
      else
        break;
    }
    return e;
  }

  // --- constraints ---

  ConstraintPtr parse_constraint() {
    if (eat_kw("exists")) {
      std::string v = expect_name();
      expect_sym(".");
      return mk_exists(v, parse_constraint());
    }
    if (eat_kw("forall")) {
      std::string v = expect_name();
      expect_sym(".");
      return mk_forall(v, parse_constraint());
    }
    return parse_c_or();
  }

  ConstraintPtr parse_c_or() {
    ConstraintPtr c = parse_c_and();
    std::vector<ConstraintPtr> kids{c};
    while (eat_sym("\\/")) kids.push_back(parse_c_and());
    return kids.size() == 1 ? kids[0] : mk_or(std::move(kids));
  }

  ConstraintPtr parse_c_and() {
    ConstraintPtr c = parse_c_not();
    std::vector<ConstraintPtr> kids{c};
    while (eat_sym("/\\")) kids.push_back(parse_c_not());
    return kids.size() == 1 ? kids[0] : mk_and(std::move(kids));
  }

  ConstraintPtr parse_c_not() {
    if (eat_sym("~")) return mk_not(parse_c_not());
    if (eat_kw("true")) return mk_true();
    if (eat_kw("false")) return mk_false();
    if (at_sym("(")) {
      // lookahead: either a parenthesized constraint or an expression atom
      size_t save = at;
      ++at;
      try {
        ConstraintPtr inner = parse_constraint();
        expect_sym(")");
        return inner;
      } catch (const ParseError&) {
        at = save;
      }
    }
    if (at_kw("exists") || at_kw("forall")) return parse_constraint();
    LinearExpr lhs = parse_expr();
    Rel r;
    if (eat_sym("=")) r = Rel::Eq;
    else if (eat_sym("!=")) r = Rel::Ne;
    else if (eat_sym("<=")) r = Rel::Le;
    else if (eat_sym(">=")) r = Rel::Ge;
    else if (eat_sym("<")) r = Rel::Lt;
    else if (eat_sym(">")) r = Rel::Gt;
    else fail("expected relation");
    return mk_cmp(lhs, r, parse_expr());
  }

  // --- patterns (surface) ---

  ConstraintPtr parse_domain(const std::string& var) {
    if (eat_sym("[")) {
      LinearExpr lo = parse_expr();
      expect_sym("..");
      LinearExpr hi = parse_expr();
      expect_sym("]");
      return mk_and(mk_cmp(lo, Rel::Le, LinearExpr::var(var)),
                    mk_cmp(LinearExpr::var(var), Rel::Le, hi));
    }
    expect_sym("{");
    ConstraintPtr c = parse_constraint();
    expect_sym("}");
    return c;
  }

  SurfacePtr parse_pattern() { return parse_p_iff(); }

  SurfacePtr parse_p_iff() {
    SurfacePtr p = parse_p_imp();
    while (true) {
      if (eat_sym("<->"))
        p = surf_bin(Surface::Kind::Iff, p, parse_p_imp());
      else if (eat_kw("xor"))
        p = surf_bin(Surface::Kind::Xor, p, parse_p_imp());
      else
        break;
    }
    return p;
  }

  SurfacePtr parse_p_imp() {
    SurfacePtr p = parse_p_or();
    if (eat_sym("->")) return surf_bin(Surface::Kind::Implies, p, parse_p_imp());
    return p;
  }

  SurfacePtr parse_p_or() {
    SurfacePtr p = parse_p_and();
    while (eat_sym("\\/")) p = surf_bin(Surface::Kind::Or, p, parse_p_and());
    return p;
  }

  SurfacePtr parse_p_and() {
    SurfacePtr p = parse_p_unary();
    while (eat_sym("/\\")) p = surf_bin(Surface::Kind::And, p, parse_p_unary());
    return p;
  }

  SurfacePtr parse_p_unary() {
    if (eat_sym("~")) return surf_not(parse_p_unary());
    if (at_kw("And") || at_kw("Or")) {
      bool conj = peek().text == "And";
      ++at;
      std::string var = expect_name();
      expect_kw("in");
      ConstraintPtr dom = parse_domain(var);
      expect_sym(":");
      SurfacePtr body = parse_p_unary();
      return surf_iter(conj ? Surface::Kind::IterAnd : Surface::Kind::IterOr, var,
                       dom, body);
    }
    if (eat_kw("true")) return surf_top();
    if (eat_kw("false")) return surf_bottom();
    if (eat_sym("(")) {
      SurfacePtr p = parse_pattern();
      expect_sym(")");
      return p;
    }
    // indexed literal
    std::string sym = expect_name();
    expect_sym("[");
    IndexedLiteral lit{true, sym, {}};
    lit.indices.push_back(parse_expr());
    while (eat_sym(",")) lit.indices.push_back(parse_expr());
    expect_sym("]");
    return surf_lit(std::move(lit));
  }

  // --- problem file ---

  Schema parse_file() {
    expect_kw("schema");
    std::string name = expect_name();
    expect_sym("{");
    expect_kw("params");
    expect_sym(":");
    std::set<std::string> declared;
    if (!at_sym(";")) {
      declared.insert(expect_name());
      while (eat_sym(",")) declared.insert(expect_name());
    }
    expect_sym(";");
    expect_kw("constraint");
    expect_sym(":");
    ConstraintPtr constraint = parse_constraint();
    expect_sym(";");
    expect_kw("pattern");
    expect_sym(":");
    SurfacePtr surface = parse_pattern();
    eat_sym(";");
    expect_sym("}");
    if (peek().kind != Token::Kind::Eof) fail("trailing input after schema");

    PatternPtr pattern = desugar_to_nnf(surface);
    Schema s{pattern, constraint, name};

    std::set<std::string> binders(pattern_binders(pattern).begin(),
                                  pattern_binders(pattern).end());
    std::vector<std::string> scope_errors;
    for (auto& v : parameters(s))
      if (!declared.count(v))
        scope_errors.push_back("undeclared variable " + v);
    for (auto& v : binders)
      if (declared.count(v))
        scope_errors.push_back("iteration binder " + v + " shadows a parameter");
    if (!scope_errors.empty()) throw IllFormed(std::move(scope_errors));

    std::vector<std::string> diags = check_wellformed(s);
    if (!diags.empty()) throw IllFormed(std::move(diags));
    return s;
  }
};

}  // namespace

Schema parse_problem(const std::string& text) {
  Parser p(text);
  return p.parse_file();
}

SurfacePtr parse_pattern_text(const std::string& text) {
  Parser p(text);
  SurfacePtr s = p.parse_pattern();
  if (p.peek().kind != Token::Kind::Eof) p.fail("trailing input");
  return s;
}

ConstraintPtr parse_constraint_text(const std::string& text) {
  Parser p(text);
  ConstraintPtr c = p.parse_constraint();
  if (p.peek().kind != Token::Kind::Eof) p.fail("trailing input");
  return c;
}

}  // namespace schemasat

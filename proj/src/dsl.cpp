#include "aczel/dsl.hpp"

#include "aczel/errors.hpp"
#include "aczel/temporal.hpp"
#include "aczel/wide_spectrum.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

namespace aczel {

namespace {

// ------------------------------------------------------------------ lexer

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

constexpr std::array<std::string_view, 13> kLongSymbols = {
    "|^|", "|v|", "^inf", "||", "/\\", "\\/", ":=",
    "::",  "<=",  ">=",   "<|", "!=",  "^w"};
constexpr std::string_view kShortSymbols = "()[]{},.;*~&|+-/%\\<>=:!^";

std::vector<Token> lex(std::string_view text, std::size_t line,
                       std::size_t column) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    unsigned char c = text[i];
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n')
        advance(1);
      continue;
    }
    auto l = line, col = column;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      if (j < text.size() && text[j] == '\'')
        ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), l, col});
      advance(j - i);
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      out.push_back({Tok::Number, std::string(text.substr(i, j - i)), l, col});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (auto s : kLongSymbols) {
      if (text.substr(i, s.size()) == s) {
        out.push_back({Tok::Sym, std::string(s), l, col});
        advance(s.size());
        matched = true;
        break;
      }
    }
    if (matched)
      continue;
    if (kShortSymbols.find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Tok::Sym, std::string(1, static_cast<char>(c)), l, col});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") +
                         static_cast<char>(c) + "'",
                     l, col);
  }
  out.push_back({Tok::End, "", line, column});
  return out;
}

// ----------------------------------------------------------------- parser

using K = Ast::Kind;

const std::set<std::string, std::less<>> kReserved = {
    "abort", "eabort", "nil",  "magic",   "pi",       "eps",      "epsbot",
    "test",  "pre",    "opt",  "if",      "then",     "else",     "while",
    "do",    "guar",   "rely", "eguard",  "frame",    "atomic",   "var",
    "hide",  "in",     "ltl",  "obsfree", "lockfree", "waitfree", "id",
    "univ",  "empty",  "rel",  "pred",    "all",      "none",     "not",
    "and",   "or"};

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  AstPtr whole_command() {
    auto c = command();
    expect_end();
    return c;
  }

  Query query() {
    Query q;
    q.lhs = command();
    if (accept("<=")) {
      q.equality = false;
    } else if (accept("=")) {
      q.equality = true;
    } else {
      fail("expected '<=' or '=' between commands");
    }
    q.rhs = command();
    expect_end();
    return q;
  }

  ExprPtr whole_expression() {
    auto e = expr();
    expect_end();
    return e;
  }

private:
  // ------------------------------------------------------------ helpers
  const Token &peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool is_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_word(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  bool accept(std::string_view s) {
    if (is_sym(s)) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view s) {
    if (is_word(s)) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string &msg) const {
    const auto &t = peek();
    auto found = t.kind == Tok::End ? std::string("end of input")
                                    : "'" + t.text + "'";
    throw ParseError(msg + ", found " + found, t.line, t.column);
  }
  void expect(std::string_view s) {
    if (!accept(s))
      fail("expected '" + std::string(s) + "'");
  }
  void expect_word(std::string_view s) {
    if (!accept_word(s))
      fail("expected '" + std::string(s) + "'");
  }
  void expect_end() {
    if (peek().kind != Tok::End)
      fail("unexpected input");
  }
  std::string identifier(const char *what) {
    const auto &t = peek();
    if (t.kind != Tok::Ident || t.text.back() == '\'' || kReserved.count(t.text))
      fail(std::string("expected ") + what);
    ++pos_;
    return t.text;
  }

  AstPtr node(K kind, const Token &at, std::vector<AstPtr> kids = {},
              std::string name = {}) const {
    auto a = std::make_shared<Ast>();
    a->kind = kind;
    a->kids = std::move(kids);
    a->name = std::move(name);
    a->line = at.line;
    a->column = at.column;
    return a;
  }

  // ----------------------------------------------------------- commands
  AstPtr binary_level(int level) {
    static const std::array<std::pair<std::string_view, K>, 5> ops = {{
        {"|^|", K::Choice},
        {"|v|", K::Sup},
        {"||", K::Par},
        {"/\\", K::Conj},
        {";", K::Seq},
    }};
    if (level == static_cast<int>(ops.size()))
      return postfix();
    auto lhs = binary_level(level + 1);
    while (is_sym(ops[level].first)) {
      auto at = peek();
      ++pos_;
      auto rhs = binary_level(level + 1);
      lhs = node(ops[level].second, at, {lhs, rhs});
    }
    return lhs;
  }

  AstPtr command() { return binary_level(0); }

  AstPtr postfix() {
    auto c = atom();
    for (;;) {
      auto at = peek();
      if (accept("*"))
        c = node(K::Star, at, {c});
      else if (accept("^w"))
        c = node(K::Omega, at, {c});
      else if (accept("^inf"))
        c = node(K::InfIter, at, {c});
      else if (is_sym("^")) {
        ++pos_;
        fail("expected 'w' or 'inf' after '^'");
      } else
        return c;
    }
  }

  AstPtr optional_relation_arg(K kind, const Token &at) {
    if (!accept("("))
      return node(kind, at);
    auto r = relation();
    expect(")");
    return node(kind, at, {r});
  }

  AstPtr relation_arg(K kind, const Token &at) {
    expect("(");
    auto r = relation();
    expect(")");
    return node(kind, at, {r});
  }

  AstPtr atom() {
    auto at = peek();
    if (accept("(")) {
      auto c = command();
      expect(")");
      return c;
    }
    if (accept("[")) {
      auto r = relation();
      expect("]");
      return node(K::Spec, at, {r});
    }
    if (at.kind != Tok::Ident)
      fail("expected a command");
    const auto &w = at.text;
    if (is_sym(":=", 1)) {
      auto var = identifier("a variable");
      ++pos_;
      auto a = std::make_shared<Ast>(*node(K::Assign, at, {}, var));
      a->expr = expr();
      return a;
    }
    ++pos_;
    if (w == "abort")
      return node(K::Abort, at);
    if (w == "eabort")
      return node(K::EAbort, at);
    if (w == "nil")
      return node(K::Nil, at);
    if (w == "magic")
      return node(K::Magic, at);
    if (w == "pi")
      return optional_relation_arg(K::Pstep, at);
    if (w == "eps")
      return optional_relation_arg(K::Estep, at);
    if (w == "epsbot")
      return optional_relation_arg(K::EstepBot, at);
    if (w == "opt")
      return relation_arg(K::Opt, at);
    if (w == "guar")
      return relation_arg(K::Guar, at);
    if (w == "rely")
      return relation_arg(K::Rely, at);
    if (w == "eguard")
      return relation_arg(K::EGuard, at);
    if (w == "atomic")
      return relation_arg(K::Atomic, at);
    if (w == "test") {
      expect("(");
      auto p = predicate();
      expect(")");
      return node(K::Test, at, {p});
    }
    if (w == "pre") {
      if (accept("{")) {
        auto a = std::make_shared<Ast>(*node(K::Pre, at));
        a->expr = expr();
        expect("}");
        return a;
      }
      expect("(");
      auto p = predicate();
      expect(")");
      return node(K::Pre, at, {p});
    }
    if (w == "if") {
      auto e = expr();
      expect_word("then");
      auto c1 = command();
      expect_word("else");
      auto c2 = postfix();
      auto a = std::make_shared<Ast>(*node(K::If, at, {c1, c2}));
      a->expr = e;
      return a;
    }
    if (w == "while") {
      auto e = expr();
      expect_word("do");
      auto body = postfix();
      auto a = std::make_shared<Ast>(*node(K::While, at, {body}));
      a->expr = e;
      return a;
    }
    if (w == "frame") {
      std::vector<std::string> vars{identifier("a variable")};
      while (accept(","))
        vars.push_back(identifier("a variable"));
      expect(".");
      auto a = std::make_shared<Ast>(*node(K::Frame, at, {postfix()}));
      a->names = std::move(vars);
      return a;
    }
    if (w == "var") {
      auto x = identifier("a variable");
      expect(".");
      return node(K::VarBlock, at, {postfix()}, x);
    }
    if (w == "hide") {
      auto x = identifier("a variable");
      expect_word("in");
      return node(K::Hide, at, {postfix()}, x);
    }
    if (w == "ltl") {
      expect("{");
      auto f = ltl();
      expect("}");
      return node(K::Ltl, at, {f});
    }
    if (w == "obsfree" || w == "waitfree") {
      expect("(");
      auto c = command();
      expect(")");
      return node(w == "obsfree" ? K::ObsFree : K::WaitFree, at, {c});
    }
    if (w == "lockfree") {
      expect("(");
      auto c = command();
      expect(",");
      auto x = identifier("a variable");
      expect(")");
      return node(K::LockFree, at, {c}, x);
    }
    const auto &names = canonical_names();
    if (std::find(names.begin(), names.end(), w) != names.end())
      return node(K::Canonical, at, {}, w);
    --pos_;
    fail("expected a command");
  }

  // ---------------------------------------------------------- relations
  AstPtr relation() {
    auto lhs = relation_and();
    while (is_sym("|")) {
      auto at = peek();
      ++pos_;
      lhs = node(K::RelOr, at, {lhs, relation_and()});
    }
    return lhs;
  }

  AstPtr relation_and() {
    auto lhs = relation_restrict();
    while (is_sym("&")) {
      auto at = peek();
      ++pos_;
      lhs = node(K::RelAnd, at, {lhs, relation_restrict()});
    }
    return lhs;
  }

  AstPtr relation_restrict() {
    auto lhs = relation_unary();
    if (is_sym("<|")) {
      auto at = peek();
      ++pos_;
      auto p = as_predicate(lhs);
      return node(K::RelRestrict, at, {p, relation_restrict()});
    }
    return lhs;
  }

  AstPtr relation_unary() {
    auto at = peek();
    if (accept("~"))
      return node(K::RelNot, at, {relation_unary()});
    auto r = relation_atom();
    while (is_sym("\\")) {
      auto hat = peek();
      ++pos_;
      r = node(K::RelHide, hat, {r}, identifier("a variable"));
    }
    return r;
  }

  AstPtr relation_atom() {
    auto at = peek();
    if (accept("(")) {
      auto r = relation();
      expect(")");
      return r;
    }
    if (at.kind != Tok::Ident)
      fail("expected a relation");
    const auto &w = at.text;
    if (w == "id") {
      ++pos_;
      auto a = std::make_shared<Ast>(*node(K::RelId, at));
      if (accept("(")) {
        a->names.push_back(identifier("a variable"));
        while (accept(","))
          a->names.push_back(identifier("a variable"));
        expect(")");
      } else {
        a->name = "*";
      }
      return a;
    }
    if (accept_word("univ"))
      return node(K::RelUniv, at);
    if (accept_word("empty"))
      return node(K::RelEmpty, at);
    if (accept_word("all"))
      return node(K::PredAll, at);
    if (accept_word("none"))
      return node(K::PredNone, at);
    if (w == "rel" || w == "pred") {
      ++pos_;
      expect("{");
      auto a = std::make_shared<Ast>(*node(w == "rel" ? K::RelExpr : K::PredExpr, at));
      a->expr = expr();
      expect("}");
      return a;
    }
    return node(K::RelName, at, {}, identifier("a relation"));
  }

  AstPtr as_predicate(const AstPtr &r) const {
    switch (r->kind) {
    case K::PredAll:
    case K::PredNone:
    case K::PredExpr:
    case K::PredName:
    case K::PredNot:
    case K::PredAnd:
    case K::PredOr:
      return r;
    case K::RelName: {
      auto p = std::make_shared<Ast>(*r);
      p->kind = K::PredName;
      return p;
    }
    case K::RelNot:
    case K::RelAnd:
    case K::RelOr: {
      auto p = std::make_shared<Ast>(*r);
      p->kind = r->kind == K::RelNot ? K::PredNot
                : r->kind == K::RelAnd ? K::PredAnd
                                       : K::PredOr;
      p->kids.clear();
      for (const auto &k : r->kids)
        p->kids.push_back(as_predicate(k));
      return p;
    }
    default:
      throw ParseError("expected a predicate before '<|'", r->line, r->column);
    }
  }

  // --------------------------------------------------------- predicates
  AstPtr predicate() {
    auto lhs = predicate_and();
    while (is_sym("|")) {
      auto at = peek();
      ++pos_;
      lhs = node(K::PredOr, at, {lhs, predicate_and()});
    }
    return lhs;
  }

  AstPtr predicate_and() {
    auto lhs = predicate_unary();
    while (is_sym("&")) {
      auto at = peek();
      ++pos_;
      lhs = node(K::PredAnd, at, {lhs, predicate_unary()});
    }
    return lhs;
  }

  AstPtr predicate_unary() {
    auto at = peek();
    if (accept("~"))
      return node(K::PredNot, at, {predicate_unary()});
    if (accept("(")) {
      auto p = predicate();
      expect(")");
      return p;
    }
    return predicate_atom();
  }

  AstPtr predicate_atom() {
    auto at = peek();
    if (accept_word("all"))
      return node(K::PredAll, at);
    if (accept_word("none"))
      return node(K::PredNone, at);
    if (accept_word("pred")) {
      expect("{");
      auto a = std::make_shared<Ast>(*node(K::PredExpr, at));
      a->expr = expr();
      expect("}");
      return a;
    }
    return node(K::PredName, at, {}, identifier("a predicate"));
  }

  // ---------------------------------------------------- temporal logic
  AstPtr ltl() {
    auto lhs = ltl_and();
    while (is_sym("|")) {
      auto at = peek();
      ++pos_;
      lhs = node(K::LtlOr, at, {lhs, ltl_and()});
    }
    return lhs;
  }

  AstPtr ltl_and() {
    auto lhs = ltl_unary();
    while (is_sym("&")) {
      auto at = peek();
      ++pos_;
      lhs = node(K::LtlAnd, at, {lhs, ltl_unary()});
    }
    return lhs;
  }

  AstPtr ltl_unary() {
    auto at = peek();
    if (accept("(")) {
      auto f = ltl();
      expect(")");
      return f;
    }
    if (at.kind == Tok::Ident) {
      if ((at.text == "P" || at.text == "E") && is_sym(":", 1)) {
        pos_ += 2;
        return node(at.text == "P" ? K::LtlProg : K::LtlEnv, at,
                    {relation_unary()});
      }
      if (accept_word("X"))
        return node(K::LtlNext, at, {ltl_unary()});
      if (accept_word("F"))
        return node(K::LtlEventually, at, {ltl_unary()});
      if (accept_word("G"))
        return node(K::LtlAlways, at, {ltl_unary()});
    }
    if (is_sym("~"))
      fail("temporal formulae have no negation; negate the predicate inside pred{...}");
    return node(K::LtlPred, at, {predicate_atom()});
  }

  // -------------------------------------------------------- expressions
  ExprPtr expr() {
    auto lhs = expr_and();
    while (accept_word("or"))
      lhs = Expr::binary("or", lhs, expr_and());
    return lhs;
  }

  ExprPtr expr_and() {
    auto lhs = expr_cmp();
    while (accept_word("and"))
      lhs = Expr::binary("and", lhs, expr_cmp());
    return lhs;
  }

  ExprPtr expr_cmp() {
    auto lhs = expr_cons();
    for (auto op : {"=", "!=", "<=", ">=", "<", ">"}) {
      if (accept(op))
        return Expr::binary(op, lhs, expr_cons());
    }
    return lhs;
  }

  ExprPtr expr_cons() {
    auto lhs = expr_add();
    if (accept("::"))
      return Expr::binary("::", lhs, expr_cons());
    return lhs;
  }

  ExprPtr expr_add() {
    auto lhs = expr_mul();
    for (;;) {
      if (accept("+"))
        lhs = Expr::binary("+", lhs, expr_mul());
      else if (accept("-"))
        lhs = Expr::binary("-", lhs, expr_mul());
      else
        return lhs;
    }
  }

  ExprPtr expr_mul() {
    auto lhs = expr_unary();
    for (;;) {
      if (accept("*"))
        lhs = Expr::binary("*", lhs, expr_unary());
      else if (accept("/"))
        lhs = Expr::binary("/", lhs, expr_unary());
      else if (accept("%"))
        lhs = Expr::binary("%", lhs, expr_unary());
      else
        return lhs;
    }
  }

  ExprPtr expr_unary() {
    if (accept_word("not"))
      return Expr::unary("not", expr_unary());
    return expr_primary();
  }

  ExprPtr expr_primary() {
    auto at = peek();
    if (at.kind == Tok::Number) {
      ++pos_;
      return Expr::literal(at.text);
    }
    if (accept("(")) {
      auto e = expr();
      expect(")");
      return e;
    }
    if (accept("<")) {
      std::string lit = "<";
      bool first = true;
      while (!is_sym(">") && !is_sym(">=")) {
        if (!first)
          expect(",");
        const auto &t = peek();
        if (t.kind != Tok::Ident && t.kind != Tok::Number)
          fail("expected a sequence element");
        if (!first)
          lit += ",";
        lit += t.text;
        ++pos_;
        first = false;
      }
      if (is_sym(">=")) {
        // "<a>=s": split the token
        auto &t = toks_[pos_];
        t.text = "=";
        ++t.column;
      } else {
        ++pos_;
      }
      return Expr::literal(lit + ">");
    }
    if (at.kind != Tok::Ident || at.text == "then" || at.text == "else" ||
        at.text == "do" || at.text == "and" || at.text == "or")
      fail("expected an expression");
    ++pos_;
    if (at.text.back() == '\'')
      return Expr::primed(at.text.substr(0, at.text.size() - 1));
    if (accept("(")) {
      auto a = expr();
      if (accept(",")) {
        auto b = expr();
        expect(")");
        return Expr::binary(at.text, a, b);
      }
      expect(")");
      return Expr::unary(at.text, a);
    }
    return Expr::variable(at.text);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ------------------------------------------------------------- printing

const char *kind_name(K k) {
  switch (k) {
  case K::Abort: return "Abort";
  case K::EAbort: return "EAbort";
  case K::Nil: return "Nil";
  case K::Magic: return "Magic";
  case K::Pstep: return "Pstep";
  case K::Estep: return "Estep";
  case K::EstepBot: return "EstepBot";
  case K::Test: return "Test";
  case K::Pre: return "Pre";
  case K::Opt: return "Opt";
  case K::Assign: return "Assign";
  case K::If: return "If";
  case K::While: return "While";
  case K::Canonical: return "Canonical";
  case K::Spec: return "Spec";
  case K::Guar: return "Guar";
  case K::Rely: return "Rely";
  case K::EGuard: return "EGuard";
  case K::Frame: return "Frame";
  case K::Atomic: return "Atomic";
  case K::VarBlock: return "Var";
  case K::Hide: return "Hide";
  case K::Ltl: return "Ltl";
  case K::ObsFree: return "ObsFree";
  case K::LockFree: return "LockFree";
  case K::WaitFree: return "WaitFree";
  case K::Choice: return "Choice";
  case K::Sup: return "Sup";
  case K::Par: return "Par";
  case K::Conj: return "Conj";
  case K::Seq: return "Seq";
  case K::Star: return "Star";
  case K::Omega: return "Omega";
  case K::InfIter: return "InfIter";
  case K::RelId: return "Id";
  case K::RelUniv: return "Univ";
  case K::RelEmpty: return "Empty";
  case K::RelName: return "Rel";
  case K::RelExpr: return "RelExpr";
  case K::RelNot: return "Not";
  case K::RelAnd: return "And";
  case K::RelOr: return "Or";
  case K::RelRestrict: return "Restrict";
  case K::RelHide: return "Unrestrict";
  case K::PredAll: return "All";
  case K::PredNone: return "None";
  case K::PredName: return "Pred";
  case K::PredExpr: return "PredExpr";
  case K::PredNot: return "Not";
  case K::PredAnd: return "And";
  case K::PredOr: return "Or";
  case K::LtlPred: return "State";
  case K::LtlProg: return "ProgStep";
  case K::LtlEnv: return "EnvStep";
  case K::LtlAnd: return "And";
  case K::LtlOr: return "Or";
  case K::LtlNext: return "Next";
  case K::LtlEventually: return "Eventually";
  case K::LtlAlways: return "Always";
  }
  return "?";
}

} // namespace

AstPtr parse_command(std::string_view text) {
  return Parser(lex(text, 1, 1)).whole_command();
}

Query parse_query(std::string_view text) {
  return Parser(lex(text, 1, 1)).query();
}

ExprPtr parse_expression(std::string_view text, std::size_t line,
                         std::size_t column) {
  return Parser(lex(text, line, column)).whole_expression();
}

std::string to_string(const Ast &a) {
  std::vector<std::string> args;
  if (a.kind == K::RelId && a.name == "*")
    return "Id";
  if (!a.name.empty())
    args.push_back(a.name);
  for (const auto &n : a.names)
    args.push_back(n);
  if (a.expr) {
    auto e = to_string(*a.expr);
    if (a.expr->kind == Expr::Kind::Binary)
      e = e.substr(1, e.size() - 2);
    args.push_back(e);
  }
  for (const auto &k : a.kids)
    args.push_back(to_string(*k));
  std::string out = kind_name(a.kind);
  if (args.empty())
    return out;
  out += "(";
  for (std::size_t i = 0; i < args.size(); ++i)
    out += (i ? ", " : "") + args[i];
  return out + ")";
}

// ------------------------------------------------------------ evaluation

Environment::Environment(Context ctx, std::shared_ptr<const OperatorTable> ops,
                         const SpaceConfig &config)
    : ctx_(std::move(ctx)), ops_(std::move(ops)) {
  for (const auto &d : config.relations)
    rel_defs_.emplace(d.name, d);
  for (const auto &d : config.predicates)
    pred_defs_.emplace(d.name, d);
}

ExprPtr Environment::resolve(const ExprPtr &e, std::size_t line,
                             std::size_t column) const {
  const auto &space = *ctx_.space();
  const auto &vals = ops_->values();
  switch (e->kind) {
  case Expr::Kind::Literal:
    if (!vals.find(e->name))
      throw ParseError("unknown value '" + e->name + "'", line, column);
    return e;
  case Expr::Kind::Variable:
    if (space.find_variable(e->name))
      return e;
    if (vals.find(e->name))
      return Expr::literal(e->name);
    throw ParseError("unknown identifier '" + e->name + "'", line, column);
  case Expr::Kind::Primed:
    if (!space.find_variable(e->name))
      throw ParseError("unknown variable '" + e->name + "'", line, column);
    return e;
  case Expr::Kind::Unary:
    if (!ops_->has_unary(e->name))
      throw ParseError("unknown unary operator '" + e->name + "'", line, column);
    return Expr::unary(e->name, resolve(e->lhs, line, column));
  case Expr::Kind::Binary:
    if (!ops_->has_binary(e->name))
      throw ParseError("unknown binary operator '" + e->name + "'", line, column);
    return Expr::binary(e->name, resolve(e->lhs, line, column),
                        resolve(e->rhs, line, column));
  }
  return e;
}

Relation Environment::named_relation(const std::string &name, const Ast &at) {
  if (auto it = rels_.find(name); it != rels_.end())
    return it->second;
  auto d = rel_defs_.find(name);
  if (d == rel_defs_.end()) {
    if (pred_defs_.count(name))
      throw ParseError("'" + name + "' is a predicate, not a relation", at.line,
                       at.column);
    throw ParseError("unknown relation '" + name + "'", at.line, at.column);
  }
  auto e = resolve(parse_expression(d->second.text, d->second.line, d->second.column),
                   d->second.line, d->second.column);
  auto r = relation_of(*e, *ops_, ctx_.space());
  rels_.emplace(name, r);
  return r;
}

Predicate Environment::named_predicate(const std::string &name, const Ast &at) {
  if (auto it = preds_.find(name); it != preds_.end())
    return it->second;
  auto d = pred_defs_.find(name);
  if (d == pred_defs_.end()) {
    if (rel_defs_.count(name))
      throw ParseError("'" + name + "' is a relation, not a predicate", at.line,
                       at.column);
    throw ParseError("unknown predicate '" + name + "'", at.line, at.column);
  }
  auto e = resolve(parse_expression(d->second.text, d->second.line, d->second.column),
                   d->second.line, d->second.column);
  auto p = predicate_of(*e, *ops_, ctx_.space());
  preds_.emplace(name, p);
  return p;
}

Relation Environment::relation(const Ast &a) {
  const auto &sp = ctx_.space();
  switch (a.kind) {
  case K::RelId:
    if (a.name == "*")
      return Relation::identity(sp);
    for (const auto &v : a.names)
      if (!sp->find_variable(v))
        throw ParseError("unknown variable '" + v + "'", a.line, a.column);
    return Relation::identity_on(sp, a.names);
  case K::RelUniv:
    return Relation::universal(sp);
  case K::RelEmpty:
    return Relation::empty(sp);
  case K::RelName:
    return named_relation(a.name, a);
  case K::RelExpr:
    return relation_of(*resolve(a.expr, a.line, a.column), *ops_, sp);
  case K::RelNot:
    return relation(*a.kids[0]).complement();
  case K::RelAnd:
    return relation(*a.kids[0]) & relation(*a.kids[1]);
  case K::RelOr:
    return relation(*a.kids[0]) | relation(*a.kids[1]);
  case K::RelRestrict:
    return relation(*a.kids[1]).restrict_domain(predicate(*a.kids[0]));
  case K::RelHide:
    if (!sp->find_variable(a.name))
      throw ParseError("unknown variable '" + a.name + "'", a.line, a.column);
    return relation(*a.kids[0]).hide(a.name);
  default:
    throw ParseError("expected a relation", a.line, a.column);
  }
}

Predicate Environment::predicate(const Ast &a) {
  const auto &sp = ctx_.space();
  switch (a.kind) {
  case K::PredAll:
    return Predicate::full(sp);
  case K::PredNone:
    return Predicate::empty(sp);
  case K::PredName:
  case K::RelName:
    return named_predicate(a.name, a);
  case K::PredExpr:
    return predicate_of(*resolve(a.expr, a.line, a.column), *ops_, sp);
  case K::PredNot:
    return predicate(*a.kids[0]).complement();
  case K::PredAnd:
    return predicate(*a.kids[0]) & predicate(*a.kids[1]);
  case K::PredOr:
    return predicate(*a.kids[0]) | predicate(*a.kids[1]);
  default:
    throw ParseError("expected a predicate", a.line, a.column);
  }
}

namespace {

void require_variable(const StateSpace &space, const std::string &v,
                      const Ast &a) {
  if (!space.find_variable(v))
    throw ParseError("unknown variable '" + v + "'", a.line, a.column);
}

} // namespace

CommandSemantics Environment::command(const Ast &a) {
  const auto &ctx = ctx_;
  const auto &space = *ctx.space();
  auto kid = [&](std::size_t i) { return command(*a.kids.at(i)); };
  auto rel_or_univ = [&] {
    return a.kids.empty() ? Relation::universal(ctx.space())
                          : relation(*a.kids[0]);
  };
  std::function<LtlPtr(const Ast &)> formula = [&](const Ast &f) -> LtlPtr {
    switch (f.kind) {
    case K::LtlPred:
      return LtlFormula::state(predicate(*f.kids[0]));
    case K::LtlProg:
      return LtlFormula::prog(relation(*f.kids[0]));
    case K::LtlEnv:
      return LtlFormula::env(relation(*f.kids[0]));
    case K::LtlAnd:
      return LtlFormula::both(formula(*f.kids[0]), formula(*f.kids[1]));
    case K::LtlOr:
      return LtlFormula::either(formula(*f.kids[0]), formula(*f.kids[1]));
    case K::LtlNext:
      return LtlFormula::next(formula(*f.kids[0]));
    case K::LtlEventually:
      return LtlFormula::eventually(formula(*f.kids[0]));
    case K::LtlAlways:
      return LtlFormula::always(formula(*f.kids[0]));
    default:
      throw ParseError("expected a temporal formula", f.line, f.column);
    }
  };
  switch (a.kind) {
  case K::Abort:
    return abort_cmd(ctx);
  case K::EAbort:
    return eabort(ctx);
  case K::Nil:
    return nil(ctx);
  case K::Magic:
    return magic(ctx);
  case K::Pstep:
    return pstep(ctx, rel_or_univ());
  case K::Estep:
    return estep(ctx, rel_or_univ());
  case K::EstepBot:
    return estep_or_abort(ctx, rel_or_univ());
  case K::Test:
    return test(ctx, predicate(*a.kids[0]));
  case K::Pre:
    if (a.expr)
      return pre(ctx, predicate_of(*resolve(a.expr, a.line, a.column), *ops_,
                                   ctx.space()));
    return pre(ctx, predicate(*a.kids[0]));
  case K::Opt:
    return opt(ctx, relation(*a.kids[0]));
  case K::Assign: {
    require_variable(space, a.name, a);
    auto e = resolve(a.expr, a.line, a.column);
    if (e->kind == Expr::Kind::Primed)
      throw ParseError("primed variable in a program expression", a.line, a.column);
    return assign(ctx, *ops_, a.name, *e);
  }
  case K::If:
    return if_then_else(ctx, *ops_, *resolve(a.expr, a.line, a.column), kid(0),
                        kid(1));
  case K::While:
    return while_do(ctx, *ops_, *resolve(a.expr, a.line, a.column), kid(0));
  case K::Canonical:
    return *canonical(ctx, a.name);
  case K::Spec:
    return spec(ctx, relation(*a.kids[0]));
  case K::Guar:
    return guar(ctx, relation(*a.kids[0]));
  case K::Rely:
    return rely(ctx, relation(*a.kids[0]));
  case K::EGuard:
    return eguard(ctx, relation(*a.kids[0]));
  case K::Frame:
    for (const auto &v : a.names)
      require_variable(space, v, a);
    return frame(a.names, kid(0));
  case K::Atomic:
    return atomic(ctx, relation(*a.kids[0]));
  case K::VarBlock:
    require_variable(space, a.name, a);
    return var_block(a.name, kid(0));
  case K::Hide:
    require_variable(space, a.name, a);
    return hide(kid(0), a.name);
  case K::Ltl:
    return encode(ctx, *formula(*a.kids[0]));
  case K::ObsFree:
    return obstruction_free(kid(0));
  case K::LockFree:
    require_variable(space, a.name, a);
    return lock_free(kid(0), a.name);
  case K::WaitFree:
    return wait_free(kid(0));
  case K::Choice:
    return choice(kid(0), kid(1));
  case K::Sup:
    return supremum(kid(0), kid(1));
  case K::Par:
    return par(kid(0), kid(1));
  case K::Conj:
    return conj(kid(0), kid(1));
  case K::Seq:
    return seq(kid(0), kid(1));
  case K::Star:
    return star(kid(0));
  case K::Omega:
    return omega(kid(0));
  case K::InfIter:
    return infiter(kid(0));
  default:
    throw ParseError("expected a command", a.line, a.column);
  }
}

} // namespace aczel

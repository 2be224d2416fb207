#pragma once

// The command language.
//
//   command   := choice
//   choice    := sup ( '|^|' sup )*
//   sup       := par ( '|v|' par )*
//   par       := conj ( '||' conj )*
//   conj      := seq ( '/\' seq )*
//   seq       := postfix ( ';' postfix )*
//   postfix   := atom ( '*' | '^w' | '^inf' )*
//
// Atoms: abort eabort nil magic, pi pi(r) eps eps(r) epsbot epsbot(r),
// test(p), pre(p), pre{e}, opt(r), [r], guar(r), rely(r), eguard(r),
// atomic(r), the iteration constants (skip idle chaos term fair fairterm
// preempted forever), x := e, if e then c else c, while e do c,
// frame x, y . c, var x . c, hide x in c, ltl{f}, obsfree(c),
// lockfree(c, x), waitfree(c) and parenthesised commands. The bodies of
// else, do, '.' and in are single postfix units; parenthesise anything
// larger.
//
// Relations: id, id(x, y), univ, empty, a name from the space config,
// rel{e}, ~r, r & r, r | r, p <| r (restrict the domain to p), r \ x.
// Predicates: all, none, a name, pred{e}, ~p, p & p, p | p.
// Temporal formulae: a predicate, P:r, E:r, X f, F f, G f, f & f, f | f.
//
// Expressions: or, and, comparisons (= != < <= > >=), '::', + -, * / %,
// not e, f(e) and g(a, b) for table operators, numbers, names, x' and
// sequence literals <a, b>. A name that is not a variable is a value.
// Inside x := e an expression swallows a following '=' or '<='; write
// (x := e) <= c in queries.

#include "aczel/config.hpp"
#include "aczel/expressions.hpp"
#include "aczel/primitives.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace aczel {

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
  enum class Kind {
    // commands
    Abort, EAbort, Nil, Magic, Pstep, Estep, EstepBot, Test, Pre, Opt,
    Assign, If, While, Canonical, Spec, Guar, Rely, EGuard, Frame, Atomic,
    VarBlock, Hide, Ltl, ObsFree, LockFree, WaitFree,
    Choice, Sup, Par, Conj, Seq, Star, Omega, InfIter,
    // relations
    RelId, RelUniv, RelEmpty, RelName, RelExpr, RelNot, RelAnd, RelOr,
    RelRestrict, RelHide,
    // predicates
    PredAll, PredNone, PredName, PredExpr, PredNot, PredAnd, PredOr,
    // temporal formulae
    LtlPred, LtlProg, LtlEnv, LtlAnd, LtlOr, LtlNext, LtlEventually,
    LtlAlways,
  };

  Kind kind;
  std::string name;               // identifier operand
  std::vector<std::string> names; // frame / id variable lists
  ExprPtr expr;
  std::vector<AstPtr> kids;
  std::size_t line = 0;
  std::size_t column = 0;
};

// Throws ParseError.
AstPtr parse_command(std::string_view text);

// A parsed query `c <= d` or `c = d`.
struct Query {
  AstPtr lhs;
  AstPtr rhs;
  bool equality = false;
};
Query parse_query(std::string_view text);

// Constructor-style rendering, e.g. "Seq(Nil, Pstep(Id))".
std::string to_string(const Ast &a);

// Names and the space they resolve against.
class Environment {
public:
  Environment(Context ctx, std::shared_ptr<const OperatorTable> ops,
              const SpaceConfig &config);

  const Context &context() const { return ctx_; }
  const OperatorTable &ops() const { return *ops_; }

  // Throws ParseError for unknown identifiers, BudgetExceeded when the
  // node store grows past its budget.
  CommandSemantics command(const Ast &a);
  Relation relation(const Ast &a);
  Predicate predicate(const Ast &a);

private:
  ExprPtr resolve(const ExprPtr &e, std::size_t line, std::size_t column) const;
  Relation named_relation(const std::string &name, const Ast &at);
  Predicate named_predicate(const std::string &name, const Ast &at);

  Context ctx_;
  std::shared_ptr<const OperatorTable> ops_;
  std::map<std::string, NamedDefinition> rel_defs_, pred_defs_;
  std::map<std::string, Relation> rels_;
  std::map<std::string, Predicate> preds_;
};

// Parse an expression in isolation (used for config definitions).
ExprPtr parse_expression(std::string_view text, std::size_t line = 1,
                         std::size_t column = 1);

} // namespace aczel

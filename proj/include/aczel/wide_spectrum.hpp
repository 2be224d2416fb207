#pragma once

// The derived specification and programming commands: preconditions,
// optional updates, the iteration constants, end-to-end specifications,
// guarantees, environment guards and assumptions, frames, rely-guarantee
// quintuples, atomic steps, expression evaluation, assignment, conditionals,
// loops and local variable blocks.

#include "aczel/combinators.hpp"
#include "aczel/expressions.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aczel {

// {p} = τ(p) ⊓ τ(p̄);abort
CommandSemantics pre(const Context &ctx, const Predicate &p);
// opt(r) = π(r) ⊓ τ({σ | (σ,σ) ∈ r})
CommandSemantics opt(const Context &ctx, const Relation &r);
// update(x,k) = opt(σ' = σ[x\k]). A value outside the domain of x makes
// the relation empty. Throws UnknownVariable.
CommandSemantics update(const Context &ctx, std::string_view var,
                        std::string_view value);

CommandSemantics skip(const Context &ctx);      // ε⊥^ω
CommandSemantics idle(const Context &ctx);      // (π(id) ⊓ ε⊥)* ; ε⊥^ω
CommandSemantics chaos(const Context &ctx);     // (π ⊓ ε⊥)^ω
CommandSemantics term(const Context &ctx);      // (π ⊓ ε⊥)* ; ε⊥^ω
CommandSemantics preempted(const Context &ctx); // (π ⊓ ε⊥)* ; ε⊥^∞
CommandSemantics forever(const Context &ctx);   // (π ⊓ ε⊥)^∞
CommandSemantics fair(const Context &ctx);      // ε⊥* ; (π ; ε⊥*)^ω
CommandSemantics fairterm(const Context &ctx);  // (π ⊓ ε⊥)*

// skip idle chaos term fair fairterm preempted forever
const std::vector<std::string> &canonical_names();
std::optional<CommandSemantics> canonical(const Context &ctx,
                                          std::string_view name);

// [q] = ⊓σ τ({σ}) ; term ; τ({σ' | (σ,σ') ∈ q})
CommandSemantics spec(const Context &ctx, const Relation &q);
// guar(g) = (π(g) ⊓ ε⊥)^ω
CommandSemantics guar(const Context &ctx, const Relation &g);
// X: c = guar(id(X̄)) ⋒ c. Throws UnknownVariable.
CommandSemantics frame(const std::vector<std::string> &vars,
                       const CommandSemantics &c);
// eguard(r) = (π ⊓ ε⊥(r))^ω
CommandSemantics eguard(const Context &ctx, const Relation &r);
// env(r) = eguard(r) ; (nil ⊓ ε(r̄) ; abort)
CommandSemantics env_assumption(const Context &ctx, const Relation &r);
inline CommandSemantics rely(const Context &ctx, const Relation &r) {
  return env_assumption(ctx, r);
}

struct RGQuintuple {
  Predicate pre;
  Relation rely;
  Relation guar;
  Relation post;
};
// {p}[q] ⋒ env(r) ⋒ guar(g)
CommandSemantics rg_spec(const Context &ctx, const RGQuintuple &q5);

// ⟨q⟩ = idle ; π(q) ; idle
CommandSemantics atomic(const Context &ctx, const Relation &q);

// Evaluation of `e` to `k`. Throws UnknownVariable, UnknownValue, or Error
// for an unknown operator or a primed variable.
CommandSemantics eval_expr(const Context &ctx, const OperatorTable &ops,
                           const Expr &e, ValueId k);
CommandSemantics assign(const Context &ctx, const OperatorTable &ops,
                        std::string_view var, const Expr &e);
CommandSemantics if_then_else(const Context &ctx, const OperatorTable &ops,
                              const Expr &b, const CommandSemantics &c1,
                              const CommandSemantics &c2);
CommandSemantics while_do(const Context &ctx, const OperatorTable &ops,
                          const Expr &b, const CommandSemantics &c);

// guar(id(x)) ⋒ (c ⋒ eguard(id(x)))\x
CommandSemantics local_var(std::string_view var, const CommandSemantics &c);
// idle ; local_var(x, c) ; idle
CommandSemantics var_block(std::string_view var, const CommandSemantics &c);

} // namespace aczel

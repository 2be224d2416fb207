#pragma once

// Linear temporal logic formulae encoded as commands, and the non-blocking
// progress classifications built from them. A command c satisfies f iff
// encode(f) ⊑ c.

#include "aczel/wide_spectrum.hpp"

#include <memory>
#include <optional>
#include <string_view>

namespace aczel {

struct LtlFormula;
using LtlPtr = std::shared_ptr<const LtlFormula>;

struct LtlFormula {
  enum class Kind { StatePred, ProgStep, EnvStep, And, Or, Next, Eventually, Always };

  Kind kind;
  std::optional<Predicate> pred; // StatePred
  std::optional<Relation> rel;   // ProgStep, EnvStep
  LtlPtr lhs;                    // sole operand of Next/Eventually/Always
  LtlPtr rhs;

  static LtlPtr state(Predicate p);
  static LtlPtr prog(Relation r);
  static LtlPtr env(Relation r);
  static LtlPtr both(LtlPtr a, LtlPtr b);
  static LtlPtr either(LtlPtr a, LtlPtr b);
  static LtlPtr next(LtlPtr h);
  static LtlPtr eventually(LtlPtr h);
  static LtlPtr always(LtlPtr h);
};

//   p      τ(p) ; abort          h1 ∧ h2   ⟦h1⟧ ⊔ ⟦h2⟧
//   P:r    π(r) ; abort          h1 ∨ h2   ⟦h1⟧ ⊓ ⟦h2⟧
//   E:r    ε(r) ; abort          X h       (π ⊓ ε⊥) ; ⟦h⟧
//   F h    (π ⊓ ε⊥)* ; ⟦h⟧       G h       μx. ⟦h⟧ ⊔ X x
CommandSemantics encode(const Context &ctx, const LtlFormula &f);

// op ⊓ (guar(id) ⋒ ⟦G F E:univ⟧)
CommandSemantics obstruction_free(const CommandSemantics &op);
// op ⊓ (guar(id) ⋒ ⟦G F E:(s' ≠ s)⟧). Throws UnknownVariable.
CommandSemantics lock_free(const CommandSemantics &op, std::string_view var);
// op
CommandSemantics wait_free(const CommandSemantics &op);

} // namespace aczel

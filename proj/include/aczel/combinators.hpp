#pragma once

// Operators on commands: nondeterministic choice, supremum, sequential
// composition, fixed points and iterations, parallel composition, weak
// conjunction and variable unrestriction.
//
// Binary operators require both operands to come from the same Universe
// and depth. Everything is computed on the depth-bounded sets directly;
// sequential composition truncates concatenations at the bound.

#include "aczel/primitives.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string_view>

namespace aczel {

Context context_of(const CommandSemantics &c);

// ⊓C; the empty choice is magic.
CommandSemantics choice(const Context &ctx, std::span<const CommandSemantics> cs);
CommandSemantics choice(const CommandSemantics &a, const CommandSemantics &b);
// ⊔C; the empty supremum is abort.
CommandSemantics supremum(const Context &ctx,
                          std::span<const CommandSemantics> cs);
CommandSemantics supremum(const CommandSemantics &a, const CommandSemantics &b);

CommandSemantics seq(const CommandSemantics &a, const CommandSemantics &b);
CommandSemantics seq(std::initializer_list<CommandSemantics> cs);

using MonotoneFunction =
    std::function<CommandSemantics(const CommandSemantics &)>;

struct FixpointOptions {
  // Maximum Kleene iterations; when unset the cap is
  // 10 * (nodes of the current iterate) + 100.
  std::optional<std::size_t> max_iterations;
};

// Least fixed point in the refinement order: iterate from abort.
CommandSemantics lfp(const Context &ctx, const MonotoneFunction &f,
                     FixpointOptions opts = {});
// Greatest fixed point in the refinement order: iterate from magic.
CommandSemantics gfp(const Context &ctx, const MonotoneFunction &f,
                     FixpointOptions opts = {});

// c* = νx. nil ⊓ c;x
CommandSemantics star(const CommandSemantics &c);
// c^ω = μx. nil ⊓ c;x
CommandSemantics omega(const CommandSemantics &c);
// c^∞ = c^ω ; magic
CommandSemantics infiter(const CommandSemantics &c);

CommandSemantics par(const CommandSemantics &a, const CommandSemantics &b);
CommandSemantics conj(const CommandSemantics &a, const CommandSemantics &b);
// c\x. Throws UnknownVariable.
CommandSemantics hide(const CommandSemantics &c, std::string_view var);

} // namespace aczel

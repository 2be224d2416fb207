#pragma once

// The primitive commands: program step, environment step, test, abort,
// environment abort, and their abbreviations.

#include "aczel/state.hpp"
#include "aczel/trace.hpp"

namespace aczel {

// A command is denoted by a healthy depth-bounded trace set.
using CommandSemantics = TraceSet;

// Where commands are built: a universe and a depth bound.
struct Context {
  UniversePtr universe;
  Depth depth;

  Context(UniversePtr u, Depth d) : universe(std::move(u)), depth(d) {}
  static Context create(SpacePtr space, Depth d, Faults faults = {}) {
    return Context(Universe::create(std::move(space), faults), d);
  }

  const SpacePtr &space() const { return universe->space(); }
  NodeStore &store() const { return universe->store(); }
};

// π(r): one program step satisfying r, then terminate.
CommandSemantics pstep(const Context &ctx, const Relation &r);
// ε(r): one environment step satisfying r, then terminate.
CommandSemantics estep(const Context &ctx, const Relation &r);
// τ(p): terminate immediately from states in p.
CommandSemantics test(const Context &ctx, const Predicate &p);
// All traces.
CommandSemantics abort_cmd(const Context &ctx);
// The environment may abort; nothing else.
CommandSemantics eabort(const Context &ctx);
// ε(r) ∪ environment abort.
CommandSemantics estep_or_abort(const Context &ctx, const Relation &r);

CommandSemantics pi(const Context &ctx);     // π(univ)
CommandSemantics eps(const Context &ctx);    // ε(univ)
CommandSemantics epsbot(const Context &ctx); // ε⊥(univ)
CommandSemantics nil(const Context &ctx);    // τ(Σ)
CommandSemantics magic(const Context &ctx);  // τ(∅)

} // namespace aczel

#pragma once

// Brute-force reference semantics over explicit sets of traces. Every
// operator is a direct transcription of the set definitions, evaluated by
// enumerating all traces up to the depth bound. Shares no code with the
// prefix-DAG engine beyond the Trace/Step value types.

#include "aczel/state.hpp"
#include "aczel/trace.hpp"

#include <functional>
#include <string>
#include <vector>

namespace aczel::oracle {

using Flat = TraceList;

class FlatSemantics {
public:
  FlatSemantics(SpacePtr space, int depth);

  const Flat &all() const { return all_; }
  int depth() const { return depth_; }
  const SpacePtr &space() const { return space_; }

  // Closures
  Flat empty_closure(const Flat &s) const;
  Flat prefix_closure(const Flat &s) const;
  Flat aborting(const Flat &s) const;
  Flat abort_complete(const Flat &s) const;
  Flat abort_closure(const Flat &s) const;
  // Drop traces longer than the bound.
  Flat truncate(const Flat &s) const;

  // Primitives
  Flat pstep(const Relation &r) const;
  Flat estep(const Relation &r) const;
  Flat test(const Predicate &p) const;
  Flat abort_all() const { return all_; }
  Flat eabort() const;
  Flat estep_or_abort(const Relation &r) const;
  Flat nil() const;
  Flat magic() const;

  // Operators
  Flat choice(const Flat &a, const Flat &b) const;
  Flat supremum(const Flat &a, const Flat &b) const;
  Flat seq(const Flat &a, const Flat &b) const;
  Flat par(const Flat &a, const Flat &b) const;
  Flat conj(const Flat &a, const Flat &b) const;
  Flat hide(const Flat &c, const std::string &var) const;
  Flat star(const Flat &c) const;
  Flat omega(const Flat &c) const;

private:
  Flat fix(const std::function<Flat(const Flat &)> &f, Flat start) const;

  SpacePtr space_;
  int depth_;
  Flat all_;
};

} // namespace aczel::oracle

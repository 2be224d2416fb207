#pragma once

// Aczel traces and depth-bounded trace sets.
//
// A TraceSet holds, for every initial state, the root of a prefix tree of
// step sequences of length <= depth. Trees are hash-consed into a NodeStore
// owned by a Universe, so equal sets have equal roots. Each node carries
//   kTerm    the trace at this node may take a termination step,
//   kEAbort  it may take an environment step to the undefined state,
//   kAny     it may take a program step to the undefined state; by abort
//            closure this means every extension is present, so kAny nodes
//            have no stored children.
// Node levels count the steps still available below the node, which makes
// the kAny marker depth-relative and lets nodes be shared across positions.

#include "aczel/state.hpp"

#include <compare>
#include <map>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace aczel {

enum class StepKind : std::uint8_t { Program = 0, Env = 1, Term = 2 };

struct Step {
  StepKind kind = StepKind::Term;
  ExtState post = ExtState::bottom(); // unused for Term

  static Step program(ExtState s) { return {StepKind::Program, s}; }
  static Step env(ExtState s) { return {StepKind::Env, s}; }
  static Step term() { return {StepKind::Term, ExtState::bottom()}; }

  // Term, or a program/environment step to the undefined state.
  bool is_terminal() const {
    return kind == StepKind::Term || post.is_bottom();
  }

  auto operator<=>(const Step &) const = default;
};

struct Trace {
  StateId initial;
  std::vector<Step> steps;

  auto operator<=>(const Trace &) const = default;
};

struct Depth {
  int bound;
  explicit Depth(int b);
};

// Validates that terminal steps only occur last and that the trace fits the
// depth bound. Throws TraceError.
Trace mk_trace(StateId initial, std::vector<Step> steps, Depth depth);

// t1 <= t2: t2 is a valid refinement of t1.
bool trace_le(const Trace &t1, const Trace &t2);

// Last state of a trace without terminal step. Throws TraceError.
StateId last_state(const Trace &t);

// "x=0 -e-> x=1 -p-> x=2 [term]"
std::string format_trace(const StateSpace &space, const Trace &t);

using TraceList = std::set<Trace>;

// ----------------------------------------------------------------- storage

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xFFFFFFFFu;

enum NodeFlag : std::uint8_t { kTerm = 1, kEAbort = 2, kAny = 4 };

// Child edge. Labels [0, n) are program steps to state `label`, labels
// [n, 2n) environment steps to state `label - n`, for n = |Σ|.
struct Edge {
  std::uint32_t label;
  NodeId child;
};

enum class MemoOp : std::uint8_t {
  Union,
  Intersect,
  Subset,
  Truncate,
  Par,
  Conj,
  Count
};

class NodeStore {
public:
  explicit NodeStore(std::size_t num_states);

  // Canonical node. `edges` must be sorted by label, unique, and point to
  // nodes of level - 1. kAny subsumes everything else; level 0 nodes are
  // always the leaf.
  NodeId make(int level, std::uint8_t flags, std::span<const Edge> edges);

  NodeId any(int level);
  NodeId bare(int level) { return make(level, 0, {}); }
  NodeId leaf() { return leaf_; }

  int level(NodeId n) const { return nodes_[n].level; }
  std::uint8_t flags(NodeId n) const { return nodes_[n].flags; }
  bool is_any(NodeId n) const { return nodes_[n].flags & kAny; }
  std::span<const Edge> edges(NodeId n) const {
    const auto &nd = nodes_[n];
    return {pool_.data() + nd.first, nd.count};
  }

  // Semantic queries; an any-node has every step.
  bool has_term(NodeId n) const { return level(n) > 0 && (flags(n) & (kTerm | kAny)); }
  bool has_eabort(NodeId n) const { return level(n) > 0 && (flags(n) & (kEAbort | kAny)); }
  bool has_pabort(NodeId n) const { return level(n) > 0 && is_any(n); }
  // kNoNode when absent.
  NodeId child(NodeId n, std::uint32_t label);

  std::size_t num_states() const { return num_states_; }
  std::uint32_t num_labels() const { return static_cast<std::uint32_t>(2 * num_states_); }
  std::size_t size() const { return nodes_.size(); }

  void set_budget(std::size_t max_nodes) { budget_ = max_nodes; }
  std::size_t budget() const { return budget_; }

  std::unordered_map<std::uint64_t, NodeId> &memo(MemoOp op) {
    return memos_[static_cast<std::size_t>(op)];
  }

private:
  struct Node {
    std::uint32_t first;
    std::uint32_t count;
    std::uint8_t level;
    std::uint8_t flags;
  };

  std::uint64_t hash_of(int level, std::uint8_t flags,
                        std::span<const Edge> edges) const;
  bool equals(NodeId n, int level, std::uint8_t flags,
              std::span<const Edge> edges) const;
  void grow();

  std::size_t num_states_;
  std::vector<Node> nodes_;
  std::vector<Edge> pool_;
  std::vector<NodeId> slots_;
  std::vector<NodeId> any_;
  NodeId leaf_ = kNoNode;
  std::size_t budget_ = 40'000'000;
  std::unordered_map<std::uint64_t, NodeId>
      memos_[static_cast<std::size_t>(MemoOp::Count)];
};

// Fault switches for exercising the law-suite harness against a
// deliberately wrong semantics. Leave at defaults for real use.
struct Faults {
  // Sequential composition discards the aborting behaviour of its first
  // operand instead of abort-completing it.
  bool seq_drops_abort_closure = false;
};

// A state space together with the node store shared by every trace set
// built over it. Not safe for concurrent mutation; confine a Universe to
// one thread.
class Universe {
public:
  static std::shared_ptr<Universe> create(SpacePtr space, Faults faults = {});

  const SpacePtr &space() const { return space_; }
  NodeStore &store() { return store_; }
  const Faults &faults() const { return faults_; }

  std::uint32_t program_label(StateId post) const { return post.index; }
  std::uint32_t env_label(StateId post) const {
    return static_cast<std::uint32_t>(space_->size() + post.index);
  }
  Step label_step(std::uint32_t label) const;

  // Roots of commands memoised by name and depth (canonical commands and
  // the like). Node ids stay valid for the lifetime of the store.
  std::map<std::pair<std::string, int>, std::vector<NodeId>> &named() {
    return named_;
  }

  explicit Universe(SpacePtr space, Faults faults);

private:
  SpacePtr space_;
  NodeStore store_;
  Faults faults_;
  std::map<std::pair<std::string, int>, std::vector<NodeId>> named_;
};

using UniversePtr = std::shared_ptr<Universe>;

class TraceSet {
public:
  TraceSet(UniversePtr universe, int depth, std::vector<NodeId> roots);

  const UniversePtr &universe() const { return universe_; }
  const SpacePtr &space() const { return universe_->space(); }
  NodeStore &store() const { return universe_->store(); }
  int depth() const { return depth_; }
  const std::vector<NodeId> &roots() const { return roots_; }
  NodeId root(StateId s) const { return roots_[s.index]; }

  bool contains(const Trace &t) const;
  // Number of traces denoted (saturating).
  double trace_count() const;
  // Distinct DAG nodes reachable from the roots.
  std::size_t node_count() const;

  // Set equality. Cheap when both live in the same universe.
  bool operator==(const TraceSet &other) const;

private:
  UniversePtr universe_;
  int depth_;
  std::vector<NodeId> roots_;
};

// {(σ,[]) | σ ∈ Σ}: the empty closure of the empty set.
TraceSet magic_set(const UniversePtr &u, Depth depth);
// All traces up to the depth: Tr.
TraceSet full_set(const UniversePtr &u, Depth depth);

// Smallest empty-, prefix- and abort-closed set containing `raw`.
// Throws TraceError on unhealthy or over-long traces.
TraceSet close(const UniversePtr &u, Depth depth, const TraceList &raw);

// Every trace of the set, with any-nodes expanded. Throws BudgetExceeded
// if more than `limit` traces would be produced.
TraceList enumerate(const TraceSet &s, std::size_t limit = 5'000'000);

// Healthiness of a flat set of traces at the given depth: every trace
// Tseq-healthy and within depth, empty-, prefix- and abort-closed.
bool is_healthy(const SpacePtr &space, Depth depth, const TraceList &traces);
// Flat check of the denoted set (enumerates it).
bool is_healthy(const TraceSet &s);
// Structural invariants of the DAG (canonical any-nodes, sorted edges,
// consistent levels, one root per state).
bool is_well_formed(const TraceSet &s);

struct SubsetResult {
  bool holds;
  // A shortest trace of the candidate subset that is missing from the
  // superset; present iff !holds.
  std::optional<Trace> witness;
};

// Decides sub ⊆ super, i.e. super ⊑ sub.
SubsetResult subset(const TraceSet &super, const TraceSet &sub);

struct TerminatingTrace {
  Trace trace; // with the termination step removed
  StateId last;
};
std::vector<TerminatingTrace> terminating(const TraceSet &s);

// Traces of length <= depth. Requires depth <= s.depth().
TraceSet restrict_depth(const TraceSet &s, Depth depth);

// One line per maximal trace, in canonical order, ending with one of
// [term] [eabort] [open] [any].
std::string to_listing(const TraceSet &s);

// --- node-level building blocks shared by the operator modules

NodeId node_union(NodeStore &st, NodeId a, NodeId b);
NodeId node_intersect(NodeStore &st, NodeId a, NodeId b);
// Whether every suffix below `a` is also below `b` (same level).
bool node_subset(NodeStore &st, NodeId a, NodeId b);
NodeId node_truncate(NodeStore &st, NodeId n, int level);

} // namespace aczel

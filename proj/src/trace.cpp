#include "aczel/trace.hpp"

#include "aczel/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <unordered_set>

namespace aczel {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

constexpr int kMaxDepth = 64;

} // namespace

Depth::Depth(int b) : bound(b) {
  if (b < 1)
    throw Error("depth bound must be at least 1");
  if (b > kMaxDepth)
    throw Error("depth bound too large");
}

// ------------------------------------------------------------------ traces

Trace mk_trace(StateId initial, std::vector<Step> steps, Depth depth) {
  if (static_cast<int>(steps.size()) > depth.bound)
    throw TraceError("trace longer than depth bound " +
                     std::to_string(depth.bound));
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (steps[i].is_terminal())
      throw TraceError("terminal step at position " + std::to_string(i) +
                       " is not last");
  return Trace{initial, std::move(steps)};
}

bool trace_le(const Trace &t1, const Trace &t2) {
  if (t1.initial != t2.initial)
    return false;
  const auto &a = t1.steps;
  const auto &b = t2.steps;
  // t2 is a prefix of t1
  if (b.size() <= a.size() && std::equal(b.begin(), b.end(), a.begin()))
    return true;
  // t1 = t3 ^ [π⊥] with t3 a prefix of t2
  if (!a.empty() && a.back() == Step::program(ExtState::bottom())) {
    auto n = a.size() - 1;
    if (n <= b.size() && std::equal(a.begin(), a.begin() + n, b.begin()))
      return true;
  }
  return false;
}

StateId last_state(const Trace &t) {
  if (t.steps.empty())
    return t.initial;
  const auto &z = t.steps.back();
  if (z.kind == StepKind::Term)
    throw TraceError("last_state of a terminated trace");
  if (z.post.is_bottom())
    throw TraceError("last_state of an aborting trace");
  return z.post.state();
}

std::string format_trace(const StateSpace &space, const Trace &t) {
  std::string out = space.format(t.initial);
  const char *marker = "[open]";
  for (const auto &z : t.steps) {
    if (z.kind == StepKind::Term) {
      marker = "[term]";
      break;
    }
    if (z.post.is_bottom()) {
      marker = z.kind == StepKind::Program ? "[pabort]" : "[eabort]";
      break;
    }
    out += z.kind == StepKind::Program ? " -p-> " : " -e-> ";
    out += space.format(z.post.state());
  }
  out += ' ';
  out += marker;
  return out;
}

// --------------------------------------------------------------- NodeStore

NodeStore::NodeStore(std::size_t num_states) : num_states_(num_states) {
  slots_.assign(1u << 12, kNoNode);
  nodes_.push_back(Node{0, 0, 0, 0});
  leaf_ = 0;
  auto h = hash_of(0, 0, {});
  slots_[h & (slots_.size() - 1)] = leaf_;
}

std::uint64_t NodeStore::hash_of(int level, std::uint8_t flags,
                                 std::span<const Edge> edges) const {
  std::uint64_t h = mix(static_cast<std::uint64_t>(level), flags);
  for (const auto &e : edges)
    h = mix(h, pair_key(e.label, e.child));
  return mix(h, edges.size());
}

bool NodeStore::equals(NodeId n, int level, std::uint8_t flags,
                       std::span<const Edge> edges) const {
  const auto &nd = nodes_[n];
  if (nd.level != level || nd.flags != flags || nd.count != edges.size())
    return false;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto &e = pool_[nd.first + i];
    if (e.label != edges[i].label || e.child != edges[i].child)
      return false;
  }
  return true;
}

void NodeStore::grow() {
  std::vector<NodeId> fresh(slots_.size() * 2, kNoNode);
  auto mask = fresh.size() - 1;
  for (NodeId n = 0; n < nodes_.size(); ++n) {
    const auto &nd = nodes_[n];
    auto h = hash_of(nd.level, nd.flags, edges(n));
    auto i = h & mask;
    while (fresh[i] != kNoNode)
      i = (i + 1) & mask;
    fresh[i] = n;
  }
  slots_ = std::move(fresh);
}

NodeId NodeStore::make(int level, std::uint8_t flags,
                       std::span<const Edge> edges) {
  if (level <= 0)
    return leaf_;
  if (flags & kAny)
    return any(level);
  auto mask = slots_.size() - 1;
  auto i = hash_of(level, flags, edges) & mask;
  while (slots_[i] != kNoNode) {
    if (equals(slots_[i], level, flags, edges))
      return slots_[i];
    i = (i + 1) & mask;
  }
  if (nodes_.size() >= budget_)
    throw BudgetExceeded("node budget of " + std::to_string(budget_) +
                         " exceeded");
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{static_cast<std::uint32_t>(pool_.size()),
                        static_cast<std::uint32_t>(edges.size()),
                        static_cast<std::uint8_t>(level), flags});
  pool_.insert(pool_.end(), edges.begin(), edges.end());
  slots_[i] = id;
  if (nodes_.size() * 2 > slots_.size())
    grow();
  return id;
}

NodeId NodeStore::any(int level) {
  if (level <= 0)
    return leaf_;
  if (any_.size() <= static_cast<std::size_t>(level))
    any_.resize(level + 1, kNoNode);
  if (any_[level] != kNoNode)
    return any_[level];
  auto mask = slots_.size() - 1;
  auto i = hash_of(level, kAny, {}) & mask;
  while (slots_[i] != kNoNode)
    i = (i + 1) & mask;
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{static_cast<std::uint32_t>(pool_.size()), 0,
                        static_cast<std::uint8_t>(level), kAny});
  slots_[i] = id;
  any_[level] = id;
  if (nodes_.size() * 2 > slots_.size())
    grow();
  return id;
}

NodeId NodeStore::child(NodeId n, std::uint32_t label) {
  auto lv = level(n);
  if (lv == 0)
    return kNoNode;
  if (is_any(n))
    return any(lv - 1);
  auto es = edges(n);
  auto it = std::lower_bound(
      es.begin(), es.end(), label,
      [](const Edge &e, std::uint32_t l) { return e.label < l; });
  if (it == es.end() || it->label != label)
    return kNoNode;
  return it->child;
}

// ---------------------------------------------------------------- Universe

Universe::Universe(SpacePtr space, Faults faults)
    : space_(std::move(space)), store_(space_->size()), faults_(faults) {}

std::shared_ptr<Universe> Universe::create(SpacePtr space, Faults faults) {
  if (!space)
    throw Error("universe needs a state space");
  return std::make_shared<Universe>(std::move(space), faults);
}

Step Universe::label_step(std::uint32_t label) const {
  auto n = space_->size();
  if (label < n)
    return Step::program(space_->state(label));
  return Step::env(space_->state(label - n));
}

// ---------------------------------------------------------------- TraceSet

TraceSet::TraceSet(UniversePtr universe, int depth, std::vector<NodeId> roots)
    : universe_(std::move(universe)), depth_(depth), roots_(std::move(roots)) {
  if (roots_.size() != universe_->space()->size())
    throw Error("trace set needs one root per state");
}

bool TraceSet::contains(const Trace &t) const {
  if (t.initial.index >= roots_.size() ||
      static_cast<int>(t.steps.size()) > depth_)
    return false;
  auto &st = store();
  auto n = roots_[t.initial.index];
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto &z = t.steps[i];
    if (z.is_terminal() && i + 1 != t.steps.size())
      return false;
    if (st.is_any(n))
      return true;
    if (z.kind == StepKind::Term)
      return st.has_term(n);
    if (z.post.is_bottom())
      return z.kind == StepKind::Program ? st.has_pabort(n) : st.has_eabort(n);
    auto label = z.kind == StepKind::Program
                     ? universe_->program_label(z.post.state())
                     : universe_->env_label(z.post.state());
    n = st.child(n, label);
    if (n == kNoNode)
      return false;
  }
  return true;
}

double TraceSet::trace_count() const {
  auto &st = store();
  double labels = st.num_labels();
  std::vector<double> any_count(depth_ + 1, 1.0);
  for (int h = 1; h <= depth_; ++h)
    any_count[h] = 4.0 + labels * any_count[h - 1];
  std::unordered_map<NodeId, double> memo;
  std::function<double(NodeId)> count = [&](NodeId n) -> double {
    if (st.is_any(n))
      return any_count[st.level(n)];
    if (auto it = memo.find(n); it != memo.end())
      return it->second;
    double c = 1.0;
    if (st.flags(n) & kTerm)
      c += 1.0;
    if (st.flags(n) & kEAbort)
      c += 1.0;
    for (const auto &e : st.edges(n))
      c += count(e.child);
    memo.emplace(n, c);
    return c;
  };
  double total = 0;
  for (auto r : roots_)
    total += count(r);
  return total;
}

std::size_t TraceSet::node_count() const {
  auto &st = store();
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> stack(roots_.begin(), roots_.end());
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second)
      continue;
    for (const auto &e : st.edges(n))
      stack.push_back(e.child);
  }
  return seen.size();
}

bool TraceSet::operator==(const TraceSet &other) const {
  if (depth_ != other.depth_)
    return false;
  if (universe_ == other.universe_)
    return roots_ == other.roots_;
  if (!(*space() == *other.space()))
    return false;
  return to_listing(*this) == to_listing(other);
}

TraceSet magic_set(const UniversePtr &u, Depth depth) {
  auto b = u->store().bare(depth.bound);
  return TraceSet(u, depth.bound, std::vector<NodeId>(u->space()->size(), b));
}

TraceSet full_set(const UniversePtr &u, Depth depth) {
  auto a = u->store().any(depth.bound);
  return TraceSet(u, depth.bound, std::vector<NodeId>(u->space()->size(), a));
}

// ----------------------------------------------------------- node algebra

NodeId node_union(NodeStore &st, NodeId a, NodeId b) {
  if (a == b)
    return a;
  if (st.is_any(a))
    return a;
  if (st.is_any(b))
    return b;
  auto &memo = st.memo(MemoOp::Union);
  auto key = pair_key(std::min(a, b), std::max(a, b));
  if (auto it = memo.find(key); it != memo.end())
    return it->second;
  auto ea = st.edges(a);
  auto eb = st.edges(b);
  // Copy: recursive calls may reallocate the edge pool.
  std::vector<Edge> xa(ea.begin(), ea.end()), xb(eb.begin(), eb.end());
  std::vector<Edge> out;
  out.reserve(xa.size() + xb.size());
  std::size_t i = 0, j = 0;
  while (i < xa.size() || j < xb.size()) {
    if (j == xb.size() || (i < xa.size() && xa[i].label < xb[j].label))
      out.push_back(xa[i++]);
    else if (i == xa.size() || xb[j].label < xa[i].label)
      out.push_back(xb[j++]);
    else {
      out.push_back({xa[i].label, node_union(st, xa[i].child, xb[j].child)});
      ++i;
      ++j;
    }
  }
  auto r = st.make(st.level(a), st.flags(a) | st.flags(b), out);
  memo.emplace(key, r);
  return r;
}

NodeId node_intersect(NodeStore &st, NodeId a, NodeId b) {
  if (a == b)
    return a;
  if (st.is_any(a))
    return b;
  if (st.is_any(b))
    return a;
  auto &memo = st.memo(MemoOp::Intersect);
  auto key = pair_key(std::min(a, b), std::max(a, b));
  if (auto it = memo.find(key); it != memo.end())
    return it->second;
  auto ea = st.edges(a);
  auto eb = st.edges(b);
  std::vector<Edge> xa(ea.begin(), ea.end()), xb(eb.begin(), eb.end());
  std::vector<Edge> out;
  std::size_t i = 0, j = 0;
  while (i < xa.size() && j < xb.size()) {
    if (xa[i].label < xb[j].label)
      ++i;
    else if (xb[j].label < xa[i].label)
      ++j;
    else {
      out.push_back(
          {xa[i].label, node_intersect(st, xa[i].child, xb[j].child)});
      ++i;
      ++j;
    }
  }
  auto r = st.make(st.level(a), st.flags(a) & st.flags(b), out);
  memo.emplace(key, r);
  return r;
}

bool node_subset(NodeStore &st, NodeId a, NodeId b) {
  if (a == b || st.is_any(b))
    return true;
  if (st.is_any(a))
    return false;
  if (st.flags(a) & ~st.flags(b))
    return false;
  auto &memo = st.memo(MemoOp::Subset);
  auto key = pair_key(a, b);
  if (auto it = memo.find(key); it != memo.end())
    return it->second != 0;
  bool ok = true;
  for (const auto &e : std::vector<Edge>(st.edges(a).begin(), st.edges(a).end())) {
    auto cb = st.child(b, e.label);
    if (cb == kNoNode || !node_subset(st, e.child, cb)) {
      ok = false;
      break;
    }
  }
  st.memo(MemoOp::Subset).emplace(key, ok ? 1 : 0);
  return ok;
}

NodeId node_truncate(NodeStore &st, NodeId n, int level) {
  auto lv = st.level(n);
  if (level > lv)
    throw Error("cannot extend a trace set beyond its depth");
  if (lv == level)
    return n;
  if (level == 0)
    return st.leaf();
  if (st.is_any(n))
    return st.any(level);
  auto &memo = st.memo(MemoOp::Truncate);
  auto key = pair_key(n, static_cast<std::uint32_t>(level));
  if (auto it = memo.find(key); it != memo.end())
    return it->second;
  std::vector<Edge> es(st.edges(n).begin(), st.edges(n).end());
  for (auto &e : es)
    e.child = node_truncate(st, e.child, level - 1);
  auto r = st.make(level, st.flags(n), es);
  st.memo(MemoOp::Truncate).emplace(key, r);
  return r;
}

// ------------------------------------------------------------- set-level

namespace {

void check_trace_shape(const StateSpace &space, const Trace &t, Depth depth) {
  if (t.initial.index >= space.size())
    throw TraceError("initial state out of range");
  mk_trace(t.initial, t.steps, depth);
  for (const auto &z : t.steps)
    if (z.kind != StepKind::Term && !z.post.is_bottom() &&
        z.post.state().index >= space.size())
      throw TraceError("step post-state out of range");
}

NodeId chain(Universe &u, const Trace &t, std::size_t i, int level) {
  auto &st = u.store();
  if (i == t.steps.size())
    return st.bare(level);
  const auto &z = t.steps[i];
  if (z.kind == StepKind::Term)
    return st.make(level, kTerm, {});
  if (z.post.is_bottom())
    return z.kind == StepKind::Program ? st.any(level)
                                       : st.make(level, kEAbort, {});
  auto child = chain(u, t, i + 1, level - 1);
  auto label = z.kind == StepKind::Program ? u.program_label(z.post.state())
                                           : u.env_label(z.post.state());
  Edge e{label, child};
  return st.make(level, 0, std::span<const Edge>(&e, 1));
}

} // namespace

TraceSet close(const UniversePtr &u, Depth depth, const TraceList &raw) {
  auto &st = u->store();
  std::vector<NodeId> roots(u->space()->size(), st.bare(depth.bound));
  for (const auto &t : raw) {
    check_trace_shape(*u->space(), t, depth);
    auto c = chain(*u, t, 0, depth.bound);
    roots[t.initial.index] = node_union(st, roots[t.initial.index], c);
  }
  return TraceSet(u, depth.bound, std::move(roots));
}

TraceList enumerate(const TraceSet &s, std::size_t limit) {
  TraceList out;
  auto &st = s.store();
  const auto &u = *s.universe();
  Trace cur;
  std::function<void(NodeId)> walk = [&](NodeId n) {
    if (out.size() > limit)
      throw BudgetExceeded("trace enumeration limit exceeded");
    out.insert(cur);
    if (st.level(n) == 0)
      return;
    auto add_terminal = [&](Step z) {
      cur.steps.push_back(z);
      out.insert(cur);
      cur.steps.pop_back();
    };
    if (st.has_term(n))
      add_terminal(Step::term());
    if (st.has_eabort(n))
      add_terminal(Step::env(ExtState::bottom()));
    if (st.has_pabort(n))
      add_terminal(Step::program(ExtState::bottom()));
    if (st.is_any(n)) {
      for (std::uint32_t l = 0; l < st.num_labels(); ++l) {
        cur.steps.push_back(u.label_step(l));
        walk(st.any(st.level(n) - 1));
        cur.steps.pop_back();
      }
      return;
    }
    std::vector<Edge> es(st.edges(n).begin(), st.edges(n).end());
    for (const auto &e : es) {
      cur.steps.push_back(u.label_step(e.label));
      walk(e.child);
      cur.steps.pop_back();
    }
  };
  for (std::size_t i = 0; i < s.roots().size(); ++i) {
    cur = Trace{s.space()->state(i), {}};
    walk(s.roots()[i]);
  }
  return out;
}

bool is_healthy(const SpacePtr &space, Depth depth, const TraceList &traces) {
  auto n = space->size();
  for (const auto &t : traces) {
    try {
      check_trace_shape(*space, t, depth);
    } catch (const TraceError &) {
      return false;
    }
  }
  // empty closure
  for (std::size_t i = 0; i < n; ++i)
    if (!traces.contains(Trace{space->state(i), {}}))
      return false;
  // prefix closure
  for (const auto &t : traces) {
    Trace p{t.initial, {}};
    for (std::size_t k = 0; k + 1 < t.steps.size(); ++k) {
      p.steps.push_back(t.steps[k]);
      if (!traces.contains(p))
        return false;
    }
  }
  // abort closure: t^[π⊥] ∈ s implies every extension of t is in s. It is
  // enough that each one-step extension is present and each non-terminal
  // one again aborts, unless the bound cuts it off.
  std::vector<Step> all_steps;
  for (std::size_t i = 0; i < n; ++i) {
    all_steps.push_back(Step::program(space->state(i)));
    all_steps.push_back(Step::env(space->state(i)));
  }
  all_steps.push_back(Step::program(ExtState::bottom()));
  all_steps.push_back(Step::env(ExtState::bottom()));
  all_steps.push_back(Step::term());
  for (const auto &t : traces) {
    if (t.steps.empty() || t.steps.back() != Step::program(ExtState::bottom()))
      continue;
    Trace base{t.initial, {t.steps.begin(), t.steps.end() - 1}};
    for (const auto &z : all_steps) {
      Trace ext = base;
      ext.steps.push_back(z);
      if (!traces.contains(ext))
        return false;
      if (!z.is_terminal() && static_cast<int>(ext.steps.size()) < depth.bound) {
        ext.steps.push_back(Step::program(ExtState::bottom()));
        if (!traces.contains(ext))
          return false;
      }
    }
  }
  return true;
}

bool is_healthy(const TraceSet &s) {
  return is_healthy(s.space(), Depth(s.depth()), enumerate(s));
}

bool is_well_formed(const TraceSet &s) {
  auto &st = s.store();
  if (s.roots().size() != s.space()->size())
    return false;
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> stack;
  for (auto r : s.roots()) {
    if (r >= st.size() || st.level(r) != s.depth())
      return false;
    stack.push_back(r);
  }
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second)
      continue;
    auto lv = st.level(n);
    auto es = st.edges(n);
    if (lv == 0 && (st.flags(n) != 0 || !es.empty()))
      return false;
    if (st.is_any(n) && (!es.empty() || st.flags(n) != kAny))
      return false;
    for (std::size_t i = 0; i < es.size(); ++i) {
      if (es[i].label >= st.num_labels())
        return false;
      if (i > 0 && es[i - 1].label >= es[i].label)
        return false;
      if (es[i].child >= st.size() || st.level(es[i].child) != lv - 1)
        return false;
      stack.push_back(es[i].child);
    }
  }
  return true;
}

SubsetResult subset(const TraceSet &super, const TraceSet &sub) {
  require_same_space(super.space(), sub.space());
  if (super.depth() != sub.depth())
    throw Error("subset needs equal depths");
  if (super.universe() != sub.universe()) {
    auto big = enumerate(super);
    for (const auto &t : enumerate(sub))
      if (!big.contains(t)) {
        // enumerate() is ordered by initial state then steps, not length;
        // pick the shortest missing trace.
        std::optional<Trace> best;
        for (const auto &c : enumerate(sub))
          if (!big.contains(c) && (!best || c.steps.size() < best->steps.size()))
            best = c;
        return {false, best};
      }
    return {true, std::nullopt};
  }
  auto &st = sub.store();
  const auto &u = *sub.universe();
  constexpr int kInf = std::numeric_limits<int>::max();
  std::unordered_map<std::uint64_t, int> gap_memo;
  // Shortest suffix below `a` absent below `b`, kInf if none.
  std::function<int(NodeId, NodeId)> gap = [&](NodeId a, NodeId b) -> int {
    if (node_subset(st, a, b))
      return kInf;
    if (st.has_pabort(a) && !st.has_pabort(b))
      return 1;
    if ((st.has_term(a) && !st.has_term(b)) ||
        (st.has_eabort(a) && !st.has_eabort(b)))
      return 1;
    auto key = pair_key(a, b);
    if (auto it = gap_memo.find(key); it != gap_memo.end())
      return it->second;
    int best = kInf;
    std::vector<Edge> es(st.edges(a).begin(), st.edges(a).end());
    for (const auto &e : es) {
      auto cb = st.child(b, e.label);
      if (cb == kNoNode) {
        best = 1;
        break;
      }
      auto g = gap(e.child, cb);
      if (g != kInf)
        best = std::min(best, g + 1);
    }
    gap_memo.emplace(key, best);
    return best;
  };

  int best = kInf;
  std::size_t best_root = 0;
  for (std::size_t i = 0; i < sub.roots().size(); ++i) {
    auto g = gap(sub.roots()[i], super.roots()[i]);
    if (g < best) {
      best = g;
      best_root = i;
    }
  }
  if (best == kInf)
    return {true, std::nullopt};

  Trace w{sub.space()->state(best_root), {}};
  NodeId a = sub.roots()[best_root];
  NodeId b = super.roots()[best_root];
  for (int remaining = best; remaining > 0; --remaining) {
    if (remaining == 1) {
      // Among equally short witnesses prefer a proper step.
      std::optional<Step> last;
      std::vector<Edge> out(st.edges(a).begin(), st.edges(a).end());
      for (const auto &e : out)
        if (st.child(b, e.label) == kNoNode) {
          last = u.label_step(e.label);
          break;
        }
      if (!last && st.has_term(a) && !st.has_term(b))
        last = Step::term();
      if (!last && st.has_eabort(a) && !st.has_eabort(b))
        last = Step::env(ExtState::bottom());
      if (!last && st.has_pabort(a) && !st.has_pabort(b))
        last = Step::program(ExtState::bottom());
      if (!last)
        throw Error("internal: witness reconstruction failed");
      w.steps.push_back(*last);
      break;
    }
    bool moved = false;
    std::vector<Edge> es(st.edges(a).begin(), st.edges(a).end());
    for (const auto &e : es) {
      auto cb = st.child(b, e.label);
      if (cb == kNoNode) {
        if (remaining == 1) {
          w.steps.push_back(u.label_step(e.label));
          moved = true;
          remaining = 0;
          break;
        }
        continue;
      }
      if (remaining > 1 && gap(e.child, cb) == remaining - 1) {
        w.steps.push_back(u.label_step(e.label));
        a = e.child;
        b = cb;
        moved = true;
        break;
      }
    }
    if (!moved)
      throw Error("internal: witness reconstruction failed");
    if (remaining == 0)
      break;
  }
  return {false, w};
}

std::vector<TerminatingTrace> terminating(const TraceSet &s) {
  std::vector<TerminatingTrace> out;
  for (const auto &t : enumerate(s)) {
    if (t.steps.empty() || t.steps.back().kind != StepKind::Term)
      continue;
    Trace base{t.initial, {t.steps.begin(), t.steps.end() - 1}};
    auto last = last_state(base);
    out.push_back({std::move(base), last});
  }
  return out;
}

TraceSet restrict_depth(const TraceSet &s, Depth depth) {
  if (depth.bound > s.depth())
    throw Error("restrict_depth cannot increase the depth");
  auto &st = s.store();
  std::vector<NodeId> roots;
  roots.reserve(s.roots().size());
  for (auto r : s.roots())
    roots.push_back(node_truncate(st, r, depth.bound));
  return TraceSet(s.universe(), depth.bound, std::move(roots));
}

std::string to_listing(const TraceSet &s) {
  auto &st = s.store();
  const auto &space = *s.space();
  const auto &u = *s.universe();
  std::string out;
  std::string prefix;
  std::function<void(NodeId)> walk = [&](NodeId n) {
    if (st.is_any(n)) {
      out += prefix + " [any]\n";
      return;
    }
    auto es = st.edges(n);
    if (st.flags(n) & kTerm)
      out += prefix + " [term]\n";
    if (st.flags(n) & kEAbort)
      out += prefix + " [eabort]\n";
    if (es.empty() && st.flags(n) == 0)
      out += prefix + " [open]\n";
    std::vector<Edge> copy(es.begin(), es.end());
    for (const auto &e : copy) {
      auto z = u.label_step(e.label);
      auto saved = prefix.size();
      prefix += z.kind == StepKind::Program ? " -p-> " : " -e-> ";
      prefix += space.format(z.post.state());
      walk(e.child);
      prefix.resize(saved);
    }
  };
  for (std::size_t i = 0; i < s.roots().size(); ++i) {
    prefix = space.format(space.state(i));
    walk(s.roots()[i]);
  }
  return out;
}

} // namespace aczel

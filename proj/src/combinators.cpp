#include "aczel/combinators.hpp"

#include "aczel/errors.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace aczel {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

void require_compatible(const CommandSemantics &a, const CommandSemantics &b) {
  if (a.universe() != b.universe())
    throw SpaceMismatch("commands built in different universes");
  if (a.depth() != b.depth())
    throw Error("commands built at different depths");
}

std::vector<Edge> copy_edges(const NodeStore &st, NodeId n) {
  auto es = st.edges(n);
  return {es.begin(), es.end()};
}

// ------------------------------------------------------------- sequential

class SeqBuilder {
public:
  SeqBuilder(const CommandSemantics &second)
      : second_(second), st_(second.store()), u_(*second.universe()) {}

  NodeId run(NodeId n, StateId current) {
    auto h = st_.level(n);
    if (h == 0)
      return st_.leaf();
    if (st_.is_any(n))
      return u_.faults().seq_drops_abort_closure ? st_.bare(h) : n;
    auto key = pair_key(n, current.index);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    auto es = copy_edges(st_, n);
    for (auto &e : es)
      e.child = run(e.child, u_.label_step(e.label).post.state());
    auto r = st_.make(h, st_.flags(n) & kEAbort, es);
    if (st_.flags(n) & kTerm)
      r = node_union(st_, r, node_truncate(st_, second_.root(current), h));
    memo_.emplace(key, r);
    return r;
  }

private:
  const CommandSemantics &second_;
  NodeStore &st_;
  const Universe &u_;
  std::unordered_map<std::uint64_t, NodeId> memo_;
};

// --------------------------------------------------------------- parallel

NodeId par_node(NodeStore &st, std::size_t n, NodeId a, NodeId b) {
  auto h = st.level(a);
  if (h == 0)
    return st.leaf();
  bool a_pab = st.has_pabort(a), b_pab = st.has_pabort(b);
  bool a_eab = st.has_eabort(a), b_eab = st.has_eabort(b);
  // π⊥ of one side matched by ε⊥ of the other: abort-complete.
  if ((a_pab && b_eab) || (a_eab && b_pab))
    return st.any(h);
  auto &memo = st.memo(MemoOp::Par);
  auto key = pair_key(std::min(a, b), std::max(a, b));
  if (auto it = memo.find(key); it != memo.end())
    return it->second;
  std::uint8_t flags = 0;
  if (st.has_term(a) && st.has_term(b))
    flags |= kTerm;
  if (a_eab && b_eab)
    flags |= kEAbort;
  std::vector<Edge> prog, env;
  auto n32 = static_cast<std::uint32_t>(n);
  for (std::uint32_t s = 0; s < n32; ++s) {
    auto ap = st.child(a, s), ae = st.child(a, n32 + s);
    auto bp = st.child(b, s), be = st.child(b, n32 + s);
    NodeId p = kNoNode;
    if (ap != kNoNode && be != kNoNode)
      p = par_node(st, n, ap, be);
    if (ae != kNoNode && bp != kNoNode) {
      auto q = par_node(st, n, ae, bp);
      p = p == kNoNode ? q : node_union(st, p, q);
    }
    if (p != kNoNode)
      prog.push_back({s, p});
    if (ae != kNoNode && be != kNoNode)
      env.push_back({n32 + s, par_node(st, n, ae, be)});
  }
  prog.insert(prog.end(), env.begin(), env.end());
  auto r = st.make(h, flags, prog);
  st.memo(MemoOp::Par).emplace(key, r);
  return r;
}

// ------------------------------------------------------- weak conjunction

NodeId conj_node(NodeStore &st, NodeId a, NodeId b) {
  auto h = st.level(a);
  if (st.is_any(a) || st.is_any(b))
    return st.any(h);
  if (a == b || h == 0)
    return a;
  auto &memo = st.memo(MemoOp::Conj);
  auto key = pair_key(std::min(a, b), std::max(a, b));
  if (auto it = memo.find(key); it != memo.end())
    return it->second;
  auto xa = copy_edges(st, a), xb = copy_edges(st, b);
  std::vector<Edge> out;
  std::size_t i = 0, j = 0;
  while (i < xa.size() && j < xb.size()) {
    if (xa[i].label < xb[j].label)
      ++i;
    else if (xb[j].label < xa[i].label)
      ++j;
    else {
      out.push_back({xa[i].label, conj_node(st, xa[i].child, xb[j].child)});
      ++i;
      ++j;
    }
  }
  auto r = st.make(h, st.flags(a) & st.flags(b), out);
  st.memo(MemoOp::Conj).emplace(key, r);
  return r;
}

// ------------------------------------------------------------------- hide

class HideBuilder {
public:
  HideBuilder(Universe &u, std::size_t var)
      : st_(u.store()), space_(*u.space()), u_(u), var_(var) {}

  NodeId run(NodeId n) {
    auto h = st_.level(n);
    if (h == 0 || st_.is_any(n))
      return n;
    if (auto it = memo_.find(n); it != memo_.end())
      return it->second;
    // (label of class representative) -> union of children in that class
    std::map<std::uint32_t, NodeId> groups;
    for (const auto &e : copy_edges(st_, n)) {
      auto z = u_.label_step(e.label);
      auto rep = space_.erase(z.post.state(), var_);
      auto key = z.kind == StepKind::Program ? u_.program_label(rep)
                                             : u_.env_label(rep);
      auto [it, fresh] = groups.emplace(key, e.child);
      if (!fresh)
        it->second = node_union(st_, it->second, e.child);
    }
    std::vector<Edge> out;
    auto dom = space_.variable(var_).domain.size();
    for (const auto &[key, child] : groups) {
      auto hc = run(child);
      auto z = u_.label_step(key);
      for (std::size_t v = 0; v < dom; ++v) {
        auto s = space_.with_value(z.post.state(), var_, v);
        out.push_back({z.kind == StepKind::Program ? u_.program_label(s)
                                                   : u_.env_label(s),
                       hc});
      }
    }
    std::sort(out.begin(), out.end(),
              [](const Edge &x, const Edge &y) { return x.label < y.label; });
    auto r = st_.make(h, st_.flags(n), out);
    memo_.emplace(n, r);
    return r;
  }

private:
  NodeStore &st_;
  const StateSpace &space_;
  Universe &u_;
  std::size_t var_;
  std::unordered_map<NodeId, NodeId> memo_;
};

CommandSemantics iterate(const Context &ctx, const MonotoneFunction &f,
                         CommandSemantics x, const FixpointOptions &opts) {
  for (std::size_t i = 0;; ++i) {
    auto cap = opts.max_iterations ? *opts.max_iterations
                                   : 10 * x.node_count() + 100;
    if (i >= cap)
      throw BudgetExceeded("fixed-point iteration did not stabilise within " +
                           std::to_string(cap) + " steps");
    auto next = f(x);
    if (next.universe() != ctx.universe || next.depth() != x.depth())
      throw Error("fixed-point function left its universe or depth");
    if (next == x)
      return x;
    x = std::move(next);
  }
}

} // namespace

Context context_of(const CommandSemantics &c) {
  return Context(c.universe(), Depth(c.depth()));
}

CommandSemantics choice(const Context &ctx,
                        std::span<const CommandSemantics> cs) {
  auto acc = magic(ctx);
  for (const auto &c : cs)
    acc = choice(acc, c);
  return acc;
}

CommandSemantics choice(const CommandSemantics &a, const CommandSemantics &b) {
  require_compatible(a, b);
  auto &st = a.store();
  std::vector<NodeId> roots(a.roots().size());
  for (std::size_t i = 0; i < roots.size(); ++i)
    roots[i] = node_union(st, a.roots()[i], b.roots()[i]);
  return CommandSemantics(a.universe(), a.depth(), std::move(roots));
}

CommandSemantics supremum(const Context &ctx,
                          std::span<const CommandSemantics> cs) {
  auto acc = abort_cmd(ctx);
  for (const auto &c : cs)
    acc = supremum(acc, c);
  return acc;
}

CommandSemantics supremum(const CommandSemantics &a,
                          const CommandSemantics &b) {
  require_compatible(a, b);
  auto &st = a.store();
  std::vector<NodeId> roots(a.roots().size());
  for (std::size_t i = 0; i < roots.size(); ++i)
    roots[i] = node_intersect(st, a.roots()[i], b.roots()[i]);
  return CommandSemantics(a.universe(), a.depth(), std::move(roots));
}

CommandSemantics seq(const CommandSemantics &a, const CommandSemantics &b) {
  require_compatible(a, b);
  SeqBuilder builder(b);
  std::vector<NodeId> roots(a.roots().size());
  for (std::size_t i = 0; i < roots.size(); ++i)
    roots[i] = builder.run(a.roots()[i], a.space()->state(i));
  return CommandSemantics(a.universe(), a.depth(), std::move(roots));
}

CommandSemantics seq(std::initializer_list<CommandSemantics> cs) {
  if (cs.size() == 0)
    throw Error("seq of no commands");
  // Right-nested: a ; (b ; c).
  auto it = cs.end();
  CommandSemantics acc = *--it;
  while (it != cs.begin()) {
    --it;
    acc = seq(*it, acc);
  }
  return acc;
}

CommandSemantics lfp(const Context &ctx, const MonotoneFunction &f,
                     FixpointOptions opts) {
  return iterate(ctx, f, abort_cmd(ctx), opts);
}

CommandSemantics gfp(const Context &ctx, const MonotoneFunction &f,
                     FixpointOptions opts) {
  return iterate(ctx, f, magic(ctx), opts);
}

CommandSemantics star(const CommandSemantics &c) {
  auto ctx = context_of(c);
  auto n = nil(ctx);
  return gfp(ctx, [&](const CommandSemantics &x) { return choice(n, seq(c, x)); });
}

CommandSemantics omega(const CommandSemantics &c) {
  auto ctx = context_of(c);
  auto n = nil(ctx);
  return lfp(ctx, [&](const CommandSemantics &x) { return choice(n, seq(c, x)); });
}

CommandSemantics infiter(const CommandSemantics &c) {
  return seq(omega(c), magic(context_of(c)));
}

CommandSemantics par(const CommandSemantics &a, const CommandSemantics &b) {
  require_compatible(a, b);
  auto &st = a.store();
  auto n = a.space()->size();
  std::vector<NodeId> roots(a.roots().size());
  for (std::size_t i = 0; i < roots.size(); ++i)
    roots[i] = par_node(st, n, a.roots()[i], b.roots()[i]);
  return CommandSemantics(a.universe(), a.depth(), std::move(roots));
}

CommandSemantics conj(const CommandSemantics &a, const CommandSemantics &b) {
  require_compatible(a, b);
  auto &st = a.store();
  std::vector<NodeId> roots(a.roots().size());
  for (std::size_t i = 0; i < roots.size(); ++i)
    roots[i] = conj_node(st, a.roots()[i], b.roots()[i]);
  return CommandSemantics(a.universe(), a.depth(), std::move(roots));
}

CommandSemantics hide(const CommandSemantics &c, std::string_view var) {
  const auto &space = *c.space();
  auto x = space.variable_index(var);
  auto &st = c.store();
  HideBuilder builder(*c.universe(), x);
  std::vector<NodeId> roots(c.roots().size());
  auto dom = space.variable(x).domain.size();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto s = space.state(i);
    NodeId acc = kNoNode;
    for (std::size_t v = 0; v < dom; ++v) {
      auto r = c.root(space.with_value(s, x, v));
      acc = acc == kNoNode ? r : node_union(st, acc, r);
    }
    roots[i] = builder.run(acc);
  }
  return CommandSemantics(c.universe(), c.depth(), std::move(roots));
}

} // namespace aczel

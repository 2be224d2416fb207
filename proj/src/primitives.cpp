#include "aczel/primitives.hpp"

namespace aczel {

namespace {

enum class Who { Program, Env };

CommandSemantics one_step(const Context &ctx, const Relation &r, Who who,
                          std::uint8_t root_flags) {
  require_same_space(ctx.space(), r.space());
  auto &st = ctx.store();
  const auto &u = *ctx.universe;
  auto d = ctx.depth.bound;
  auto n = ctx.space()->size();
  auto done = st.make(d - 1, kTerm, {});
  std::vector<NodeId> roots;
  roots.reserve(n);
  std::vector<Edge> es;
  for (std::size_t a = 0; a < n; ++a) {
    es.clear();
    for (std::size_t b = 0; b < n; ++b) {
      auto s = ctx.space()->state(b);
      if (!r.contains(ctx.space()->state(a), s))
        continue;
      es.push_back({who == Who::Program ? u.program_label(s) : u.env_label(s),
                    done});
    }
    roots.push_back(st.make(d, root_flags, es));
  }
  return CommandSemantics(ctx.universe, d, std::move(roots));
}

} // namespace

CommandSemantics pstep(const Context &ctx, const Relation &r) {
  return one_step(ctx, r, Who::Program, 0);
}

CommandSemantics estep(const Context &ctx, const Relation &r) {
  return one_step(ctx, r, Who::Env, 0);
}

CommandSemantics estep_or_abort(const Context &ctx, const Relation &r) {
  return one_step(ctx, r, Who::Env, kEAbort);
}

CommandSemantics test(const Context &ctx, const Predicate &p) {
  require_same_space(ctx.space(), p.space());
  auto &st = ctx.store();
  auto d = ctx.depth.bound;
  auto yes = st.make(d, kTerm, {});
  auto no = st.bare(d);
  std::vector<NodeId> roots;
  for (std::size_t i = 0; i < ctx.space()->size(); ++i)
    roots.push_back(p.contains(ctx.space()->state(i)) ? yes : no);
  return CommandSemantics(ctx.universe, d, std::move(roots));
}

CommandSemantics abort_cmd(const Context &ctx) {
  return full_set(ctx.universe, ctx.depth);
}

CommandSemantics eabort(const Context &ctx) {
  auto r = ctx.store().make(ctx.depth.bound, kEAbort, {});
  return CommandSemantics(ctx.universe, ctx.depth.bound,
                          std::vector<NodeId>(ctx.space()->size(), r));
}

CommandSemantics pi(const Context &ctx) {
  return pstep(ctx, Relation::universal(ctx.space()));
}

CommandSemantics eps(const Context &ctx) {
  return estep(ctx, Relation::universal(ctx.space()));
}

CommandSemantics epsbot(const Context &ctx) {
  return estep_or_abort(ctx, Relation::universal(ctx.space()));
}

CommandSemantics nil(const Context &ctx) {
  return test(ctx, Predicate::full(ctx.space()));
}

CommandSemantics magic(const Context &ctx) {
  return magic_set(ctx.universe, ctx.depth);
}

} // namespace aczel

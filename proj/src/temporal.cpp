#include "aczel/temporal.hpp"

namespace aczel {

namespace {

LtlPtr make(LtlFormula f) { return std::make_shared<const LtlFormula>(std::move(f)); }

using K = LtlFormula::Kind;

CommandSemantics any_step(const Context &ctx) { return choice(pi(ctx), epsbot(ctx)); }

CommandSemantics progress(const CommandSemantics &op, const Relation &r) {
  auto ctx = context_of(op);
  auto f = LtlFormula::always(LtlFormula::eventually(LtlFormula::env(r)));
  auto live = conj(guar(ctx, Relation::identity(ctx.space())), encode(ctx, *f));
  return choice(op, live);
}

} // namespace

LtlPtr LtlFormula::state(Predicate p) { return make({K::StatePred, std::move(p), {}, {}, {}}); }
LtlPtr LtlFormula::prog(Relation r) { return make({K::ProgStep, {}, std::move(r), {}, {}}); }
LtlPtr LtlFormula::env(Relation r) { return make({K::EnvStep, {}, std::move(r), {}, {}}); }
LtlPtr LtlFormula::both(LtlPtr a, LtlPtr b) { return make({K::And, {}, {}, std::move(a), std::move(b)}); }
LtlPtr LtlFormula::either(LtlPtr a, LtlPtr b) { return make({K::Or, {}, {}, std::move(a), std::move(b)}); }
LtlPtr LtlFormula::next(LtlPtr h) { return make({K::Next, {}, {}, std::move(h), {}}); }
LtlPtr LtlFormula::eventually(LtlPtr h) { return make({K::Eventually, {}, {}, std::move(h), {}}); }
LtlPtr LtlFormula::always(LtlPtr h) { return make({K::Always, {}, {}, std::move(h), {}}); }

CommandSemantics encode(const Context &ctx, const LtlFormula &f) {
  switch (f.kind) {
  case K::StatePred:
    return seq(test(ctx, *f.pred), abort_cmd(ctx));
  case K::ProgStep:
    return seq(pstep(ctx, *f.rel), abort_cmd(ctx));
  case K::EnvStep:
    return seq(estep(ctx, *f.rel), abort_cmd(ctx));
  case K::And:
    return supremum(encode(ctx, *f.lhs), encode(ctx, *f.rhs));
  case K::Or:
    return choice(encode(ctx, *f.lhs), encode(ctx, *f.rhs));
  case K::Next:
    return seq(any_step(ctx), encode(ctx, *f.lhs));
  case K::Eventually:
    return seq(star(any_step(ctx)), encode(ctx, *f.lhs));
  case K::Always: {
    auto h = encode(ctx, *f.lhs);
    auto step = any_step(ctx);
    return lfp(ctx, [&](const CommandSemantics &x) {
      return supremum(h, seq(step, x));
    });
  }
  }
  return abort_cmd(ctx);
}

CommandSemantics obstruction_free(const CommandSemantics &op) {
  return progress(op, Relation::universal(op.space()));
}

CommandSemantics lock_free(const CommandSemantics &op, std::string_view var) {
  auto changed =
      Relation::identity_on(op.space(), {std::string(var)}).complement();
  return progress(op, changed);
}

CommandSemantics wait_free(const CommandSemantics &op) { return op; }

} // namespace aczel

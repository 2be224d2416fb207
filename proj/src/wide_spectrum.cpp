#include "aczel/wide_spectrum.hpp"

#include "aczel/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace aczel {

namespace {

CommandSemantics cached(const Context &ctx, const std::string &name,
                        const std::function<CommandSemantics()> &make) {
  auto &named = ctx.universe->named();
  auto key = std::make_pair(name, ctx.depth.bound);
  if (auto it = named.find(key); it != named.end())
    return CommandSemantics(ctx.universe, ctx.depth.bound, it->second);
  auto c = make();
  named.emplace(key, c.roots());
  return c;
}

CommandSemantics pi_or_epsbot(const Context &ctx) {
  return choice(pi(ctx), epsbot(ctx));
}

Relation identity_except(const SpacePtr &space,
                         const std::vector<std::string> &vars) {
  for (const auto &v : vars)
    space->variable_index(v);
  std::vector<std::string> rest;
  for (const auto &var : space->variables())
    if (std::find(vars.begin(), vars.end(), var.name) == vars.end())
      rest.push_back(var.name);
  return Relation::identity_on(space, rest);
}

class Evaluator {
public:
  Evaluator(const Context &ctx, const OperatorTable &ops)
      : ctx_(ctx), ops_(ops), vals_(ops.values()) {}

  CommandSemantics eval(const Expr &e, ValueId k) {
    auto key = std::make_pair(&e, k);
    if (auto it = memo_.find(key); it != memo_.end())
      return it->second;
    auto r = compute(e, k);
    memo_.emplace(key, r);
    return r;
  }

private:
  CommandSemantics compute(const Expr &e, ValueId k) {
    const auto &space = ctx_.space();
    auto all = static_cast<ValueId>(vals_.size() + 1);
    switch (e.kind) {
    case Expr::Kind::Literal: {
      auto v = vals_.value(e.name);
      return seq(idle(ctx_), v == k ? nil(ctx_) : magic(ctx_));
    }
    case Expr::Kind::Variable: {
      auto x = space->variable_index(e.name);
      auto p = Predicate::from(space, [&](StateId s) {
        return vals_.of_state(*space, s, x) == k;
      });
      return seq({idle(ctx_), test(ctx_, p), idle(ctx_)});
    }
    case Expr::Kind::Primed:
      throw Error("primed variable " + e.name + "' in a program expression");
    case Expr::Kind::Unary: {
      auto acc = magic(ctx_);
      for (ValueId a = 0; a < all; ++a)
        if (ops_.unary(e.name, a) == k)
          acc = choice(acc, eval(*e.lhs, a));
      return acc;
    }
    case Expr::Kind::Binary: {
      if (!ops_.has_binary(e.name))
        throw Error("unknown binary operator '" + e.name + "'");
      auto acc = magic(ctx_);
      for (ValueId a = 0; a < all; ++a)
        for (ValueId b = 0; b < all; ++b)
          if (ops_.binary(e.name, a, b) == k)
            acc = choice(acc, par(eval(*e.lhs, a), eval(*e.rhs, b)));
      return acc;
    }
    }
    return magic(ctx_);
  }

  const Context &ctx_;
  const OperatorTable &ops_;
  const Values &vals_;
  std::map<std::pair<const Expr *, ValueId>, CommandSemantics> memo_;
};

} // namespace

CommandSemantics pre(const Context &ctx, const Predicate &p) {
  return choice(test(ctx, p), seq(test(ctx, p.complement()), abort_cmd(ctx)));
}

CommandSemantics opt(const Context &ctx, const Relation &r) {
  return choice(pstep(ctx, r), test(ctx, r.reflexive_states()));
}

CommandSemantics update(const Context &ctx, std::string_view var,
                        std::string_view value) {
  const auto &space = ctx.space();
  auto x = space->variable_index(var);
  auto v = space->find_value(x, value);
  if (!v)
    return opt(ctx, Relation::empty(space));
  return opt(ctx, Relation::from(space, [&](StateId a, StateId b) {
               return b == space->with_value(a, x, *v);
             }));
}

CommandSemantics skip(const Context &ctx) {
  return cached(ctx, "skip", [&] { return omega(epsbot(ctx)); });
}

CommandSemantics idle(const Context &ctx) {
  return cached(ctx, "idle", [&] {
    auto step = choice(pstep(ctx, Relation::identity(ctx.space())), epsbot(ctx));
    return seq(star(step), skip(ctx));
  });
}

CommandSemantics chaos(const Context &ctx) {
  return cached(ctx, "chaos", [&] { return omega(pi_or_epsbot(ctx)); });
}

CommandSemantics term(const Context &ctx) {
  return cached(ctx, "term",
                [&] { return seq(star(pi_or_epsbot(ctx)), skip(ctx)); });
}

CommandSemantics preempted(const Context &ctx) {
  return cached(ctx, "preempted", [&] {
    return seq(star(pi_or_epsbot(ctx)), infiter(epsbot(ctx)));
  });
}

CommandSemantics forever(const Context &ctx) {
  return cached(ctx, "forever", [&] { return infiter(pi_or_epsbot(ctx)); });
}

CommandSemantics fair(const Context &ctx) {
  return cached(ctx, "fair", [&] {
    auto e = star(epsbot(ctx));
    return seq(e, omega(seq(pi(ctx), e)));
  });
}

CommandSemantics fairterm(const Context &ctx) {
  return cached(ctx, "fairterm", [&] { return star(pi_or_epsbot(ctx)); });
}

const std::vector<std::string> &canonical_names() {
  static const std::vector<std::string> names = {
      "skip", "idle", "chaos", "term", "fair", "fairterm", "preempted", "forever"};
  return names;
}

std::optional<CommandSemantics> canonical(const Context &ctx,
                                          std::string_view name) {
  static const std::map<std::string, CommandSemantics (*)(const Context &),
                        std::less<>>
      table = {{"skip", skip},       {"idle", idle},
               {"chaos", chaos},     {"term", term},
               {"fair", fair},       {"fairterm", fairterm},
               {"preempted", preempted}, {"forever", forever}};
  auto it = table.find(name);
  if (it == table.end())
    return std::nullopt;
  return it->second(ctx);
}

CommandSemantics spec(const Context &ctx, const Relation &q) {
  require_same_space(ctx.space(), q.space());
  const auto &space = ctx.space();
  auto t = term(ctx);
  auto acc = magic(ctx);
  for (std::size_t i = 0; i < space->size(); ++i) {
    auto s = space->state(i);
    acc = choice(acc, seq({test(ctx, Predicate::singleton(space, s)), t,
                           test(ctx, q.image(s))}));
  }
  return acc;
}

CommandSemantics guar(const Context &ctx, const Relation &g) {
  return omega(choice(pstep(ctx, g), epsbot(ctx)));
}

CommandSemantics frame(const std::vector<std::string> &vars,
                       const CommandSemantics &c) {
  auto ctx = context_of(c);
  return conj(guar(ctx, identity_except(ctx.space(), vars)), c);
}

CommandSemantics eguard(const Context &ctx, const Relation &r) {
  return omega(choice(pi(ctx), estep_or_abort(ctx, r)));
}

CommandSemantics env_assumption(const Context &ctx, const Relation &r) {
  return seq(eguard(ctx, r),
             choice(nil(ctx), seq(estep(ctx, r.complement()), abort_cmd(ctx))));
}

CommandSemantics rg_spec(const Context &ctx, const RGQuintuple &q5) {
  return conj(conj(seq(pre(ctx, q5.pre), spec(ctx, q5.post)),
                   env_assumption(ctx, q5.rely)),
              guar(ctx, q5.guar));
}

CommandSemantics atomic(const Context &ctx, const Relation &q) {
  return seq({idle(ctx), pstep(ctx, q), idle(ctx)});
}

CommandSemantics eval_expr(const Context &ctx, const OperatorTable &ops,
                           const Expr &e, ValueId k) {
  Evaluator ev(ctx, ops);
  return ev.eval(e, k);
}

CommandSemantics assign(const Context &ctx, const OperatorTable &ops,
                        std::string_view var, const Expr &e) {
  const auto &vals = ops.values();
  ctx.space()->variable_index(var);
  Evaluator ev(ctx, ops);
  auto acc = seq(ev.eval(e, vals.bottom()), abort_cmd(ctx));
  for (ValueId k = 0; k < vals.size(); ++k)
    acc = choice(acc, seq({ev.eval(e, k), update(ctx, var, vals.name(k)),
                           idle(ctx)}));
  return acc;
}

CommandSemantics if_then_else(const Context &ctx, const OperatorTable &ops,
                              const Expr &b, const CommandSemantics &c1,
                              const CommandSemantics &c2) {
  const auto &vals = ops.values();
  Evaluator ev(ctx, ops);
  return choice(choice(seq(ev.eval(b, vals.truth(true)), c1),
                       seq(ev.eval(b, vals.truth(false)), c2)),
                seq(ev.eval(b, vals.bottom()), abort_cmd(ctx)));
}

CommandSemantics while_do(const Context &ctx, const OperatorTable &ops,
                          const Expr &b, const CommandSemantics &c) {
  const auto &vals = ops.values();
  Evaluator ev(ctx, ops);
  auto body = seq({ev.eval(b, vals.truth(true)), c,
                   pstep(ctx, Relation::identity(ctx.space())), idle(ctx)});
  auto exit = choice(ev.eval(b, vals.truth(false)),
                     seq(ev.eval(b, vals.bottom()), abort_cmd(ctx)));
  return seq(omega(body), exit);
}

CommandSemantics local_var(std::string_view var, const CommandSemantics &c) {
  auto ctx = context_of(c);
  auto idx = Relation::identity_on(ctx.space(), {std::string(var)});
  return conj(guar(ctx, idx), hide(conj(c, eguard(ctx, idx)), var));
}

CommandSemantics var_block(std::string_view var, const CommandSemantics &c) {
  auto ctx = context_of(c);
  return seq({idle(ctx), local_var(var, c), idle(ctx)});
}

} // namespace aczel

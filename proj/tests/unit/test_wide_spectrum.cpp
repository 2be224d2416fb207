#include "aczel/errors.hpp"
#include "aczel/wide_spectrum.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace aczel;
using namespace aczel::testing;

namespace {

bool refines(const CommandSemantics &spec, const CommandSemantics &impl) {
  return subset(spec, impl).holds;
}

} // namespace

TEST_CASE("preconditions and optional updates") {
  auto sp = counter_space(2);
  auto ctx = Context::create(sp, Depth(2));
  CHECK(pre(ctx, Predicate::full(sp)) == nil(ctx));
  CHECK(pre(ctx, Predicate::empty(sp)) == abort_cmd(ctx));
  auto a = Predicate::singleton(sp, StateId{0});
  auto p = pre(ctx, a);
  CHECK(p.contains(tr(0, {T()})));
  CHECK(!p.contains(tr(0, {P(0)})));
  CHECK(p.contains(tr(1, {Pbot()})));
  CHECK(p.contains(tr(1, {E(0), P(1)})));

  auto id = Relation::identity(sp);
  CHECK(opt(ctx, id) == choice(pstep(ctx, id), nil(ctx)));
  CHECK(opt(ctx, Relation::empty(sp)) == magic(ctx));
  auto ab = Relation::from(sp, [](StateId x, StateId y) {
    return x.index == 0 && y.index == 1;
  });
  CHECK(opt(ctx, ab) == pstep(ctx, ab));

  auto u0 = update(ctx, "x", "0");
  CHECK(u0.contains(tr(0, {T()})));
  CHECK(!u0.contains(tr(1, {T()})));
  CHECK(update(ctx, "x", "1") ==
        opt(ctx, Relation::from(sp, [](StateId, StateId y) {
              return y.index == 1;
            })));
  CHECK_THROWS_AS(update(ctx, "y", "0"), UnknownVariable);
}

TEST_CASE("iteration constants") {
  auto sp = counter_space(2);
  auto ctx = Context::create(sp, Depth(4));
  CHECK(refines(idle(ctx), skip(ctx)));
  CHECK(refines(skip(ctx), nil(ctx)));
  CHECK(!refines(nil(ctx), skip(ctx)));
  CHECK(chaos(ctx) == choice(term(ctx), forever(ctx)));
  CHECK(fairterm(ctx) == conj(fair(ctx), term(ctx)));
  CHECK(canonical(ctx, "idle").value() == idle(ctx));
  CHECK(!canonical(ctx, "nope"));
  for (const auto &n : canonical_names()) {
    auto c = canonical(ctx, n).value();
    CHECK(is_well_formed(c));
    CHECK(is_healthy(c));
  }
  // Repeated construction reuses the cached roots.
  CHECK(idle(ctx).roots() == idle(ctx).roots());
}

TEST_CASE("end-to-end specifications") {
  auto sp = counter_space(2);
  auto ctx = Context::create(sp, Depth(4));
  for (const auto &q : all_relations(sp)) {
    auto s = spec(ctx, q);
    CHECK(par(s, idle(ctx)) == s);
  }
  auto sid = spec(ctx, Relation::identity(sp));
  CHECK(sid.contains(tr(0, {T()})));
  CHECK(sid.contains(tr(1, {T()})));
  auto none = spec(ctx, Relation::empty(sp));
  CHECK(terminating(none).empty());
  CHECK(none == seq(term(ctx), magic(ctx)));
}

TEST_CASE("guarantees and frames") {
  auto sp = counter_space(2);
  auto ctx = Context::create(sp, Depth(4));
  auto rels = all_relations(sp);
  for (const auto &g1 : rels)
    for (const auto &g2 : rels) {
      CHECK(conj(guar(ctx, g1), guar(ctx, g2)) == guar(ctx, g1 & g2));
      CHECK(par(guar(ctx, g1), guar(ctx, g2)) == guar(ctx, g1 | g2));
    }
  CHECK(guar(ctx, Relation::universal(sp)) == chaos(ctx));

  auto xy = bits_space({"s", "t"});
  auto c2 = Context::create(xy, Depth(3));
  auto q = Relation::from(xy, [&](StateId a, StateId b) {
    return xy->value_index(b, 0) != xy->value_index(a, 0);
  });
  auto framed = frame({"s"}, spec(c2, q));
  for (const auto &t : enumerate(framed)) {
    StateId cur = t.initial;
    bool aborted = false;
    for (const auto &z : t.steps) {
      if (z.kind == StepKind::Term)
        break;
      if (z.post.is_bottom()) {
        aborted = z.kind == StepKind::Program;
        break;
      }
      if (z.kind == StepKind::Program)
        CHECK(xy->value_index(cur, 1) == xy->value_index(z.post.state(), 1));
      cur = z.post.state();
    }
    CHECK(!aborted);
  }
  auto all = spec(c2, q);
  CHECK(frame({"s", "t"}, all) == all);
  CHECK(!(framed == spec(c2, q & Relation::identity_on(xy, {"t"}))));
  CHECK_THROWS_AS(frame({"z"}, all), UnknownVariable);
}

TEST_CASE("environment guards and assumptions") {
  auto sp = counter_space(2);
  auto ctx = Context::create(sp, Depth(4));
  auto rels = all_relations(sp);
  for (const auto &r : rels)
    CHECK(conj(eguard(ctx, r), env_assumption(ctx, r)) == eguard(ctx, r));
  for (const auto &r1 : rels)
    for (const auto &r2 : rels) {
      CHECK(conj(eguard(ctx, r1), eguard(ctx, r2)) == eguard(ctx, r1 & r2));
      CHECK(conj(env_assumption(ctx, r1), env_assumption(ctx, r2)) ==
            env_assumption(ctx, r1 & r2));
      if (r1.subset_of(r2)) {
        CHECK(refines(env_assumption(ctx, r1), env_assumption(ctx, r2)));
        CHECK(refines(eguard(ctx, r2), eguard(ctx, r1)));
      }
    }
  // Relying on the universal relation assumes nothing.
  auto U = Relation::universal(sp);
  for (const auto &q : rels)
    CHECK(conj(spec(ctx, q), env_assumption(ctx, U)) == spec(ctx, q));
  auto q = Relation::identity(sp);
  CHECK(!(conj(spec(ctx, q), env_assumption(ctx, Relation::empty(sp))) ==
          spec(ctx, q)));
}

TEST_CASE("rely-guarantee quintuples") {
  auto sp = counter_space(2);
  auto ctx = Context::create(sp, Depth(4));
  auto U = Relation::universal(sp);
  for (const auto &q : all_relations(sp)) {
    RGQuintuple q5{Predicate::full(sp), U, U, q};
    CHECK(rg_spec(ctx, q5) == spec(ctx, q));
  }
  // Weakening the rely: env(r1) ⊑ env(r2) for r1 ⊆ r2, and not conversely.
  auto id = Relation::identity(sp);
  auto q = Relation::identity(sp);
  auto strong = rg_spec(ctx, {Predicate::full(sp), id, U, q});
  auto weak = rg_spec(ctx, {Predicate::full(sp), U, U, q});
  CHECK(refines(strong, weak));
  CHECK(!refines(weak, strong));
}

TEST_CASE("atomic steps") {
  auto sp = counter_space(2);
  auto ctx = Context::create(sp, Depth(4));
  auto flip = Relation::from(sp, [](StateId a, StateId b) { return a != b; });
  auto at = atomic(ctx, flip);
  for (const auto &t : terminating(at)) {
    int changes = 0;
    StateId cur = t.trace.initial;
    for (const auto &z : t.trace.steps) {
      if (z.kind == StepKind::Program && z.post.state() != cur)
        ++changes;
      cur = z.post.state();
    }
    CHECK(changes == 1);
  }
  CHECK(atomic(ctx, Relation::empty(sp)) ==
        seq({idle(ctx), magic(ctx), idle(ctx)}));
}

TEST_CASE("expression evaluation") {
  auto sp = make_space({Variable{"b1", {"true", "false"}},
                        Variable{"b2", {"true", "false"}}});
  auto ctx = Context::create(sp, Depth(4));
  auto ops = OperatorTable::builtin(*sp);
  const auto &vals = ops.values();
  auto T_ = vals.truth(true);

  auto one = Expr::literal("true");
  CHECK(eval_expr(ctx, ops, *one, T_) == idle(ctx));
  auto all = magic(ctx);
  for (ValueId k = 0; k <= vals.size(); ++k)
    all = choice(all, eval_expr(ctx, ops, *one, k));
  CHECK(all == idle(ctx));

  auto b1 = Expr::variable("b1"), b2 = Expr::variable("b2");
  auto both = Expr::binary("and", b1, b2);
  CHECK(eval_expr(ctx, ops, *both, T_) ==
        par(eval_expr(ctx, ops, *b1, T_), eval_expr(ctx, ops, *b2, T_)));
  for (ValueId k = 0; k <= vals.size(); ++k)
    CHECK(par(eval_expr(ctx, ops, *both, k), idle(ctx)) ==
          eval_expr(ctx, ops, *both, k));
  CHECK_THROWS_AS(eval_expr(ctx, ops, *Expr::variable("z"), T_),
                  UnknownVariable);
  CHECK_THROWS(eval_expr(ctx, ops, *Expr::binary("??", b1, b2), T_));
}

TEST_CASE("division by zero evaluates to undefined") {
  auto sp = counter_space(2);
  auto ctx = Context::create(sp, Depth(3));
  auto ops = OperatorTable::builtin(*sp);
  auto e = Expr::binary("/", Expr::literal("1"), Expr::literal("0"));
  auto c = eval_expr(ctx, ops, *e, ops.values().bottom());
  CHECK(!(c == magic(ctx)));
  CHECK(c == idle(ctx));
}

TEST_CASE("operator table built-ins and overrides") {
  auto sp = make_space({Variable{"x", {"0", "1", "2"}},
                        Variable{"s", {"<>", "<a>", "<b>", "<a,b>"}},
                        Variable{"v", {"a", "b"}}});
  auto ops = OperatorTable::builtin(*sp);
  const auto &V = ops.values();
  auto v = [&](const char *s) { return V.value(s); };
  CHECK(ops.binary("+", v("2"), v("1")) == v("0"));
  CHECK(ops.binary("-", v("0"), v("1")) == v("2"));
  CHECK(ops.binary("/", v("2"), v("0")) == V.bottom());
  CHECK(ops.binary("%", v("2"), v("0")) == V.bottom());
  CHECK(ops.binary("<", v("1"), v("2")) == V.truth(true));
  CHECK(ops.binary("::", v("a"), v("<b>")) == v("<a,b>"));
  CHECK(ops.binary("::", v("b"), v("<a>")) == V.bottom());
  CHECK(ops.unary("hd", v("<a,b>")) == v("a"));
  CHECK(ops.unary("tl", v("<a,b>")) == v("<b>"));
  CHECK(ops.unary("hd", v("<>")) == V.bottom());
  CHECK(ops.binary("=", V.bottom(), v("0")) == V.bottom());
  CHECK(ops.unary("not", v("true")) == v("false"));
  CHECK(ops.binary("and", v("true"), v("0")) == V.bottom());
  CHECK_THROWS_AS(V.value("zz"), UnknownValue);

  ops.load("# tweaks\n[binary +]\n2 2 = 2\nbot 0 = 0\n[unary inc]\n0 = 1\n");
  CHECK(ops.binary("+", v("2"), v("2")) == v("2"));
  CHECK(ops.binary("+", V.bottom(), v("0")) == v("0"));
  CHECK(ops.binary("+", v("1"), v("1")) == v("2"));
  CHECK(ops.unary("inc", v("0")) == v("1"));
  CHECK(ops.unary("inc", v("1")) == V.bottom());
  CHECK_THROWS_AS(ops.load("0 = 1\n"), ParseError);
  CHECK_THROWS_AS(ops.load("[unary q]\n0 1 = 1\n"), ParseError);
  CHECK_THROWS_AS(ops.load("[ternary q]\n"), ParseError);
  try {
    ops.load("[unary q]\n\n  7 = 1\n");
    CHECK(false);
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("predicates and relations from expressions") {
  auto sp = counter_space(3);
  auto ops = OperatorTable::builtin(*sp);
  auto e = Expr::binary("=", Expr::primed("x"),
                        Expr::binary("+", Expr::variable("x"), Expr::literal("1")));
  auto r = relation_of(*e, ops, sp);
  CHECK(r.count() == 3);
  CHECK(r.contains(StateId{2}, StateId{0}));
  auto p = predicate_of(*Expr::binary("<", Expr::variable("x"), Expr::literal("2")),
                        ops, sp);
  CHECK(p.count() == 2);
  CHECK_THROWS(predicate_of(*Expr::primed("x"), ops, sp));
}

TEST_CASE("assignment, conditional and loop") {
  auto sp = counter_space(3);
  auto ctx = Context::create(sp, Depth(4));
  auto ops = OperatorTable::builtin(*sp);
  CHECK(assign(ctx, ops, "x", *Expr::literal("1")) ==
        seq({idle(ctx), update(ctx, "x", "1"), idle(ctx)}));
  CHECK_THROWS_AS(assign(ctx, ops, "y", *Expr::literal("1")), UnknownVariable);

  auto c1 = pstep(ctx, Relation::universal(sp));
  auto c2 = magic(ctx);
  CHECK(if_then_else(ctx, ops, *Expr::literal("true"), c1, c2) ==
        seq(idle(ctx), c1));
  CHECK(while_do(ctx, ops, *Expr::literal("false"), c1) == idle(ctx));
  // An undefined condition aborts.
  auto undef = Expr::binary("/", Expr::literal("1"), Expr::literal("0"));
  CHECK(if_then_else(ctx, ops, *undef, c1, c1) ==
        seq(idle(ctx), abort_cmd(ctx)));
}

TEST_CASE("local variable blocks") {
  auto sp = bits_space({"x", "y"});
  auto ctx = Context::create(sp, Depth(3));
  auto idx = Relation::identity_on(sp, {"x"});
  auto body = pstep(ctx, Relation::universal(sp));
  auto vb = var_block("x", body);
  CHECK(vb == conj(guar(ctx, idx), vb));

  auto g = Relation::from(sp, [&](StateId a, StateId b) {
    return sp->value_index(b, 0) == 1 || sp->value_index(a, 1) == sp->value_index(b, 1);
  });
  auto gb = var_block("x", conj(guar(ctx, g), body));
  CHECK(gb == conj(guar(ctx, g.hide("x") & idx), gb));

  auto r = Relation::from(sp, [&](StateId a, StateId b) {
    return sp->value_index(a, 1) <= sp->value_index(b, 1);
  });
  CHECK(refines(conj(env_assumption(ctx, r), var_block("x", body)),
                var_block("x", conj(env_assumption(ctx, r.hide("x") & idx), body))));
  CHECK_THROWS_AS(local_var("z", body), UnknownVariable);
}

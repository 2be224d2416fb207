#include "aczel/errors.hpp"
#include "aczel/primitives.hpp"
#include "flat_semantics.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <random>

using namespace aczel;
using namespace aczel::testing;

TEST_CASE("mk_trace") {
  Depth d(5);
  CHECK_NOTHROW(mk_trace(StateId{0}, {E(1), P(2), T()}, d));
  CHECK_NOTHROW(mk_trace(StateId{0}, {}, d));
  CHECK_THROWS_AS(mk_trace(StateId{0}, {T(), P(1)}, d), TraceError);
  CHECK_THROWS_AS(mk_trace(StateId{0}, {Pbot(), P(1)}, d), TraceError);
  CHECK_THROWS_AS(mk_trace(StateId{0}, {Ebot(), E(1)}, d), TraceError);
  CHECK_THROWS_AS(mk_trace(StateId{0}, {P(0), P(0), P(0)}, Depth(2)),
                  TraceError);
  CHECK_THROWS(Depth(0));
}

TEST_CASE("trace ordering examples") {
  CHECK(trace_le(tr(0, {Pbot()}), tr(0, {E(1), Pbot()})));
  CHECK(trace_le(tr(0, {E(1), P(2)}), tr(0, {})));
  auto t = tr(0, {E(1), T()});
  CHECK(trace_le(t, t));
  CHECK(!trace_le(tr(0, {}), tr(0, {E(1)})));
  CHECK(!trace_le(tr(0, {}), tr(1, {})));
  // Only a program abort is refined by arbitrary continuations.
  CHECK(trace_le(tr(0, {Pbot()}), tr(0, {E(1)})));
  CHECK(!trace_le(tr(0, {Ebot()}), tr(0, {E(1)})));
}

TEST_CASE("trace ordering is a partial order on all short traces") {
  auto sp = counter_space(2);
  oracle::FlatSemantics flat(sp, 2);
  std::vector<Trace> all(flat.all().begin(), flat.all().end());
  for (const auto &a : all) {
    CHECK(trace_le(a, a));
    for (const auto &b : all) {
      if (trace_le(a, b) && trace_le(b, a))
        CHECK(a == b);
      if (!trace_le(a, b))
        continue;
      for (const auto &c : all)
        if (trace_le(b, c))
          CHECK(trace_le(a, c));
    }
  }
}

TEST_CASE("last_state") {
  CHECK(last_state(tr(0, {})) == StateId{0});
  CHECK(last_state(tr(0, {E(1), P(2)})) == StateId{2});
  CHECK_THROWS_AS(last_state(tr(0, {Pbot()})), TraceError);
  CHECK_THROWS_AS(last_state(tr(0, {T()})), TraceError);
}

TEST_CASE("close examples") {
  auto sp = counter_space(2);
  auto u = Universe::create(sp);
  auto magic = close(u, Depth(3), {});
  CHECK(enumerate(magic) == TraceList{tr(0, {}), tr(1, {})});
  CHECK(magic == magic_set(u, Depth(3)));

  auto c = close(u, Depth(3), {tr(0, {P(1), T()})});
  CHECK(enumerate(c) ==
        TraceList{tr(0, {}), tr(1, {}), tr(0, {P(1)}), tr(0, {P(1), T()})});

  auto one = counter_space(1);
  auto u1 = Universe::create(one);
  auto ab = close(u1, Depth(2), {tr(0, {Pbot()})});
  oracle::FlatSemantics flat(one, 2);
  CHECK(enumerate(ab) == flat.all());
  CHECK(ab == full_set(u1, Depth(2)));

  CHECK_THROWS_AS(close(u, Depth(3), {tr(0, {T(), P(1)})}), TraceError);
  CHECK_THROWS_AS(close(u, Depth(1), {tr(0, {P(1), T()})}), TraceError);
}

TEST_CASE("healthiness") {
  auto sp = counter_space(2);
  auto u = Universe::create(sp);
  Depth d(3);
  CHECK(is_healthy(close(u, d, {tr(0, {P(1), T()}), tr(1, {E(0), Pbot()})})));
  CHECK(!is_healthy(sp, d, {tr(0, {}), tr(1, {}), tr(0, {P(1), T()})}));
  CHECK(!is_healthy(sp, d, {tr(0, {})}));
  CHECK(is_healthy(full_set(u, d)));
  // Abort closure is required after a program abort but not after an
  // environment abort.
  CHECK(!is_healthy(sp, Depth(1), {tr(0, {}), tr(1, {}), tr(0, {Pbot()})}));
  CHECK(is_healthy(sp, Depth(1), {tr(0, {}), tr(1, {}), tr(0, {Ebot()})}));
}

TEST_CASE("supremum of incompatible traces is infeasible at the first difference") {
  auto sp = counter_space(3);
  auto ctx = Context::create(sp, Depth(5));
  auto a = close(ctx.universe, ctx.depth, {tr(0, {E(1), P(2), E(0), T()})});
  auto b = close(ctx.universe, ctx.depth, {tr(0, {E(1), P(0), T()})});
  std::vector<NodeId> roots(sp->size());
  for (std::size_t i = 0; i < roots.size(); ++i)
    roots[i] = node_intersect(ctx.store(), a.roots()[i], b.roots()[i]);
  TraceSet join(ctx.universe, 5, roots);
  CHECK(join == close(ctx.universe, ctx.depth, {tr(0, {E(1)})}));
}

namespace {

TraceList random_raw(const oracle::FlatSemantics &flat, std::mt19937 &rng,
                     std::size_t n) {
  std::vector<Trace> all(flat.all().begin(), flat.all().end());
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  TraceList raw;
  for (std::size_t i = 0; i < n; ++i)
    raw.insert(all[pick(rng)]);
  return raw;
}

} // namespace

TEST_CASE("close agrees with the flat closures and is idempotent and monotone") {
  auto sp = counter_space(2);
  auto u = Universe::create(sp);
  oracle::FlatSemantics flat(sp, 3);
  std::mt19937 rng(7);
  for (int i = 0; i < 60; ++i) {
    auto x = random_raw(flat, rng, 1 + i % 5);
    auto y = x;
    for (const auto &t : random_raw(flat, rng, 3))
      y.insert(t);
    auto cx = close(u, Depth(3), x);
    auto cy = close(u, Depth(3), y);
    auto expected = flat.abort_closure(flat.prefix_closure(x));
    CHECK(enumerate(cx) == expected);
    CHECK(is_healthy(cx));
    CHECK(is_well_formed(cx));
    CHECK(close(u, Depth(3), enumerate(cx)) == cx);
    CHECK(subset(cy, cx).holds);
  }
}

TEST_CASE("healthy sets are up-closed under the trace order") {
  auto sp = counter_space(2);
  auto u = Universe::create(sp);
  oracle::FlatSemantics flat(sp, 2);
  std::mt19937 rng(11);
  for (int i = 0; i < 40; ++i) {
    auto s = enumerate(close(u, Depth(2), random_raw(flat, rng, 3)));
    bool up_closed = true;
    for (const auto &t : s)
      for (const auto &t2 : flat.all())
        if (trace_le(t, t2) && !s.contains(t2))
          up_closed = false;
    CHECK(up_closed);
    CHECK(is_healthy(sp, Depth(2), s));
  }
}

TEST_CASE("subset decides inclusion with a shortest witness") {
  auto sp = counter_space(2);
  auto ctx = Context::create(sp, Depth(4));
  auto ab = abort_cmd(ctx), mg = magic(ctx);
  CHECK(subset(ab, mg).holds);
  CHECK(subset(ab, nil(ctx)).holds);
  CHECK(subset(nil(ctx), mg).holds);
  auto r = subset(mg, ab);
  CHECK(!r.holds);
  REQUIRE(r.witness);
  CHECK(r.witness->steps.size() == 1);
  CHECK(!mg.contains(*r.witness));
  CHECK(ab.contains(*r.witness));
}

TEST_CASE("subset witnesses are minimal") {
  auto sp = counter_space(2);
  auto u = Universe::create(sp);
  oracle::FlatSemantics flat(sp, 3);
  std::mt19937 rng(3);
  for (int i = 0; i < 80; ++i) {
    auto a = close(u, Depth(3), random_raw(flat, rng, 4));
    auto b = close(u, Depth(3), random_raw(flat, rng, 4));
    auto res = subset(a, b);
    auto ea = enumerate(a), eb = enumerate(b);
    std::optional<std::size_t> shortest;
    for (const auto &t : eb)
      if (!ea.contains(t) && (!shortest || t.steps.size() < *shortest))
        shortest = t.steps.size();
    CHECK(res.holds == !shortest.has_value());
    if (!res.holds) {
      REQUIRE(res.witness);
      CHECK(eb.contains(*res.witness));
      CHECK(!ea.contains(*res.witness));
      CHECK(res.witness->steps.size() == *shortest);
    }
  }
}

TEST_CASE("terminating") {
  auto sp = counter_space(2);
  auto ctx = Context::create(sp, Depth(2));
  auto t = terminating(close(ctx.universe, ctx.depth, {tr(0, {T()})}));
  REQUIRE(t.size() == 1);
  CHECK(t[0].trace == tr(0, {}));
  CHECK(t[0].last == StateId{0});
  CHECK(terminating(magic(ctx)).empty());
  auto p = terminating(pi(ctx));
  CHECK(p.size() == 4);
  for (const auto &x : p)
    CHECK(x.trace.steps.size() == 1);
}

TEST_CASE("trace counts and listings") {
  auto one = counter_space(1);
  auto ctx = Context::create(one, Depth(1));
  CHECK(abort_cmd(ctx).trace_count() == 6);
  CHECK(enumerate(abort_cmd(ctx)).size() == 6);
  auto listing = to_listing(nil(ctx));
  CHECK(listing == "x=0 [term]\n");
  CHECK(to_listing(abort_cmd(ctx)) == "x=0 [any]\n");

  auto sp = counter_space(2);
  auto c2 = Context::create(sp, Depth(4));
  auto ch = abort_cmd(c2);
  CHECK(ch.trace_count() == static_cast<double>(enumerate(ch).size()));
}

TEST_CASE("restrict_depth matches flat truncation") {
  auto sp = counter_space(2);
  auto u = Universe::create(sp);
  oracle::FlatSemantics f5(sp, 3), f2(sp, 2);
  std::mt19937 rng(5);
  for (int i = 0; i < 30; ++i) {
    auto c = close(u, Depth(3), random_raw(f5, rng, 4));
    auto r = restrict_depth(c, Depth(2));
    CHECK(enumerate(r) == f2.truncate(enumerate(c)));
    CHECK(r.depth() == 2);
  }
}

#include "aczel/laws.hpp"

#include "aczel/errors.hpp"
#include "aczel/temporal.hpp"
#include "aczel/wide_spectrum.hpp"

#include "json.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace aczel {

const char *to_string(LawStatus s) {
  switch (s) {
  case LawStatus::Verified:
    return "verified";
  case LawStatus::RefutedAsExpected:
    return "refuted-as-expected";
  case LawStatus::Failed:
    return "failed";
  }
  return "?";
}

namespace {

struct Cmd {
  std::string text;
  CommandSemantics sem;
};

std::string rel_text(const StateSpace &space, const Relation &r) {
  if (r == Relation::universal(r.space()))
    return "univ";
  if (r == Relation::empty(r.space()))
    return "empty";
  if (r == Relation::identity(r.space()))
    return "id";
  std::string out = "{";
  bool first = true;
  for (std::size_t a = 0; a < space.size(); ++a)
    for (std::size_t b = 0; b < space.size(); ++b)
      if (r.contains(space.state(a), space.state(b))) {
        out += first ? "" : ", ";
        out += "(" + space.format(space.state(a)) + " -> " +
               space.format(space.state(b)) + ")";
        first = false;
      }
  return out + "}";
}

std::string pred_text(const StateSpace &space, const Predicate &p) {
  if (p == Predicate::full(p.space()))
    return "all";
  if (p == Predicate::empty(p.space()))
    return "none";
  std::string out = "{";
  bool first = true;
  for (auto s : p.states()) {
    out += first ? "" : ", ";
    out += space.format(s);
    first = false;
  }
  return out + "}";
}

Relation random_relation(const SpacePtr &space, std::mt19937 &rng) {
  std::bernoulli_distribution coin(0.5);
  return Relation::from(space, [&](StateId, StateId) { return coin(rng); });
}

Predicate random_predicate(const SpacePtr &space, std::mt19937 &rng) {
  std::bernoulli_distribution coin(0.5);
  return Predicate::from(space, [&](StateId) { return coin(rng); });
}

// Operands shared by every law of one run, built from the seed.
struct Operands {
  bool exhaustive = false;
  std::vector<Relation> rels;
  std::vector<Predicate> preds;
  std::vector<std::pair<Relation, Relation>> rel_pairs;
  std::vector<std::pair<Relation, Relation>> nested_pairs; // first ⊆ second
  std::vector<Cmd> tiny, core, pool;
  // {nil, π(r), ε⊥(r), τ(p)}
  std::vector<Cmd> iteration_base;
};

Operands make_operands(const Context &ctx, std::uint32_t seed) {
  const auto &sp = ctx.space();
  const auto &space = *sp;
  Operands o;
  std::mt19937 rng(seed);
  o.exhaustive = space.size() <= 2;
  if (o.exhaustive) {
    o.rels = all_relations(sp);
    o.preds = all_predicates(sp);
    for (const auto &a : o.rels)
      for (const auto &b : o.rels) {
        o.rel_pairs.emplace_back(a, b);
        if (a.subset_of(b))
          o.nested_pairs.emplace_back(a, b);
      }
  } else {
    o.rels = {Relation::empty(sp), Relation::identity(sp), Relation::universal(sp)};
    while (o.rels.size() < 16)
      o.rels.push_back(random_relation(sp, rng));
    o.preds = {Predicate::full(sp), Predicate::empty(sp)};
    while (o.preds.size() < 8)
      o.preds.push_back(random_predicate(sp, rng));
    std::uniform_int_distribution<std::size_t> pick(0, o.rels.size() - 1);
    for (int i = 0; i < 64; ++i)
      o.rel_pairs.emplace_back(o.rels[pick(rng)], o.rels[pick(rng)]);
    for (const auto &b : o.rels)
      for (int i = 0; i < 3; ++i)
        o.nested_pairs.emplace_back(b & random_relation(sp, rng), b);
  }

  auto add = [](std::vector<Cmd> &v, std::string text, CommandSemantics c) {
    v.push_back({std::move(text), std::move(c)});
  };
  auto id = Relation::identity(sp);
  auto first = Predicate::singleton(sp, space.state(0));
  add(o.tiny, "abort", abort_cmd(ctx));
  add(o.tiny, "eabort", eabort(ctx));
  add(o.tiny, "nil", nil(ctx));
  add(o.tiny, "magic", magic(ctx));
  add(o.tiny, "skip", skip(ctx));
  add(o.tiny, "pi", pi(ctx));
  add(o.tiny, "epsbot", epsbot(ctx));
  add(o.tiny, "pi(id)", pstep(ctx, id));
  add(o.tiny, "epsbot(id)", estep_or_abort(ctx, id));
  add(o.tiny, "test(" + pred_text(space, first) + ")", test(ctx, first));
  add(o.tiny, "pi ; epsbot", seq(pi(ctx), epsbot(ctx)));

  o.core = o.tiny;
  add(o.core, "idle", idle(ctx));
  add(o.core, "chaos", chaos(ctx));
  add(o.core, "term", term(ctx));
  add(o.core, "eps", eps(ctx));
  std::vector<Relation> picked;
  {
    std::uniform_int_distribution<std::size_t> pick(0, o.rels.size() - 1);
    while (picked.size() < 3)
      picked.push_back(o.rels[pick(rng)]);
  }
  for (const auto &r : picked) {
    add(o.core, "pi(" + rel_text(space, r) + ")", pstep(ctx, r));
    add(o.core, "epsbot(" + rel_text(space, r) + ")", estep_or_abort(ctx, r));
  }
  for (const auto &p : o.preds)
    if (!(p == first))
      add(o.core, "test(" + pred_text(space, p) + ")", test(ctx, p));

  auto composite = [&](const std::vector<Cmd> &from) {
    std::uniform_int_distribution<std::size_t> pick(0, from.size() - 1);
    std::uniform_int_distribution<int> op(0, 5);
    const auto &a = from[pick(rng)];
    const auto &b = from[pick(rng)];
    switch (op(rng)) {
    case 0:
      return Cmd{"(" + a.text + " ; " + b.text + ")", seq(a.sem, b.sem)};
    case 1:
      return Cmd{"(" + a.text + " |^| " + b.text + ")", choice(a.sem, b.sem)};
    case 2:
      return Cmd{"(" + a.text + " || " + b.text + ")", par(a.sem, b.sem)};
    case 3:
      return Cmd{"(" + a.text + " /\\ " + b.text + ")", conj(a.sem, b.sem)};
    case 4:
      return Cmd{"(" + a.text + " |v| " + b.text + ")", supremum(a.sem, b.sem)};
    default:
      return Cmd{"(" + a.text + ")*", star(a.sem)};
    }
  };
  auto seeds = o.core;
  for (int i = 0; i < 6; ++i)
    o.core.push_back(composite(seeds));

  o.pool = o.core;
  for (const auto &r : o.rels) {
    auto t = rel_text(space, r);
    add(o.pool, "pi(" + t + ")", pstep(ctx, r));
    add(o.pool, "eps(" + t + ")", estep(ctx, r));
    add(o.pool, "epsbot(" + t + ")", estep_or_abort(ctx, r));
  }
  for (int i = 0; i < 16; ++i)
    o.pool.push_back(composite(o.core));

  add(o.iteration_base, "nil", nil(ctx));
  for (const auto &r : o.rels) {
    auto t = rel_text(space, r);
    add(o.iteration_base, "pi(" + t + ")", pstep(ctx, r));
    add(o.iteration_base, "epsbot(" + t + ")", estep_or_abort(ctx, r));
  }
  for (const auto &p : o.preds)
    add(o.iteration_base, "test(" + pred_text(space, p) + ")", test(ctx, p));
  return o;
}

class Run {
public:
  Run(const Context &ctx, const OperatorTable &ops, const Operands &o,
      LawResult &result)
      : ctx(ctx), ops(ops), o(o), space(*ctx.space()), result_(result) {}

  const Context &ctx;
  const OperatorTable &ops;
  const Operands &o;
  const StateSpace &space;

  std::string rel(const Relation &r) const { return rel_text(space, r); }
  std::string pred(const Predicate &p) const { return pred_text(space, p); }

  // A negative law stops at its first counterexample.
  bool done() const { return result_.negative && result_.instance_index; }

  // lhs = rhs
  void eq(const CommandSemantics &lhs, const CommandSemantics &rhs,
          const std::function<std::string()> &what) {
    auto fwd = subset(lhs, rhs);
    std::optional<std::string> w;
    if (!fwd.holds) {
      w = "on the right only: " + format_trace(space, *fwd.witness);
    } else if (auto back = subset(rhs, lhs); !back.holds) {
      w = "on the left only: " + format_trace(space, *back.witness);
    }
    outcome(!w, what, w.value_or(""));
  }

  // lhs ⊑ rhs
  void ref(const CommandSemantics &lhs, const CommandSemantics &rhs,
           const std::function<std::string()> &what) {
    auto r = subset(lhs, rhs);
    outcome(r.holds, what,
            r.holds ? "" : "on the right only: " + format_trace(space, *r.witness));
  }

  void outcome(bool holds, const std::function<std::string()> &what,
               const std::string &witness) {
    auto index = result_.instances++;
    if (holds)
      return;
    ++result_.failures;
    if (!result_.instance_index) {
      result_.instance_index = index;
      result_.instance = what();
      result_.witness = witness;
    }
  }

private:
  LawResult &result_;
};

using LawFn = std::function<void(Run &)>;

struct Law {
  LawInfo info;
  LawFn fn;
};

// ------------------------------------------------------------ catalogue

template <typename F> void each(const std::vector<Cmd> &v, Run &run, F f) {
  for (const auto &c : v) {
    if (run.done())
      return;
    f(c);
  }
}

template <typename F>
void each2(const std::vector<Cmd> &v, Run &run, F f) {
  for (const auto &a : v)
    for (const auto &b : v) {
      if (run.done())
        return;
      f(a, b);
    }
}

template <typename F>
void each3(const std::vector<Cmd> &v, Run &run, F f) {
  for (const auto &a : v)
    for (const auto &b : v)
      for (const auto &c : v) {
        if (run.done())
          return;
        f(a, b, c);
      }
}

// No trace ends in a program abort step.
bool abort_free(const CommandSemantics &c) {
  auto &st = c.store();
  std::vector<NodeId> todo(c.roots().begin(), c.roots().end());
  std::set<NodeId> seen;
  while (!todo.empty()) {
    auto n = todo.back();
    todo.pop_back();
    if (!seen.insert(n).second)
      continue;
    if (st.has_pabort(n))
      return false;
    for (const auto &e : st.edges(n))
      todo.push_back(e.child);
  }
  return true;
}

std::vector<Cmd> abort_free_only(const std::vector<Cmd> &v) {
  std::vector<Cmd> out;
  for (const auto &c : v)
    if (abort_free(c.sem))
      out.push_back(c);
  return out;
}

std::string join(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto &p : parts)
    out += (out.empty() ? "" : ", ") + p;
  return out;
}

std::vector<Law> build_catalogue() {
  std::vector<Law> laws;
  auto law = [&](std::string name, std::string category, std::string statement,
                 LawFn fn, bool negative = false) {
    laws.push_back({{std::move(name), std::move(category), std::move(statement),
                     negative},
                    std::move(fn)});
  };
  auto neg = [&](std::string name, std::string category, std::string statement,
                 LawFn fn) {
    law(std::move(name), std::move(category), std::move(statement), std::move(fn),
        true);
  };

  // ------------------------------------------------------------- lattice
  law("choice-associative", "lattice", "(c |^| d) |^| e = c |^| (d |^| e)",
      [](Run &r) {
        each3(r.o.tiny, r, [&](const Cmd &c, const Cmd &d, const Cmd &e) {
          r.eq(choice(choice(c.sem, d.sem), e.sem), choice(c.sem, choice(d.sem, e.sem)),
               [&] { return join({"c = " + c.text, "d = " + d.text, "e = " + e.text}); });
        });
      });
  law("choice-commutative", "lattice", "c |^| d = d |^| c", [](Run &r) {
    each2(r.o.core, r, [&](const Cmd &c, const Cmd &d) {
      r.eq(choice(c.sem, d.sem), choice(d.sem, c.sem),
           [&] { return join({"c = " + c.text, "d = " + d.text}); });
    });
  });
  law("choice-idempotent", "lattice", "c |^| c = c", [](Run &r) {
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(choice(c.sem, c.sem), c.sem, [&] { return "c = " + c.text; });
    });
  });
  law("choice-identity-magic", "lattice", "c |^| magic = c", [](Run &r) {
    auto m = magic(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(choice(c.sem, m), c.sem, [&] { return "c = " + c.text; });
    });
  });
  law("choice-annihilator-abort", "lattice", "c |^| abort = abort", [](Run &r) {
    auto a = abort_cmd(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(choice(c.sem, a), a, [&] { return "c = " + c.text; });
    });
  });
  law("sup-associative", "lattice", "(c |v| d) |v| e = c |v| (d |v| e)",
      [](Run &r) {
        each3(r.o.tiny, r, [&](const Cmd &c, const Cmd &d, const Cmd &e) {
          r.eq(supremum(supremum(c.sem, d.sem), e.sem),
               supremum(c.sem, supremum(d.sem, e.sem)),
               [&] { return join({"c = " + c.text, "d = " + d.text, "e = " + e.text}); });
        });
      });
  law("sup-commutative", "lattice", "c |v| d = d |v| c", [](Run &r) {
    each2(r.o.core, r, [&](const Cmd &c, const Cmd &d) {
      r.eq(supremum(c.sem, d.sem), supremum(d.sem, c.sem),
           [&] { return join({"c = " + c.text, "d = " + d.text}); });
    });
  });
  law("sup-idempotent", "lattice", "c |v| c = c", [](Run &r) {
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(supremum(c.sem, c.sem), c.sem, [&] { return "c = " + c.text; });
    });
  });
  law("sup-identity-abort", "lattice", "c |v| abort = c", [](Run &r) {
    auto a = abort_cmd(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(supremum(c.sem, a), c.sem, [&] { return "c = " + c.text; });
    });
  });
  law("sup-annihilator-magic", "lattice", "c |v| magic = magic", [](Run &r) {
    auto m = magic(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(supremum(c.sem, m), m, [&] { return "c = " + c.text; });
    });
  });
  law("abort-bottom-magic-top", "lattice", "abort <= c <= magic", [](Run &r) {
    auto a = abort_cmd(r.ctx);
    auto m = magic(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.ref(a, c.sem, [&] { return "abort <= " + c.text; });
      r.ref(c.sem, m, [&] { return c.text + " <= magic"; });
    });
  });
  law("choice-lower-bound", "lattice", "c |^| d <= c", [](Run &r) {
    each2(r.o.core, r, [&](const Cmd &c, const Cmd &d) {
      r.ref(choice(c.sem, d.sem), c.sem,
            [&] { return join({"c = " + c.text, "d = " + d.text}); });
    });
  });
  law("sup-upper-bound", "lattice", "c <= c |v| d", [](Run &r) {
    each2(r.o.core, r, [&](const Cmd &c, const Cmd &d) {
      r.ref(c.sem, supremum(c.sem, d.sem),
            [&] { return join({"c = " + c.text, "d = " + d.text}); });
    });
  });

  // ---------------------------------------------------------- primitives
  law("test-choice", "primitives", "test(p1) |^| test(p2) = test(p1 | p2)",
      [](Run &r) {
        for (const auto &p1 : r.o.preds)
          for (const auto &p2 : r.o.preds)
            r.eq(choice(test(r.ctx, p1), test(r.ctx, p2)), test(r.ctx, p1 | p2),
                 [&] { return join({"p1 = " + r.pred(p1), "p2 = " + r.pred(p2)}); });
      });
  law("test-sup", "primitives", "test(p1) |v| test(p2) = test(p1 & p2)",
      [](Run &r) {
        for (const auto &p1 : r.o.preds)
          for (const auto &p2 : r.o.preds)
            r.eq(supremum(test(r.ctx, p1), test(r.ctx, p2)), test(r.ctx, p1 & p2),
                 [&] { return join({"p1 = " + r.pred(p1), "p2 = " + r.pred(p2)}); });
      });
  auto fusion = [&](std::string name, std::string statement, bool is_choice,
                    std::function<CommandSemantics(const Context &, const Relation &)> prim) {
    law(std::move(name), "primitives", std::move(statement), [=](Run &r) {
      for (const auto &[r1, r2] : r.o.rel_pairs) {
        auto lhs = is_choice ? choice(prim(r.ctx, r1), prim(r.ctx, r2))
                             : supremum(prim(r.ctx, r1), prim(r.ctx, r2));
        auto rhs = prim(r.ctx, is_choice ? (r1 | r2) : (r1 & r2));
        r.eq(lhs, rhs, [&] { return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2)}); });
      }
    });
  };
  fusion("pstep-choice", "pi(r1) |^| pi(r2) = pi(r1 | r2)", true, pstep);
  fusion("pstep-sup", "pi(r1) |v| pi(r2) = pi(r1 & r2)", false, pstep);
  fusion("estep-choice", "eps(r1) |^| eps(r2) = eps(r1 | r2)", true, estep);
  fusion("estep-sup", "eps(r1) |v| eps(r2) = eps(r1 & r2)", false, estep);
  fusion("epsbot-choice", "epsbot(r1) |^| epsbot(r2) = epsbot(r1 | r2)", true,
         estep_or_abort);
  fusion("epsbot-sup", "epsbot(r1) |v| epsbot(r2) = epsbot(r1 & r2)", false,
         estep_or_abort);
  law("step-empty-is-magic", "primitives", "pi(empty) = magic = eps(empty)",
      [](Run &r) {
        auto e = Relation::empty(r.ctx.space());
        r.eq(pstep(r.ctx, e), magic(r.ctx), [] { return std::string("pi(empty)"); });
        r.eq(estep(r.ctx, e), magic(r.ctx), [] { return std::string("eps(empty)"); });
      });
  law("epsbot-empty-is-eabort", "primitives", "epsbot(empty) = eabort", [](Run &r) {
    r.eq(estep_or_abort(r.ctx, Relation::empty(r.ctx.space())), eabort(r.ctx),
         [] { return std::string("epsbot(empty)"); });
  });
  law("step-antitone", "primitives",
      "r1 <= r2 implies pi(r2) <= pi(r1), eps(r2) <= eps(r1), epsbot(r2) <= epsbot(r1)",
      [](Run &r) {
        for (const auto &[r1, r2] : r.o.nested_pairs) {
          auto what = [&] { return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2)}); };
          r.ref(pstep(r.ctx, r2), pstep(r.ctx, r1), what);
          r.ref(estep(r.ctx, r2), estep(r.ctx, r1), what);
          r.ref(estep_or_abort(r.ctx, r2), estep_or_abort(r.ctx, r1), what);
        }
      });

  // ---------------------------------------------------------- sequential
  law("seq-associative", "sequential", "(c ; d) ; e = c ; (d ; e)", [](Run &r) {
    each3(r.o.tiny, r, [&](const Cmd &c, const Cmd &d, const Cmd &e) {
      r.eq(seq(seq(c.sem, d.sem), e.sem), seq(c.sem, seq(d.sem, e.sem)),
           [&] { return join({"c = " + c.text, "d = " + d.text, "e = " + e.text}); });
    });
  });
  law("seq-identity-nil", "sequential", "nil ; c = c = c ; nil", [](Run &r) {
    auto n = nil(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(seq(n, c.sem), c.sem, [&] { return "nil ; " + c.text; });
      r.eq(seq(c.sem, n), c.sem, [&] { return c.text + " ; nil"; });
    });
  });
  law("seq-left-magic", "sequential", "magic ; c = magic", [](Run &r) {
    auto m = magic(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(seq(m, c.sem), m, [&] { return "c = " + c.text; });
    });
  });
  law("seq-left-abort", "sequential", "abort ; c = abort", [](Run &r) {
    auto a = abort_cmd(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(seq(a, c.sem), a, [&] { return "c = " + c.text; });
    });
  });
  law("seq-right-distributes-choice", "sequential",
      "(c |^| d) ; e = (c ; e) |^| (d ; e)", [](Run &r) {
        each3(r.o.tiny, r, [&](const Cmd &c, const Cmd &d, const Cmd &e) {
          r.eq(seq(choice(c.sem, d.sem), e.sem),
               choice(seq(c.sem, e.sem), seq(d.sem, e.sem)),
               [&] { return join({"c = " + c.text, "d = " + d.text, "e = " + e.text}); });
        });
      });
  law("seq-left-distributes-choice", "sequential",
      "c ; (d |^| e) = (c ; d) |^| (c ; e)", [](Run &r) {
        each3(r.o.tiny, r, [&](const Cmd &c, const Cmd &d, const Cmd &e) {
          r.eq(seq(c.sem, choice(d.sem, e.sem)),
               choice(seq(c.sem, d.sem), seq(c.sem, e.sem)),
               [&] { return join({"c = " + c.text, "d = " + d.text, "e = " + e.text}); });
        });
      });
  law("seq-test-test", "sequential", "test(p1) ; test(p2) = test(p1 & p2)",
      [](Run &r) {
        for (const auto &p1 : r.o.preds)
          for (const auto &p2 : r.o.preds)
            r.eq(seq(test(r.ctx, p1), test(r.ctx, p2)), test(r.ctx, p1 & p2),
                 [&] { return join({"p1 = " + r.pred(p1), "p2 = " + r.pred(p2)}); });
      });
  law("seq-test-pstep", "sequential", "test(p) ; pi(r) = pi(p <| r)", [](Run &r) {
    for (const auto &p : r.o.preds)
      for (const auto &q : r.o.rels)
        r.eq(seq(test(r.ctx, p), pstep(r.ctx, q)), pstep(r.ctx, q.restrict_domain(p)),
             [&] { return join({"p = " + r.pred(p), "r = " + r.rel(q)}); });
  });
  law("seq-test-epsbot", "sequential",
      "test(p) ; epsbot(r) = epsbot(p <| r) |v| test(p) ; epsbot", [](Run &r) {
        for (const auto &p : r.o.preds)
          for (const auto &q : r.o.rels)
            r.eq(seq(test(r.ctx, p), estep_or_abort(r.ctx, q)),
                 supremum(estep_or_abort(r.ctx, q.restrict_domain(p)),
                          seq(test(r.ctx, p), epsbot(r.ctx))),
                 [&] { return join({"p = " + r.pred(p), "r = " + r.rel(q)}); });
      });
  law("seq-test-epsbot-refines", "sequential", "epsbot(p <| r) <= test(p) ; epsbot(r)",
      [](Run &r) {
        for (const auto &p : r.o.preds)
          for (const auto &q : r.o.rels)
            r.ref(estep_or_abort(r.ctx, q.restrict_domain(p)),
                  seq(test(r.ctx, p), estep_or_abort(r.ctx, q)),
                  [&] { return join({"p = " + r.pred(p), "r = " + r.rel(q)}); });
      });
  law("seq-monotone", "sequential",
      "c1 <= c2 implies c1 ; d <= c2 ; d and d ; c1 <= d ; c2", [](Run &r) {
        each3(r.o.tiny, r, [&](const Cmd &c1, const Cmd &c2, const Cmd &d) {
          if (!subset(c1.sem, c2.sem).holds)
            return;
          auto what = [&] {
            return join({"c1 = " + c1.text, "c2 = " + c2.text, "d = " + d.text});
          };
          r.ref(seq(c1.sem, d.sem), seq(c2.sem, d.sem), what);
          r.ref(seq(d.sem, c1.sem), seq(d.sem, c2.sem), what);
        });
      });
  law("pre-extremes", "sequential", "pre(all) = nil and pre(none) = abort",
      [](Run &r) {
        const auto &sp = r.ctx.space();
        r.eq(pre(r.ctx, Predicate::full(sp)), nil(r.ctx), [] { return std::string("pre(all)"); });
        r.eq(pre(r.ctx, Predicate::empty(sp)), abort_cmd(r.ctx),
             [] { return std::string("pre(none)"); });
      });

  // ----------------------------------------------------------- iteration
  law("star-unfold", "iteration", "c* = nil |^| c ; c*", [](Run &r) {
    auto n = nil(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      auto s = star(c.sem);
      r.eq(s, choice(n, seq(c.sem, s)), [&] { return "c = " + c.text; });
    });
  });
  law("omega-unfold", "iteration", "c^w = nil |^| c ; c^w", [](Run &r) {
    auto n = nil(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      auto w = omega(c.sem);
      r.eq(w, choice(n, seq(c.sem, w)), [&] { return "c = " + c.text; });
    });
  });
  law("omega-decomposition", "iteration", "c^w = c* |^| c^inf", [](Run &r) {
    each(r.o.iteration_base, r, [&](const Cmd &c) {
      r.eq(omega(c.sem), choice(star(c.sem), infiter(c.sem)),
           [&] { return "c = " + c.text; });
    });
  });
  law("omega-interchange", "iteration", "(c |^| d)^w = (d^w ; c)^w ; d^w",
      [](Run &r) {
        each2(r.o.iteration_base, r, [&](const Cmd &c, const Cmd &d) {
          auto dw = omega(d.sem);
          r.eq(omega(choice(c.sem, d.sem)), seq(omega(seq(dw, c.sem)), dw),
               [&] { return join({"c = " + c.text, "d = " + d.text}); });
        });
      });
  law("star-refines-omega", "iteration", "c^w <= c*", [](Run &r) {
    each(r.o.pool, r, [&](const Cmd &c) {
      r.ref(omega(c.sem), star(c.sem), [&] { return "c = " + c.text; });
    });
  });
  law("idle-skip-nil", "iteration", "idle <= skip <= nil", [](Run &r) {
    r.ref(idle(r.ctx), skip(r.ctx), [] { return std::string("idle <= skip"); });
    r.ref(skip(r.ctx), nil(r.ctx), [] { return std::string("skip <= nil"); });
  });
  law("chaos-term-forever", "iteration", "chaos = term |^| forever", [](Run &r) {
    r.eq(chaos(r.ctx), choice(term(r.ctx), forever(r.ctx)),
         [] { return std::string("chaos"); });
  });
  law("term-preempted", "iteration", "term <= preempted", [](Run &r) {
    r.ref(term(r.ctx), preempted(r.ctx), [] { return std::string("term <= preempted"); });
  });
  law("fairterm-fair-term", "iteration", "fairterm = fair /\\ term", [](Run &r) {
    r.eq(fairterm(r.ctx), conj(fair(r.ctx), term(r.ctx)),
         [] { return std::string("fairterm"); });
  });
  law("chaos-bounds", "iteration", "chaos <= c for c in term, fair, idle, skip",
      [](Run &r) {
        auto ch = chaos(r.ctx);
        for (auto name : {"term", "fair", "fairterm", "idle", "skip", "preempted", "forever"})
          r.ref(ch, *canonical(r.ctx, name), [&] { return std::string("chaos <= ") + name; });
      });

  // ------------------------------------------------------------ parallel
  law("par-associative", "parallel",
      "(c || d) || e = c || (d || e) for abort-free c, d, e", [](Run &r) {
    each3(abort_free_only(r.o.core), r, [&](const Cmd &c, const Cmd &d, const Cmd &e) {
      r.eq(par(par(c.sem, d.sem), e.sem), par(c.sem, par(d.sem, e.sem)),
           [&] { return join({"c = " + c.text, "d = " + d.text, "e = " + e.text}); });
    });
  });
  law("par-commutative", "parallel", "c || d = d || c", [](Run &r) {
    each2(r.o.core, r, [&](const Cmd &c, const Cmd &d) {
      r.eq(par(c.sem, d.sem), par(d.sem, c.sem),
           [&] { return join({"c = " + c.text, "d = " + d.text}); });
    });
  });
  law("par-identity-skip", "parallel", "c || skip = c", [](Run &r) {
    auto s = skip(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(par(c.sem, s), c.sem, [&] { return "c = " + c.text; });
    });
  });
  law("par-magic-abort", "parallel", "magic || abort = magic", [](Run &r) {
    r.eq(par(magic(r.ctx), abort_cmd(r.ctx)), magic(r.ctx),
         [] { return std::string("magic || abort"); });
  });
  law("par-distributes-choice", "parallel", "(c |^| d) || e = (c || e) |^| (d || e)",
      [](Run &r) {
        each3(r.o.tiny, r, [&](const Cmd &c, const Cmd &d, const Cmd &e) {
          r.eq(par(choice(c.sem, d.sem), e.sem),
               choice(par(c.sem, e.sem), par(d.sem, e.sem)),
               [&] { return join({"c = " + c.text, "d = " + d.text, "e = " + e.text}); });
        });
      });
  law("par-test-test", "parallel",
      "(test(p1) ; c1) || (test(p2) ; c2) = test(p1 & p2) ; (c1 || c2)", [](Run &r) {
        for (const auto &p1 : r.o.preds)
          for (const auto &p2 : r.o.preds)
            each2(r.o.tiny, r, [&](const Cmd &c1, const Cmd &c2) {
              r.eq(par(seq(test(r.ctx, p1), c1.sem), seq(test(r.ctx, p2), c2.sem)),
                   seq(test(r.ctx, p1 & p2), par(c1.sem, c2.sem)), [&] {
                     return join({"p1 = " + r.pred(p1), "p2 = " + r.pred(p2),
                                  "c1 = " + c1.text, "c2 = " + c2.text});
                   });
            });
      });
  law("par-pstep-epsbot", "parallel",
      "(pi(r1) ; c1) || (epsbot(r2) ; c2) = pi(r1 & r2) ; (c1 || c2)", [](Run &r) {
        for (const auto &[r1, r2] : r.o.rel_pairs)
          each2(r.o.tiny, r, [&](const Cmd &c1, const Cmd &c2) {
            r.eq(par(seq(pstep(r.ctx, r1), c1.sem), seq(estep_or_abort(r.ctx, r2), c2.sem)),
                 seq(pstep(r.ctx, r1 & r2), par(c1.sem, c2.sem)), [&] {
                   return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2),
                                "c1 = " + c1.text, "c2 = " + c2.text});
                 });
          });
      });
  law("par-epsbot-epsbot", "parallel",
      "(epsbot(r1) ; c1) || (epsbot(r2) ; c2) = epsbot(r1 & r2) ; (c1 || c2)",
      [](Run &r) {
        for (const auto &[r1, r2] : r.o.rel_pairs)
          each2(r.o.tiny, r, [&](const Cmd &c1, const Cmd &c2) {
            r.eq(par(seq(estep_or_abort(r.ctx, r1), c1.sem),
                     seq(estep_or_abort(r.ctx, r2), c2.sem)),
                 seq(estep_or_abort(r.ctx, r1 & r2), par(c1.sem, c2.sem)), [&] {
                   return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2),
                                "c1 = " + c1.text, "c2 = " + c2.text});
                 });
          });
      });

  // --------------------------------------------------------- conjunction
  law("conj-associative", "conjunction", "(c /\\ d) /\\ e = c /\\ (d /\\ e)",
      [](Run &r) {
        each3(r.o.tiny, r, [&](const Cmd &c, const Cmd &d, const Cmd &e) {
          r.eq(conj(conj(c.sem, d.sem), e.sem), conj(c.sem, conj(d.sem, e.sem)),
               [&] { return join({"c = " + c.text, "d = " + d.text, "e = " + e.text}); });
        });
      });
  law("conj-commutative", "conjunction", "c /\\ d = d /\\ c", [](Run &r) {
    each2(r.o.core, r, [&](const Cmd &c, const Cmd &d) {
      r.eq(conj(c.sem, d.sem), conj(d.sem, c.sem),
           [&] { return join({"c = " + c.text, "d = " + d.text}); });
    });
  });
  law("conj-idempotent", "conjunction", "c /\\ c = c", [](Run &r) {
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(conj(c.sem, c.sem), c.sem, [&] { return "c = " + c.text; });
    });
  });
  law("conj-identity-chaos", "conjunction", "c /\\ chaos = c", [](Run &r) {
    auto ch = chaos(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(conj(c.sem, ch), c.sem, [&] { return "c = " + c.text; });
    });
  });
  law("conj-annihilator-abort", "conjunction", "c /\\ abort = abort", [](Run &r) {
    auto a = abort_cmd(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(conj(c.sem, a), a, [&] { return "c = " + c.text; });
    });
  });
  law("conj-test-test", "conjunction",
      "(test(p1) ; c1) /\\ (test(p2) ; c2) = test(p1 & p2) ; (c1 /\\ c2) "
      "|^| test(p1 & !p2) ; (c1 /\\ magic) |^| test(!p1 & p2) ; (magic /\\ c2)",
      [](Run &r) {
        auto m = magic(r.ctx);
        for (const auto &p1 : r.o.preds)
          for (const auto &p2 : r.o.preds)
            each2(r.o.tiny, r, [&](const Cmd &c1, const Cmd &c2) {
              r.eq(conj(seq(test(r.ctx, p1), c1.sem), seq(test(r.ctx, p2), c2.sem)),
                   choice(choice(seq(test(r.ctx, p1 & p2), conj(c1.sem, c2.sem)),
                                 seq(test(r.ctx, p1 & p2.complement()), conj(c1.sem, m))),
                          seq(test(r.ctx, p1.complement() & p2), conj(m, c2.sem))),
                   [&] {
                     return join({"p1 = " + r.pred(p1), "p2 = " + r.pred(p2),
                                  "c1 = " + c1.text, "c2 = " + c2.text});
                   });
            });
      });
  law("conj-pstep-pstep", "conjunction",
      "(pi(r1) ; c1) /\\ (pi(r2) ; c2) = pi(r1 & r2) ; (c1 /\\ c2)", [](Run &r) {
        for (const auto &[r1, r2] : r.o.rel_pairs)
          each2(r.o.tiny, r, [&](const Cmd &c1, const Cmd &c2) {
            r.eq(conj(seq(pstep(r.ctx, r1), c1.sem), seq(pstep(r.ctx, r2), c2.sem)),
                 seq(pstep(r.ctx, r1 & r2), conj(c1.sem, c2.sem)), [&] {
                   return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2),
                                "c1 = " + c1.text, "c2 = " + c2.text});
                 });
          });
      });
  law("conj-epsbot-epsbot", "conjunction",
      "(epsbot(r1) ; c1) /\\ (epsbot(r2) ; c2) = epsbot(r1 & r2) ; (c1 /\\ c2)",
      [](Run &r) {
        for (const auto &[r1, r2] : r.o.rel_pairs)
          each2(r.o.tiny, r, [&](const Cmd &c1, const Cmd &c2) {
            r.eq(conj(seq(estep_or_abort(r.ctx, r1), c1.sem),
                      seq(estep_or_abort(r.ctx, r2), c2.sem)),
                 seq(estep_or_abort(r.ctx, r1 & r2), conj(c1.sem, c2.sem)), [&] {
                   return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2),
                                "c1 = " + c1.text, "c2 = " + c2.text});
                 });
          });
      });
  law("conj-pstep-epsbot", "conjunction", "(pi(r) ; c1) /\\ (epsbot ; c2) = magic",
      [](Run &r) {
        auto eb = epsbot(r.ctx);
        auto m = magic(r.ctx);
        for (const auto &q : r.o.rels)
          each2(r.o.tiny, r, [&](const Cmd &c1, const Cmd &c2) {
            r.eq(conj(seq(pstep(r.ctx, q), c1.sem), seq(eb, c2.sem)), m, [&] {
              return join({"r = " + r.rel(q), "c1 = " + c1.text, "c2 = " + c2.text});
            });
          });
      });

  // -------------------------------------------------------------- hiding
  law("hide-step", "hiding",
      "hide x in pi(r) = pi(r \\ x) and hide x in epsbot(r) = epsbot(r \\ x)",
      [](Run &r) {
        for (const auto &v : r.space.variables())
          for (const auto &q : r.o.rels) {
            auto what = [&] { return join({"x = " + v.name, "r = " + r.rel(q)}); };
            r.eq(hide(pstep(r.ctx, q), v.name), pstep(r.ctx, q.hide(v.name)), what);
            r.eq(hide(estep_or_abort(r.ctx, q), v.name),
                 estep_or_abort(r.ctx, q.hide(v.name)), what);
          }
      });
  law("hide-idempotent", "hiding", "hide x in hide x in c = hide x in c",
      [](Run &r) {
        for (const auto &v : r.space.variables())
          each(r.o.pool, r, [&](const Cmd &c) {
            auto h = hide(c.sem, v.name);
            r.eq(hide(h, v.name), h, [&] { return join({"x = " + v.name, "c = " + c.text}); });
          });
      });
  law("hide-weakens", "hiding", "hide x in c <= c", [](Run &r) {
    for (const auto &v : r.space.variables())
      each(r.o.pool, r, [&](const Cmd &c) {
        r.ref(hide(c.sem, v.name), c.sem,
              [&] { return join({"x = " + v.name, "c = " + c.text}); });
      });
  });
  law("hide-distributes-choice", "hiding",
      "hide x in (c |^| d) = (hide x in c) |^| (hide x in d)", [](Run &r) {
        const auto &x = r.space.variable(0).name;
        each2(r.o.core, r, [&](const Cmd &c, const Cmd &d) {
          r.eq(hide(choice(c.sem, d.sem), x), choice(hide(c.sem, x), hide(d.sem, x)),
               [&] { return join({"x = " + x, "c = " + c.text, "d = " + d.text}); });
        });
      });

  // ------------------------------------------------------ wide spectrum
  law("spec-stutter-closed", "wide-spectrum", "[q] || idle = [q]", [](Run &r) {
    auto i = idle(r.ctx);
    for (const auto &q : r.o.rels)
      r.eq(par(spec(r.ctx, q), i), spec(r.ctx, q), [&] { return "q = " + r.rel(q); });
  });
  law("spec-empty", "wide-spectrum", "[empty] = term ; magic", [](Run &r) {
    r.eq(spec(r.ctx, Relation::empty(r.ctx.space())), seq(term(r.ctx), magic(r.ctx)),
         [] { return std::string("[empty]"); });
  });
  law("spec-univ", "wide-spectrum", "[univ] = term", [](Run &r) {
    r.eq(spec(r.ctx, Relation::universal(r.ctx.space())), term(r.ctx),
         [] { return std::string("[univ]"); });
  });
  law("spec-antitone", "wide-spectrum", "q1 <= q2 implies [q2] <= [q1]", [](Run &r) {
    for (const auto &[q1, q2] : r.o.nested_pairs)
      r.ref(spec(r.ctx, q2), spec(r.ctx, q1),
            [&] { return join({"q1 = " + r.rel(q1), "q2 = " + r.rel(q2)}); });
  });
  law("opt-definition", "wide-spectrum", "opt(r) = pi(r) |^| test({s | (s,s) in r})",
      [](Run &r) {
        for (const auto &q : r.o.rels)
          r.eq(opt(r.ctx, q), choice(pstep(r.ctx, q), test(r.ctx, q.reflexive_states())),
               [&] { return "r = " + r.rel(q); });
      });
  law("atomic-definition", "wide-spectrum", "atomic(q) = idle ; pi(q) ; idle",
      [](Run &r) {
        auto i = idle(r.ctx);
        for (const auto &q : r.o.rels)
          r.eq(atomic(r.ctx, q), seq({i, pstep(r.ctx, q), i}),
               [&] { return "q = " + r.rel(q); });
      });
  law("eval-literal-choice", "wide-spectrum", "|^| over k of eval(v, k) = idle",
      [](Run &r) {
        const auto &vals = r.ops.values();
        auto i = idle(r.ctx);
        std::vector<ExprPtr> es;
        for (ValueId v = 0; v < vals.size(); ++v)
          es.push_back(Expr::literal(vals.name(v)));
        for (const auto &x : r.space.variables())
          es.push_back(Expr::variable(x.name));
        for (const auto &e : es) {
          std::vector<CommandSemantics> cs;
          for (ValueId k = 0; k < vals.size(); ++k)
            cs.push_back(eval_expr(r.ctx, r.ops, *e, k));
          r.eq(choice(r.ctx, cs), i, [&] { return "e = " + to_string(*e); });
        }
      });
  law("eval-stutter-closed", "wide-spectrum", "eval(e, k) || idle = eval(e, k)",
      [](Run &r) {
        const auto &vals = r.ops.values();
        auto i = idle(r.ctx);
        const auto &x = r.space.variable(0).name;
        std::vector<ExprPtr> es{Expr::variable(x),
                                Expr::binary("=", Expr::variable(x), Expr::variable(x)),
                                Expr::unary("not", Expr::binary("=", Expr::variable(x),
                                                                Expr::literal(r.space.variable(0).domain[0])))};
        for (const auto &e : es)
          for (ValueId k = 0; k <= vals.size(); ++k) {
            auto c = eval_expr(r.ctx, r.ops, *e, k);
            r.eq(par(c, i), c, [&] {
              return join({"e = " + to_string(*e), "k = " + vals.name(k)});
            });
          }
      });
  law("assign-literal", "wide-spectrum", "x := k = idle ; update(x, k) ; idle",
      [](Run &r) {
        auto i = idle(r.ctx);
        for (const auto &x : r.space.variables())
          for (const auto &k : x.domain)
            r.eq(assign(r.ctx, r.ops, x.name, *Expr::literal(k)),
                 seq({i, update(r.ctx, x.name, k), i}),
                 [&] { return x.name + " := " + k; });
      });
  law("if-literal", "wide-spectrum",
      "if true then c else d = idle ; c and if false then c else d = idle ; d",
      [](Run &r) {
        auto i = idle(r.ctx);
        auto t = Expr::literal("true"), f = Expr::literal("false");
        each2(r.o.tiny, r, [&](const Cmd &c, const Cmd &d) {
          auto what = [&] { return join({"c = " + c.text, "d = " + d.text}); };
          r.eq(if_then_else(r.ctx, r.ops, *t, c.sem, d.sem), seq(i, c.sem), what);
          r.eq(if_then_else(r.ctx, r.ops, *f, c.sem, d.sem), seq(i, d.sem), what);
        });
      });
  law("while-false", "wide-spectrum", "while false do c = idle", [](Run &r) {
    auto f = Expr::literal("false");
    auto i = idle(r.ctx);
    each(r.o.tiny, r, [&](const Cmd &c) {
      r.eq(while_do(r.ctx, r.ops, *f, c.sem), i, [&] { return "c = " + c.text; });
    });
  });

  // ------------------------------------------------------ rely-guarantee
  law("guar-conj", "rely-guarantee", "guar(g1) /\\ guar(g2) = guar(g1 & g2)",
      [](Run &r) {
        for (const auto &[g1, g2] : r.o.rel_pairs)
          r.eq(conj(guar(r.ctx, g1), guar(r.ctx, g2)), guar(r.ctx, g1 & g2),
               [&] { return join({"g1 = " + r.rel(g1), "g2 = " + r.rel(g2)}); });
      });
  law("guar-par", "rely-guarantee", "guar(g1) || guar(g2) = guar(g1 | g2)",
      [](Run &r) {
        for (const auto &[g1, g2] : r.o.rel_pairs)
          r.eq(par(guar(r.ctx, g1), guar(r.ctx, g2)), guar(r.ctx, g1 | g2),
               [&] { return join({"g1 = " + r.rel(g1), "g2 = " + r.rel(g2)}); });
      });
  law("guar-univ-chaos", "rely-guarantee", "guar(univ) = chaos", [](Run &r) {
    r.eq(guar(r.ctx, Relation::universal(r.ctx.space())), chaos(r.ctx),
         [] { return std::string("guar(univ)"); });
  });
  law("eguard-conj", "rely-guarantee", "eguard(r1) /\\ eguard(r2) = eguard(r1 & r2)",
      [](Run &r) {
        for (const auto &[r1, r2] : r.o.rel_pairs)
          r.eq(conj(eguard(r.ctx, r1), eguard(r.ctx, r2)), eguard(r.ctx, r1 & r2),
               [&] { return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2)}); });
      });
  law("env-conj", "rely-guarantee", "rely(r1) /\\ rely(r2) = rely(r1 & r2)",
      [](Run &r) {
        for (const auto &[r1, r2] : r.o.rel_pairs)
          r.eq(conj(rely(r.ctx, r1), rely(r.ctx, r2)), rely(r.ctx, r1 & r2),
               [&] { return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2)}); });
      });
  law("eguard-univ-chaos", "rely-guarantee", "eguard(univ) = chaos = rely(univ)",
      [](Run &r) {
        auto u = Relation::universal(r.ctx.space());
        r.eq(eguard(r.ctx, u), chaos(r.ctx), [] { return std::string("eguard(univ)"); });
        r.eq(rely(r.ctx, u), chaos(r.ctx), [] { return std::string("rely(univ)"); });
      });
  law("eguard-env", "rely-guarantee", "eguard(r) /\\ rely(r) = eguard(r)", [](Run &r) {
    for (const auto &q : r.o.rels)
      r.eq(conj(eguard(r.ctx, q), rely(r.ctx, q)), eguard(r.ctx, q),
           [&] { return "r = " + r.rel(q); });
  });
  law("eguard-refsto", "rely-guarantee",
      "eguard(r) /\\ c <= eguard(r) /\\ d iff c <= eguard(r) /\\ d", [](Run &r) {
        for (const auto &q : r.o.rels) {
          auto eg = eguard(r.ctx, q);
          each2(r.o.core, r, [&](const Cmd &c, const Cmd &d) {
            auto egd = conj(eg, d.sem);
            auto left = subset(conj(eg, c.sem), egd);
            auto right = subset(c.sem, egd);
            std::string w;
            if (left.holds != right.holds)
              w = left.holds ? "right side fails: " + format_trace(r.space, *right.witness)
                             : "left side fails: " + format_trace(r.space, *left.witness);
            r.outcome(left.holds == right.holds,
                      [&] { return join({"r = " + r.rel(q), "c = " + c.text, "d = " + d.text}); },
                      w);
          });
        }
      });
  law("env-theorem", "rely-guarantee",
      "rely(r) /\\ c <= d implies c <= eguard(r) /\\ d", [](Run &r) {
        for (const auto &q : r.o.rels) {
          auto eg = eguard(r.ctx, q);
          auto en = rely(r.ctx, q);
          each(r.o.core, r, [&](const Cmd &c) {
            auto ec = conj(en, c.sem);
            std::vector<Cmd> ds{{"rely(r) /\\ c", ec}};
            for (const auto &e : r.o.tiny)
              ds.push_back({"rely(r) /\\ c /\\ " + e.text, conj(ec, e.sem)});
            for (const auto &e : r.o.tiny)
              ds.push_back(e);
            for (const auto &d : ds) {
              if (!subset(ec, d.sem).holds)
                continue;
              auto res = subset(c.sem, conj(eg, d.sem));
              r.outcome(res.holds,
                        [&] { return join({"r = " + r.rel(q), "c = " + c.text, "d = " + d.text}); },
                        res.holds ? "" : format_trace(r.space, *res.witness));
            }
          });
        }
      });
  law("env-monotone", "rely-guarantee", "r1 <= r2 implies rely(r1) <= rely(r2)",
      [](Run &r) {
        for (const auto &[r1, r2] : r.o.nested_pairs)
          r.ref(rely(r.ctx, r1), rely(r.ctx, r2),
                [&] { return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2)}); });
      });
  law("eguard-antitone", "rely-guarantee", "r1 <= r2 implies eguard(r2) <= eguard(r1)",
      [](Run &r) {
        for (const auto &[r1, r2] : r.o.nested_pairs)
          r.ref(eguard(r.ctx, r2), eguard(r.ctx, r1),
                [&] { return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2)}); });
      });
  law("guar-antitone", "rely-guarantee", "g1 <= g2 implies guar(g2) <= guar(g1)",
      [](Run &r) {
        for (const auto &[g1, g2] : r.o.nested_pairs)
          r.ref(guar(r.ctx, g2), guar(r.ctx, g1),
                [&] { return join({"g1 = " + r.rel(g1), "g2 = " + r.rel(g2)}); });
      });
  law("spec-rely-univ", "rely-guarantee", "[q] /\\ rely(univ) = [q]", [](Run &r) {
    auto en = rely(r.ctx, Relation::universal(r.ctx.space()));
    for (const auto &q : r.o.rels)
      r.eq(conj(spec(r.ctx, q), en), spec(r.ctx, q), [&] { return "q = " + r.rel(q); });
  });
  law("rg-vacuous", "rely-guarantee",
      "pre(all) ; [q] /\\ rely(univ) /\\ guar(univ) = [q]", [](Run &r) {
        const auto &sp = r.ctx.space();
        for (const auto &q : r.o.rels)
          r.eq(rg_spec(r.ctx, {Predicate::full(sp), Relation::universal(sp),
                               Relation::universal(sp), q}),
               spec(r.ctx, q), [&] { return "q = " + r.rel(q); });
      });
  law("rg-rely-monotone", "rely-guarantee",
      "r1 <= r2 implies the quintuple with rely r1 refines to the one with rely r2",
      [](Run &r) {
        const auto &sp = r.ctx.space();
        auto q = Relation::identity(sp);
        for (const auto &[r1, r2] : r.o.nested_pairs)
          r.ref(rg_spec(r.ctx, {Predicate::full(sp), r1, Relation::universal(sp), q}),
                rg_spec(r.ctx, {Predicate::full(sp), r2, Relation::universal(sp), q}),
                [&] { return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2)}); });
      });

  // ----------------------------------------------------- local variables
  law("var-guarantees-id", "local-variables", "var x . c = guar(id(x)) /\\ var x . c",
      [](Run &r) {
        for (const auto &v : r.space.variables())
          each(r.o.core, r, [&](const Cmd &c) {
            auto b = var_block(v.name, c.sem);
            r.eq(b, conj(guar(r.ctx, Relation::identity_on(r.ctx.space(), {v.name})), b),
                 [&] { return join({"x = " + v.name, "c = " + c.text}); });
          });
      });
  law("var-guarantee-export", "local-variables",
      "var x . (guar(g) /\\ c) = guar(((g \\ x) & id(x)) | id) /\\ var x . (guar(g) /\\ c)",
      [](Run &r) {
        const auto &sp = r.ctx.space();
        for (const auto &v : r.space.variables())
          for (const auto &g : r.o.rels)
            each(r.o.tiny, r, [&](const Cmd &c) {
              auto b = var_block(v.name, conj(guar(r.ctx, g), c.sem));
              auto h = (g.hide(v.name) & Relation::identity_on(sp, {v.name})) |
                       Relation::identity(sp);
              r.eq(b, conj(guar(r.ctx, h), b), [&] {
                return join({"x = " + v.name, "g = " + r.rel(g), "c = " + c.text});
              });
            });
      });
  law("var-rely-import", "local-variables",
      "rely(r) /\\ var x . c <= var x . (rely((r \\ x) & id(x)) /\\ c)", [](Run &r) {
        const auto &sp = r.ctx.space();
        for (const auto &v : r.space.variables())
          for (const auto &q : r.o.rels)
            each(r.o.tiny, r, [&](const Cmd &c) {
              auto inner = q.hide(v.name) & Relation::identity_on(sp, {v.name});
              r.ref(conj(rely(r.ctx, q), var_block(v.name, c.sem)),
                    var_block(v.name, conj(rely(r.ctx, inner), c.sem)), [&] {
                      return join({"x = " + v.name, "r = " + r.rel(q), "c = " + c.text});
                    });
            });
      });

  // ------------------------------------------------------------ temporal
  law("ltl-atoms", "temporal", "p = test(p) ; abort, P:r = pi(r) ; abort, E:r = eps(r) ; abort",
      [](Run &r) {
        auto a = abort_cmd(r.ctx);
        for (const auto &p : r.o.preds)
          r.eq(encode(r.ctx, *LtlFormula::state(p)), seq(test(r.ctx, p), a),
               [&] { return "p = " + r.pred(p); });
        for (const auto &q : r.o.rels) {
          r.eq(encode(r.ctx, *LtlFormula::prog(q)), seq(pstep(r.ctx, q), a),
               [&] { return "P:" + r.rel(q); });
          r.eq(encode(r.ctx, *LtlFormula::env(q)), seq(estep(r.ctx, q), a),
               [&] { return "E:" + r.rel(q); });
        }
      });
  auto ltl_family = [](Run &r) {
    std::vector<std::pair<std::string, LtlPtr>> fs;
    for (const auto &q : r.o.rels) {
      fs.emplace_back("P:" + r.rel(q), LtlFormula::prog(q));
      fs.emplace_back("E:" + r.rel(q), LtlFormula::env(q));
    }
    for (const auto &p : r.o.preds)
      fs.emplace_back(r.pred(p), LtlFormula::state(p));
    return fs;
  };
  law("ltl-modal-order", "temporal", "F h <= h <= G h and X h <= F h", [=](Run &r) {
    for (const auto &[text, h] : ltl_family(r)) {
      auto e = encode(r.ctx, *h);
      auto ev = encode(r.ctx, *LtlFormula::eventually(h));
      auto al = encode(r.ctx, *LtlFormula::always(h));
      auto nx = encode(r.ctx, *LtlFormula::next(h));
      r.ref(ev, e, [&] { return "F h <= h, h = " + text; });
      r.ref(e, al, [&] { return "h <= G h, h = " + text; });
      r.ref(ev, nx, [&] { return "F h <= X h, h = " + text; });
    }
  });
  law("ltl-modal-idempotent", "temporal", "F F h = F h and G G h = G h", [=](Run &r) {
    for (const auto &[text, h] : ltl_family(r)) {
      r.eq(encode(r.ctx, *LtlFormula::eventually(LtlFormula::eventually(h))),
           encode(r.ctx, *LtlFormula::eventually(h)), [&] { return "h = " + text; });
      r.eq(encode(r.ctx, *LtlFormula::always(LtlFormula::always(h))),
           encode(r.ctx, *LtlFormula::always(h)), [&] { return "h = " + text; });
    }
  });
  law("ltl-connectives", "temporal",
      "h1 & h2 = enc(h1) |v| enc(h2) and h1 | h2 = enc(h1) |^| enc(h2)", [](Run &r) {
        for (const auto &[r1, r2] : r.o.rel_pairs) {
          auto a = LtlFormula::prog(r1), b = LtlFormula::env(r2);
          auto what = [&] { return join({"P:" + r.rel(r1), "E:" + r.rel(r2)}); };
          r.eq(encode(r.ctx, *LtlFormula::both(a, b)),
               supremum(encode(r.ctx, *a), encode(r.ctx, *b)), what);
          r.eq(encode(r.ctx, *LtlFormula::either(a, b)),
               choice(encode(r.ctx, *a), encode(r.ctx, *b)), what);
        }
      });

  // ----------------------------------------------------------- progress
  law("nonblocking-order", "progress",
      "obsfree(op) <= lockfree(op, x) <= waitfree(op) for op = atomic(q)", [](Run &r) {
        const auto &x = r.space.variable(0).name;
        for (const auto &q : r.o.rels) {
          auto op = atomic(r.ctx, q);
          auto of = obstruction_free(op), lf = lock_free(op, x), wf = wait_free(op);
          r.ref(of, lf, [&] { return "obsfree <= lockfree, q = " + r.rel(q); });
          r.ref(lf, wf, [&] { return "lockfree <= waitfree, q = " + r.rel(q); });
        }
      });
  law("nonblocking-recovery", "progress",
      "op <= obsfree(op) /\\ eguard(empty) and op <= lockfree(op, x) /\\ eguard(id(x))",
      [](Run &r) {
        const auto &sp = r.ctx.space();
        const auto &x = r.space.variable(0).name;
        for (const auto &q : r.o.rels) {
          auto op = atomic(r.ctx, q);
          r.ref(op, conj(obstruction_free(op), eguard(r.ctx, Relation::empty(sp))),
                [&] { return "obsfree recovery, q = " + r.rel(q); });
          r.ref(op, conj(lock_free(op, x), eguard(r.ctx, Relation::identity_on(sp, {x}))),
                [&] { return "lockfree recovery, q = " + r.rel(q); });
        }
      });

  // ------------------------------------------------------------ negative
  neg("skip-not-seq-identity", "negative", "skip ; c = c", [](Run &r) {
    auto s = skip(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(seq(s, c.sem), c.sem, [&] { return "c = " + c.text; });
    });
  });
  neg("seq-magic-not-magic", "negative", "c ; magic = magic", [](Run &r) {
    auto m = magic(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(seq(c.sem, m), m, [&] { return "c = " + c.text; });
    });
  });
  neg("seq-abort-not-abort", "negative", "c ; abort = abort", [](Run &r) {
    auto a = abort_cmd(r.ctx);
    each(r.o.pool, r, [&](const Cmd &c) {
      r.eq(seq(c.sem, a), a, [&] { return "c = " + c.text; });
    });
  });
  neg("nil-refines-skip", "negative", "nil <= skip", [](Run &r) {
    r.ref(nil(r.ctx), skip(r.ctx), [] { return std::string("nil <= skip"); });
  });
  neg("env-theorem-converse", "negative",
      "c <= eguard(r) /\\ d implies rely(r) /\\ c <= d", [](Run &r) {
        auto ch = chaos(r.ctx);
        for (const auto &q : r.o.rels) {
          if (r.done())
            return;
          auto eg = eguard(r.ctx, q);
          // c = eguard(r), d = chaos: the premise holds, so refute the conclusion.
          if (!subset(eg, conj(eg, ch)).holds)
            continue;
          auto res = subset(conj(rely(r.ctx, q), eg), ch);
          r.outcome(res.holds, [&] { return join({"r = " + r.rel(q), "c = eguard(r)", "d = chaos"}); },
                    res.holds ? "" : "on the right only: " + format_trace(r.space, *res.witness));
        }
      });
  neg("env-antitone", "negative", "r1 <= r2 implies rely(r2) <= rely(r1)",
      [](Run &r) {
        for (const auto &[r1, r2] : r.o.nested_pairs) {
          if (r.done())
            return;
          r.ref(rely(r.ctx, r2), rely(r.ctx, r1),
                [&] { return join({"r1 = " + r.rel(r1), "r2 = " + r.rel(r2)}); });
        }
      });
  neg("spec-rely-empty", "negative", "[q] /\\ rely(empty) = [q]", [](Run &r) {
    auto en = rely(r.ctx, Relation::empty(r.ctx.space()));
    for (const auto &q : r.o.rels) {
      if (r.done())
        return;
      r.eq(conj(spec(r.ctx, q), en), spec(r.ctx, q), [&] { return "q = " + r.rel(q); });
    }
  });

  neg("par-associative-unrestricted", "negative", "(c || d) || e = c || (d || e)",
      [](Run &r) {
        each3(r.o.tiny, r, [&](const Cmd &c, const Cmd &d, const Cmd &e) {
          r.eq(par(par(c.sem, d.sem), e.sem), par(c.sem, par(d.sem, e.sem)),
               [&] { return join({"c = " + c.text, "d = " + d.text, "e = " + e.text}); });
        });
      });
  neg("seq-test-epsbot-unrestricted", "negative", "test(p) ; epsbot(r) = epsbot(p <| r)",
      [](Run &r) {
        for (const auto &p : r.o.preds)
          for (const auto &q : r.o.rels) {
            if (r.done())
              return;
            r.eq(seq(test(r.ctx, p), estep_or_abort(r.ctx, q)),
                 estep_or_abort(r.ctx, q.restrict_domain(p)),
                 [&] { return join({"p = " + r.pred(p), "r = " + r.rel(q)}); });
          }
      });
  neg("conj-test-test-unrestricted", "negative",
      "(test(p1) ; c1) /\\ (test(p2) ; c2) = test(p1 & p2) ; (c1 /\\ c2)", [](Run &r) {
        for (const auto &p1 : r.o.preds)
          for (const auto &p2 : r.o.preds)
            each2(r.o.tiny, r, [&](const Cmd &c1, const Cmd &c2) {
              r.eq(conj(seq(test(r.ctx, p1), c1.sem), seq(test(r.ctx, p2), c2.sem)),
                   seq(test(r.ctx, p1 & p2), conj(c1.sem, c2.sem)), [&] {
                     return join({"p1 = " + r.pred(p1), "p2 = " + r.pred(p2),
                                  "c1 = " + c1.text, "c2 = " + c2.text});
                   });
            });
      });
  neg("var-guarantee-export-unrestricted", "negative",
      "var x . (guar(g) /\\ c) = guar((g \\ x) & id(x)) /\\ var x . (guar(g) /\\ c)",
      [](Run &r) {
        const auto &sp = r.ctx.space();
        for (const auto &v : r.space.variables())
          for (const auto &g : r.o.rels)
            each(r.o.tiny, r, [&](const Cmd &c) {
              auto b = var_block(v.name, conj(guar(r.ctx, g), c.sem));
              auto h = g.hide(v.name) & Relation::identity_on(sp, {v.name});
              r.eq(b, conj(guar(r.ctx, h), b), [&] {
                return join({"x = " + v.name, "g = " + r.rel(g), "c = " + c.text});
              });
            });
      });

  std::sort(laws.begin(), laws.end(),
            [](const Law &a, const Law &b) { return a.info.name < b.info.name; });
  return laws;
}

const std::vector<Law> &catalogue() {
  static const std::vector<Law> laws = build_catalogue();
  return laws;
}

} // namespace

const std::vector<LawInfo> &law_catalogue() {
  static const std::vector<LawInfo> infos = [] {
    std::vector<LawInfo> v;
    for (const auto &l : catalogue())
      v.push_back(l.info);
    return v;
  }();
  return infos;
}

bool LawSuiteReport::ok() const { return count(LawStatus::Failed) == 0; }

std::size_t LawSuiteReport::count(LawStatus s) const {
  return static_cast<std::size_t>(std::count_if(
      results.begin(), results.end(), [&](const LawResult &r) { return r.status == s; }));
}

const LawResult *LawSuiteReport::find(const std::string &name) const {
  for (const auto &r : results)
    if (r.name == name)
      return &r;
  return nullptr;
}

std::string LawSuiteReport::to_text() const {
  std::ostringstream out;
  out << "law suite over " << space << ", depth " << depth << ", seed " << seed
      << (exhaustive ? ", exhaustive" : ", sampled") << "\n";
  std::size_t width = 0;
  for (const auto &r : results)
    width = std::max(width, r.name.size());
  for (const auto &r : results) {
    out << r.name << std::string(width + 2 - r.name.size(), ' ') << to_string(r.status)
        << "  [" << r.category << "]  " << r.instances << " instances\n";
    if (r.instance_index) {
      out << "    " << (r.negative ? "counterexample" : "failing instance") << " #"
          << *r.instance_index << ": " << r.instance << "\n";
      if (!r.witness.empty())
        out << "    witness: " << r.witness << "\n";
    }
  }
  out << count(LawStatus::Verified) << " verified, " << count(LawStatus::RefutedAsExpected)
      << " refuted as expected, " << count(LawStatus::Failed) << " failed\n";
  return out.str();
}

std::string LawSuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["space"] = space;
  j["depth"] = depth;
  j["seed"] = seed;
  j["mode"] = exhaustive ? "exhaustive" : "sampled";
  auto arr = nlohmann::ordered_json::array();
  for (const auto &r : results) {
    nlohmann::ordered_json e;
    e["name"] = r.name;
    e["category"] = r.category;
    e["statement"] = r.statement;
    e["negative"] = r.negative;
    e["status"] = to_string(r.status);
    e["instances"] = r.instances;
    e["failures"] = r.failures;
    if (r.instance_index) {
      e["instance_index"] = *r.instance_index;
      e["instance"] = r.instance;
      e["witness"] = r.witness;
    } else {
      e["instance_index"] = nullptr;
    }
    arr.push_back(e);
  }
  j["laws"] = arr;
  j["verified"] = count(LawStatus::Verified);
  j["refuted_as_expected"] = count(LawStatus::RefutedAsExpected);
  j["failed"] = count(LawStatus::Failed);
  return j.dump(2);
}

LawSuiteReport run_law_suite(const Context &ctx, const OperatorTable &ops,
                             const LawSuiteOptions &opts) {
  LawSuiteReport report;
  const auto &space = *ctx.space();
  std::string desc;
  for (const auto &v : space.variables()) {
    desc += desc.empty() ? "" : "; ";
    desc += v.name + " in {";
    for (std::size_t i = 0; i < v.domain.size(); ++i)
      desc += (i ? ", " : "") + v.domain[i];
    desc += "}";
  }
  report.space = desc + " (" + std::to_string(space.size()) + " states)";
  report.depth = ctx.depth.bound;
  report.seed = opts.seed;
  auto operands = make_operands(ctx, opts.seed);
  report.exhaustive = operands.exhaustive;
  auto wanted = [&](const LawInfo &info) {
    auto in = [](const std::vector<std::string> &v, const std::string &s) {
      return v.empty() || std::find(v.begin(), v.end(), s) != v.end();
    };
    return in(opts.categories, info.category) && in(opts.names, info.name);
  };
  for (const auto &law : catalogue()) {
    if (!wanted(law.info))
      continue;
    LawResult res;
    res.name = law.info.name;
    res.category = law.info.category;
    res.statement = law.info.statement;
    res.negative = law.info.negative;
    Run run(ctx, ops, operands, res);
    law.fn(run);
    if (res.negative)
      res.status = res.instance_index ? LawStatus::RefutedAsExpected : LawStatus::Failed;
    else
      res.status = res.failures ? LawStatus::Failed : LawStatus::Verified;
    if (res.instances == 0 && !res.negative)
      res.status = LawStatus::Failed;
    report.results.push_back(std::move(res));
  }
  return report;
}

} // namespace aczel

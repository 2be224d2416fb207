// Acceptance run: one PASS/FAIL line per criterion on stdout, details of
// any failure on stderr. Exit status is zero iff every criterion passes.

#include "aczel/checker.hpp"
#include "aczel/combinators.hpp"
#include "aczel/dsl.hpp"
#include "aczel/laws.hpp"
#include "aczel/temporal.hpp"
#include "aczel/wide_spectrum.hpp"

#include "flat_semantics.hpp"
#include "random_terms.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace aczel;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void fail(std::string why) {
    pass = false;
    details.push_back(std::move(why));
  }
};

SpacePtr one_bit() { return make_space({Variable{"b", {"0", "1"}}}); }

SpacePtr counter3() { return make_space({Variable{"x", {"0", "1", "2"}}}); }

std::string describe(const Verdict &v, const StateSpace &space) {
  return format_verdict(v, space);
}

// ------------------------------------------------------------ law suite

// Every positive law of `report` must be verified.
void require_verified(const LawSuiteReport &report, Outcome &out) {
  std::size_t n = 0;
  for (const auto &r : report.results) {
    if (r.negative)
      continue;
    ++n;
    if (r.status != LawStatus::Verified)
      out.fail(r.name + " (" + r.statement + ") fails: " + r.instance + "; " + r.witness);
  }
  out.summary += std::to_string(n) + " laws";
}

// The statement of a negative law, checked as a plain equation: it holds
// only if the law's search found no counterexample.
void require_statement(const LawSuiteReport &report, const std::string &name,
                       Outcome &out) {
  const auto *r = report.find(name);
  if (!r) {
    out.fail("missing law " + name);
    return;
  }
  out.summary += ", " + r->statement;
  if (r->status == LawStatus::RefutedAsExpected)
    out.fail(r->statement + " fails at instance #" + std::to_string(*r->instance_index) +
             ": " + r->instance + "; " + r->witness);
}

LawSuiteReport suite(const Context &ctx, std::vector<std::string> categories,
                     std::vector<std::string> names = {}) {
  auto ops = OperatorTable::builtin(*ctx.space());
  LawSuiteOptions opts;
  opts.categories = std::move(categories);
  opts.names = std::move(names);
  return run_law_suite(ctx, ops, opts);
}

// ------------------------------------------------------------ criteria

Outcome healthiness() {
  Outcome out;
  auto ctx = Context::create(one_bit(), Depth(4));
  auto sp = ctx.space();
  std::vector<CommandSemantics> base{abort_cmd(ctx), eabort(ctx)};
  for (const auto &r : all_relations(sp)) {
    base.push_back(pstep(ctx, r));
    base.push_back(estep(ctx, r));
    base.push_back(estep_or_abort(ctx, r));
  }
  for (const auto &p : all_predicates(sp))
    base.push_back(test(ctx, p));

  std::vector<CommandSemantics> derived{pi(ctx), eps(ctx), epsbot(ctx), nil(ctx), magic(ctx),
                                        update(ctx, "b", "0"), update(ctx, "b", "1")};
  for (const auto &name : canonical_names())
    derived.push_back(*canonical(ctx, name));
  for (const auto &p : all_predicates(sp))
    derived.push_back(pre(ctx, p));
  for (const auto &r : all_relations(sp)) {
    derived.push_back(opt(ctx, r));
    derived.push_back(spec(ctx, r));
    derived.push_back(guar(ctx, r));
    derived.push_back(eguard(ctx, r));
    derived.push_back(rely(ctx, r));
    derived.push_back(atomic(ctx, r));
  }

  std::size_t checked = 0;
  auto check = [&](const CommandSemantics &c, const std::function<std::string()> &what) {
    ++checked;
    if (!is_healthy(c) || !is_well_formed(c))
      out.fail("unhealthy: " + what());
  };
  for (std::size_t i = 0; i < base.size(); ++i)
    check(base[i], [&] { return "primitive #" + std::to_string(i); });
  for (std::size_t i = 0; i < derived.size(); ++i)
    check(derived[i], [&] { return "derived command #" + std::to_string(i); });

  using Bin = CommandSemantics (*)(const CommandSemantics &, const CommandSemantics &);
  const std::pair<const char *, Bin> binaries[] = {
      {"choice", choice}, {"supremum", supremum}, {"seq", seq}, {"par", par}, {"conj", conj}};
  for (const auto &[name, f] : binaries)
    for (std::size_t i = 0; i < base.size(); ++i)
      for (std::size_t j = 0; j < base.size(); ++j)
        check(f(base[i], base[j]), [&, name = name] {
          return std::string(name) + "(#" + std::to_string(i) + ", #" + std::to_string(j) + ")";
        });
  for (std::size_t i = 0; i < base.size(); ++i) {
    auto tag = [&](const char *op) { return std::string(op) + "(#" + std::to_string(i) + ")"; };
    check(star(base[i]), [&] { return tag("star"); });
    check(omega(base[i]), [&] { return tag("omega"); });
    check(infiter(base[i]), [&] { return tag("infiter"); });
    check(hide(base[i], "b"), [&] { return tag("hide"); });
  }
  out.summary = std::to_string(checked) + " command sets";
  return out;
}

Outcome lattice_laws() {
  Outcome out;
  auto ctx = Context::create(one_bit(), Depth(4));
  require_verified(suite(ctx, {"lattice", "primitives", "sequential"}), out);
  require_statement(suite(ctx, {}, {"seq-test-epsbot-unrestricted"}),
                    "seq-test-epsbot-unrestricted", out);
  return out;
}

Outcome iteration_laws() {
  Outcome out;
  auto ctx = Context::create(one_bit(), Depth(4));
  auto report = suite(ctx, {"iteration"});
  for (auto name : {"omega-decomposition", "omega-interchange"})
    if (!report.find(name))
      out.fail(std::string("missing law ") + name);
  require_verified(report, out);
  return out;
}

Outcome parallel_conj_laws() {
  Outcome out;
  auto ctx = Context::create(one_bit(), Depth(4));
  require_verified(suite(ctx, {"parallel", "conjunction"}), out);
  auto literal = suite(ctx, {}, {"par-associative-unrestricted", "conj-test-test-unrestricted"});
  require_statement(literal, "par-associative-unrestricted", out);
  require_statement(literal, "conj-test-test-unrestricted", out);
  return out;
}

Outcome negative_laws() {
  Outcome out;
  auto ctx = Context::create(one_bit(), Depth(4));
  const std::vector<std::string> names{"skip-not-seq-identity", "seq-magic-not-magic",
                                       "seq-abort-not-abort", "env-theorem-converse"};
  auto report = suite(ctx, {}, names);
  for (const auto &n : names) {
    const auto *r = report.find(n);
    if (!r || r->status != LawStatus::RefutedAsExpected || r->witness.empty())
      out.fail(n + " was not refuted with a counterexample");
  }
  out.summary = std::to_string(names.size()) + " refuted with witnesses";
  return out;
}

Outcome rely_guarantee() {
  Outcome out;
  auto ctx = Context::create(one_bit(), Depth(4));
  auto report = suite(ctx, {"rely-guarantee"});
  for (auto name : {"eguard-env", "eguard-refsto", "env-theorem", "guar-conj", "guar-par",
                    "eguard-conj", "env-conj"})
    if (!report.find(name))
      out.fail(std::string("missing law ") + name);
  require_verified(report, out);
  return out;
}

Outcome worked_examples() {
  Outcome out;
  auto sp = counter3();
  auto ctx = Context::create(sp, Depth(5));
  auto ops = OperatorTable::builtin(*sp);
  auto rel = [&](const char *text) { return relation_of(*parse_expression(text), ops, sp); };

  auto lhs = assign(ctx, ops, "x", *Expr::literal("1"));
  auto rhs = seq({idle(ctx), update(ctx, "x", "1"), idle(ctx)});
  if (auto v = check_equality(lhs, rhs, "x := 1 = idle ; update(x, 1) ; idle"); !v.holds())
    out.fail(describe(v, *sp));

  const std::vector<ExprPtr> conds{parse_expression("x = 0"), parse_expression("x < 2"),
                                   parse_expression("x != 1"), Expr::literal("true"),
                                   parse_expression("x + 1 = 2")};
  auto truth = ops.values().truth(true);
  std::size_t pairs = 0;
  for (const auto &e1 : conds)
    for (const auto &e2 : conds) {
      ++pairs;
      auto both = eval_expr(ctx, ops, *Expr::binary("and", e1, e2), truth);
      auto split = par(eval_expr(ctx, ops, *e1, truth), eval_expr(ctx, ops, *e2, truth));
      auto query = "eval(" + to_string(*Expr::binary("and", e1, e2)) + ", true)";
      if (auto v = check_equality(both, split, query); !v.holds())
        out.fail(describe(v, *sp));
    }

  auto env_any = omega(epsbot(ctx));
  auto p = seq({env_any, pstep(ctx, rel("x' = 0")), env_any, pstep(ctx, rel("x' = x + 1")),
                env_any});
  auto guarded = conj(p, eguard(ctx, rel("x' = x")));
  std::size_t ends = 0;
  auto x = sp->variable_index("x");
  for (const auto &t : terminating(guarded)) {
    ++ends;
    if (sp->value(t.last, x) != "1")
      out.fail("terminated with " + sp->format(t.last) + ": " + format_trace(*sp, t.trace));
  }
  if (ends == 0)
    out.fail("the guarded increment has no terminated traces");

  auto env_same = omega(estep_or_abort(ctx, rel("x' = x")));
  auto shape = seq({env_same, pstep(ctx, rel("x' = 0")), env_same,
                    pstep(ctx, rel("x' = x + 1")), env_same});
  if (auto v = check_equality(guarded, shape, "p /\\ eguard(x' = x) = guarded form");
      !v.holds())
    out.fail(describe(v, *sp));

  out.summary = "assignment, " + std::to_string(pairs) + " conjunctions, " +
                std::to_string(ends) + " terminated traces end with x=1";
  return out;
}

Outcome nonblocking() {
  Outcome out;
  const char *stack = "[variables]\n"
                      "s = <> <a> <b> <a,a> <a,b> <b,a> <b,b>\n"
                      "v = a b\n";
  auto session = Session::from_text(stack, 5);
  const auto &ctx = session.context();
  const auto &sp = ctx.space();
  const std::pair<const char *, const char *> ops[] = {
      {"atomic(push)", "atomic(rel{s' = v :: s and v' = v})"},
      {"push", "frame s . atomic(rel{s' = v :: s}) /\\ rely(rel{v' = v})"},
  };
  for (const auto &[name, text] : ops) {
    auto op = session.evaluate(text);
    auto of = obstruction_free(op), lf = lock_free(op, "s"), wf = wait_free(op);
    auto need = [&](const CommandSemantics &a, const CommandSemantics &b, std::string what) {
      if (auto v = check_refinement(a, b, std::string(name) + ": " + what); !v.holds())
        out.fail(describe(v, *sp));
    };
    need(of, lf, "obsfree <= lockfree");
    need(lf, wf, "lockfree <= waitfree");
    need(op, conj(of, eguard(ctx, Relation::empty(sp))), "op <= obsfree /\\ eguard(empty)");
    need(op, conj(lf, eguard(ctx, Relation::identity_on(sp, {"s"}))),
         "op <= lockfree /\\ eguard(id(s))");
  }
  out.summary = "2 operations, 14 states";
  return out;
}

// A random command over the one-bit space, rebuilt identically in any
// context.
struct Term {
  enum Op { Leaf, Choice, Sup, Seq, Par, Conj, Hide, Star, Omega, Infiter } op = Leaf;
  int leaf = 0;
  std::size_t rel = 0, pred = 0;
  std::vector<Term> kids;
};

Term random_leaf(std::mt19937 &rng) {
  Term t;
  t.leaf = std::uniform_int_distribution<int>(0, 5)(rng);
  t.rel = std::uniform_int_distribution<std::size_t>(0, 15)(rng);
  t.pred = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
  return t;
}

Term random_operand(std::mt19937 &rng) {
  if (std::bernoulli_distribution(0.5)(rng))
    return random_leaf(rng);
  Term t;
  t.op = static_cast<Term::Op>(std::uniform_int_distribution<int>(Term::Choice, Term::Conj)(rng));
  t.kids = {random_leaf(rng), random_leaf(rng)};
  return t;
}

CommandSemantics build(const Context &ctx, const Term &t) {
  static const auto rels = all_relations(one_bit());
  static const auto preds = all_predicates(one_bit());
  auto kid = [&](std::size_t i) { return build(ctx, t.kids[i]); };
  switch (t.op) {
  case Term::Leaf: {
    const auto r = Relation::from(ctx.space(), [&](StateId a, StateId b) {
      return rels[t.rel].contains(a, b);
    });
    const auto p = Predicate::from(ctx.space(), [&](StateId s) {
      return preds[t.pred].contains(s);
    });
    switch (t.leaf) {
    case 0: return pstep(ctx, r);
    case 1: return estep(ctx, r);
    case 2: return estep_or_abort(ctx, r);
    case 3: return test(ctx, p);
    case 4: return abort_cmd(ctx);
    default: return eabort(ctx);
    }
  }
  case Term::Choice: return choice(kid(0), kid(1));
  case Term::Sup: return supremum(kid(0), kid(1));
  case Term::Seq: return seq(kid(0), kid(1));
  case Term::Par: return par(kid(0), kid(1));
  case Term::Conj: return conj(kid(0), kid(1));
  case Term::Hide: return hide(kid(0), "b");
  case Term::Star: return star(kid(0));
  case Term::Omega: return omega(kid(0));
  case Term::Infiter: return infiter(kid(0));
  }
  return magic(ctx);
}

Outcome truncation() {
  Outcome out;
  auto sp = one_bit();
  auto deep = Context::create(sp, Depth(6));
  auto shallow = Context::create(sp, Depth(4));
  std::mt19937 rng(20);
  const std::pair<const char *, Term::Op> ops[] = {
      {"choice", Term::Choice}, {"supremum", Term::Sup}, {"seq", Term::Seq},
      {"par", Term::Par},       {"conj", Term::Conj},    {"hide", Term::Hide},
      {"star", Term::Star},     {"omega", Term::Omega},  {"infiter", Term::Infiter}};
  std::size_t n = 0;
  for (const auto &[name, op] : ops) {
    bool unary = op >= Term::Hide;
    for (int i = 0; i < 100; ++i, ++n) {
      Term t;
      t.op = op;
      t.kids.push_back(random_operand(rng));
      if (!unary)
        t.kids.push_back(random_operand(rng));
      auto cut = to_listing(restrict_depth(build(deep, t), Depth(4)));
      auto direct = to_listing(build(shallow, t));
      if (cut != direct)
        out.fail(std::string(name) + " instance " + std::to_string(i) +
                 ": depth-6 result truncated to 4 differs from depth 4");
    }
  }
  out.summary = std::to_string(n) + " instances over 9 operators";
  return out;
}

Outcome flat_oracle() {
  Outcome out;
  auto sp = one_bit();
  auto ctx = Context::create(sp, Depth(3));
  oracle::FlatSemantics flat(sp, 3);
  struct Both {
    CommandSemantics engine;
    oracle::Flat set;
    std::string text;
  };
  std::vector<Both> prims{{abort_cmd(ctx), flat.abort_all(), "abort"},
                          {eabort(ctx), flat.eabort(), "eabort"},
                          {nil(ctx), flat.nil(), "nil"},
                          {magic(ctx), flat.magic(), "magic"}};
  auto rels = all_relations(sp);
  for (std::size_t i = 0; i < rels.size(); ++i) {
    auto tag = "#" + std::to_string(i) + ")";
    prims.push_back({pstep(ctx, rels[i]), flat.pstep(rels[i]), "pi(" + tag});
    prims.push_back({estep(ctx, rels[i]), flat.estep(rels[i]), "eps(" + tag});
    prims.push_back({estep_or_abort(ctx, rels[i]), flat.estep_or_abort(rels[i]), "epsbot(" + tag});
  }
  auto preds = all_predicates(sp);
  for (std::size_t i = 0; i < preds.size(); ++i)
    prims.push_back({test(ctx, preds[i]), flat.test(preds[i]), "test(#" + std::to_string(i) + ")"});

  std::size_t n = 0;
  auto agree = [&](const CommandSemantics &c, const oracle::Flat &f, const std::string &what) {
    ++n;
    if (!oracle::same(c, f))
      out.fail("engine and enumerator disagree on " + what);
  };
  for (const auto &p : prims) {
    agree(p.engine, p.set, p.text);
    agree(hide(p.engine, "b"), flat.hide(p.set, "b"), "hide(" + p.text + ")");
  }
  for (const auto &a : prims)
    for (const auto &b : prims) {
      auto args = "(" + a.text + ", " + b.text + ")";
      agree(choice(a.engine, b.engine), flat.choice(a.set, b.set), "choice" + args);
      agree(supremum(a.engine, b.engine), flat.supremum(a.set, b.set), "supremum" + args);
      agree(seq(a.engine, b.engine), flat.seq(a.set, b.set), "seq" + args);
      agree(par(a.engine, b.engine), flat.par(a.set, b.set), "par" + args);
      agree(conj(a.engine, b.engine), flat.conj(a.set, b.set), "conj" + args);
    }
  out.summary = std::to_string(n) + " sets compared";
  return out;
}

} // namespace

int main() {
  struct Criterion {
    const char *name;
    Outcome (*run)();
    double limit_seconds;
  };
  const Criterion criteria[] = {
      {"healthiness of every constructor and operator", healthiness, 60},
      {"lattice, primitive and sequential laws", lattice_laws, 0},
      {"iteration laws", iteration_laws, 0},
      {"parallel and weak conjunction laws", parallel_conj_laws, 0},
      {"negative laws refuted with counterexamples", negative_laws, 0},
      {"rely/guarantee laws", rely_guarantee, 0},
      {"worked examples", worked_examples, 0},
      {"non-blocking progress ordering on the stack", nonblocking, 300},
      {"truncation commutes with evaluation", truncation, 0},
      {"agreement with the brute-force enumerator", flat_oracle, 0},
  };
  int failed = 0;
  int index = 0;
  for (const auto &c : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception &e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      std::ostringstream os;
      os << "took " << secs << " s, limit " << c.limit_seconds << " s";
      out.fail(os.str());
    }
    std::ostringstream line;
    line << "criterion " << (index < 10 ? " " : "") << index << "  "
         << (out.pass ? "PASS" : "FAIL") << "  " << c.name << " (" << out.summary << "; "
         << std::fixed << std::setprecision(1) << secs << " s)";
    std::cout << line.str() << std::endl;
    for (const auto &d : out.details)
      std::cerr << "    " << d << '\n';
    failed += out.pass ? 0 : 1;
  }
  std::cout << (failed ? std::to_string(failed) + " of 10 criteria failed" : "all 10 criteria passed")
            << std::endl;
  return failed ? 1 : 0;
}

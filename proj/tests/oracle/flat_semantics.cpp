#include "flat_semantics.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace aczel::oracle {

namespace {

const Step kPAbort = Step::program(ExtState::bottom());
const Step kEAbortStep = Step::env(ExtState::bottom());

bool is_prefix(const std::vector<Step> &p, const std::vector<Step> &t) {
  return p.size() <= t.size() && std::equal(p.begin(), p.end(), t.begin());
}

bool terminated(const Trace &t) {
  return !t.steps.empty() && t.steps.back().kind == StepKind::Term;
}

std::optional<StateId> last_of(const Trace &t) {
  if (t.steps.empty())
    return t.initial;
  const auto &z = t.steps.back();
  if (z.kind == StepKind::Term || z.post.is_bottom())
    return std::nullopt;
  return z.post.state();
}

std::optional<Step> match_step(const Step &a, const Step &b) {
  if (a.kind == StepKind::Term && b.kind == StepKind::Term)
    return Step::term();
  if (a.kind == StepKind::Term || b.kind == StepKind::Term)
    return std::nullopt;
  if (a.post != b.post)
    return std::nullopt;
  if (a.kind == StepKind::Program && b.kind == StepKind::Env)
    return Step::program(a.post);
  if (a.kind == StepKind::Env && b.kind == StepKind::Program)
    return Step::program(a.post);
  if (a.kind == StepKind::Env && b.kind == StepKind::Env)
    return Step::env(a.post);
  return std::nullopt;
}

} // namespace

FlatSemantics::FlatSemantics(SpacePtr space, int depth)
    : space_(std::move(space)), depth_(depth) {
  std::vector<Step> nonterminal, terminal{kPAbort, kEAbortStep, Step::term()};
  for (std::size_t i = 0; i < space_->size(); ++i) {
    nonterminal.push_back(Step::program(space_->state(i)));
    nonterminal.push_back(Step::env(space_->state(i)));
  }
  for (std::size_t i = 0; i < space_->size(); ++i) {
    std::vector<Trace> frontier{Trace{space_->state(i), {}}};
    for (int len = 0; len <= depth_; ++len) {
      std::vector<Trace> next;
      for (const auto &t : frontier) {
        all_.insert(t);
        if (len == depth_)
          continue;
        for (const auto &z : terminal) {
          auto u = t;
          u.steps.push_back(z);
          all_.insert(u);
        }
        for (const auto &z : nonterminal) {
          auto u = t;
          u.steps.push_back(z);
          next.push_back(u);
        }
      }
      frontier = std::move(next);
    }
  }
}

Flat FlatSemantics::truncate(const Flat &s) const {
  Flat out;
  for (const auto &t : s)
    if (static_cast<int>(t.steps.size()) <= depth_)
      out.insert(t);
  return out;
}

Flat FlatSemantics::empty_closure(const Flat &s) const {
  Flat out = s;
  for (std::size_t i = 0; i < space_->size(); ++i)
    out.insert(Trace{space_->state(i), {}});
  return out;
}

Flat FlatSemantics::prefix_closure(const Flat &s) const {
  Flat out = empty_closure(s);
  for (const auto &t : s)
    for (std::size_t k = 0; k <= t.steps.size(); ++k)
      out.insert(Trace{t.initial, {t.steps.begin(), t.steps.begin() + k}});
  return out;
}

Flat FlatSemantics::aborting(const Flat &s) const {
  Flat out;
  for (const auto &t : s)
    if (!t.steps.empty() && t.steps.back() == kPAbort)
      out.insert(Trace{t.initial, {t.steps.begin(), t.steps.end() - 1}});
  return out;
}

Flat FlatSemantics::abort_complete(const Flat &s) const {
  Flat out;
  for (const auto &t : all_)
    for (const auto &p : s)
      if (p.initial == t.initial && is_prefix(p.steps, t.steps)) {
        out.insert(t);
        break;
      }
  return out;
}

Flat FlatSemantics::abort_closure(const Flat &s) const {
  Flat out = s;
  for (const auto &t : abort_complete(aborting(s)))
    out.insert(t);
  return out;
}

Flat FlatSemantics::pstep(const Relation &r) const {
  Flat raw;
  for (std::size_t a = 0; a < space_->size(); ++a)
    for (std::size_t b = 0; b < space_->size(); ++b)
      if (r.contains(space_->state(a), space_->state(b)))
        raw.insert(Trace{space_->state(a),
                         {Step::program(space_->state(b)), Step::term()}});
  return truncate(prefix_closure(raw));
}

Flat FlatSemantics::estep(const Relation &r) const {
  Flat raw;
  for (std::size_t a = 0; a < space_->size(); ++a)
    for (std::size_t b = 0; b < space_->size(); ++b)
      if (r.contains(space_->state(a), space_->state(b)))
        raw.insert(Trace{space_->state(a),
                         {Step::env(space_->state(b)), Step::term()}});
  return truncate(prefix_closure(raw));
}

Flat FlatSemantics::test(const Predicate &p) const {
  Flat raw;
  for (auto s : p.states())
    raw.insert(Trace{s, {Step::term()}});
  return empty_closure(raw);
}

Flat FlatSemantics::eabort() const {
  Flat raw;
  for (std::size_t i = 0; i < space_->size(); ++i)
    raw.insert(Trace{space_->state(i), {kEAbortStep}});
  return empty_closure(raw);
}

Flat FlatSemantics::estep_or_abort(const Relation &r) const {
  Flat out = estep(r);
  for (const auto &t : eabort())
    out.insert(t);
  return out;
}

Flat FlatSemantics::nil() const { return test(Predicate::full(space_)); }
Flat FlatSemantics::magic() const { return test(Predicate::empty(space_)); }

Flat FlatSemantics::choice(const Flat &a, const Flat &b) const {
  Flat out = a;
  out.insert(b.begin(), b.end());
  return empty_closure(out);
}

Flat FlatSemantics::supremum(const Flat &a, const Flat &b) const {
  Flat out;
  for (const auto &t : a)
    if (b.contains(t))
      out.insert(t);
  return out;
}

Flat FlatSemantics::seq(const Flat &a, const Flat &b) const {
  Flat unterminated;
  Flat ends; // terminating(a)
  for (const auto &t : a) {
    if (terminated(t))
      ends.insert(Trace{t.initial, {t.steps.begin(), t.steps.end() - 1}});
    else
      unterminated.insert(t);
  }
  Flat out = abort_closure(unterminated);
  for (const auto &t1 : ends) {
    auto last = last_of(t1);
    for (const auto &t2 : b) {
      if (!last || t2.initial != *last)
        continue;
      Trace t{t1.initial, t1.steps};
      t.steps.insert(t.steps.end(), t2.steps.begin(), t2.steps.end());
      if (static_cast<int>(t.steps.size()) <= depth_)
        out.insert(t);
    }
  }
  return out;
}

Flat FlatSemantics::par(const Flat &a, const Flat &b) const {
  Flat raw;
  for (const auto &t1 : a)
    for (const auto &t2 : b) {
      if (t1.initial != t2.initial || t1.steps.size() != t2.steps.size())
        continue;
      Trace t{t1.initial, {}};
      bool ok = true;
      for (std::size_t i = 0; i < t1.steps.size() && ok; ++i) {
        auto z = match_step(t1.steps[i], t2.steps[i]);
        if (!z)
          ok = false;
        else
          t.steps.push_back(*z);
      }
      if (ok)
        raw.insert(t);
    }
  return abort_closure(raw);
}

Flat FlatSemantics::conj(const Flat &a, const Flat &b) const {
  Flat out = supremum(a, b);
  auto first = [&](const Flat &x, const Flat &y) {
    return abort_complete(supremum(aborting(x), y));
  };
  for (const auto &t : first(a, b))
    out.insert(t);
  for (const auto &t : first(b, a))
    out.insert(t);
  return out;
}

Flat FlatSemantics::hide(const Flat &c, const std::string &var) const {
  auto x = space_->variable_index(var);
  auto project = [&](const Trace &t) {
    Trace p{space_->erase(t.initial, x), {}};
    for (const auto &z : t.steps) {
      if (z.kind == StepKind::Term || z.post.is_bottom())
        p.steps.push_back(z);
      else
        p.steps.push_back(Step{z.kind, space_->erase(z.post.state(), x)});
    }
    return p;
  };
  Flat projected;
  for (const auto &t : c)
    projected.insert(project(t));
  Flat out;
  for (const auto &t : all_)
    if (projected.contains(project(t)))
      out.insert(t);
  return out;
}

Flat FlatSemantics::fix(const std::function<Flat(const Flat &)> &f,
                        Flat start) const {
  for (int i = 0; i < 1000; ++i) {
    auto next = f(start);
    if (next == start)
      return start;
    start = std::move(next);
  }
  throw std::runtime_error("flat fixed point did not converge");
}

Flat FlatSemantics::star(const Flat &c) const {
  auto n = nil();
  return fix([&](const Flat &x) { return choice(n, seq(c, x)); }, magic());
}

Flat FlatSemantics::omega(const Flat &c) const {
  auto n = nil();
  return fix([&](const Flat &x) { return choice(n, seq(c, x)); }, all_);
}

} // namespace aczel::oracle

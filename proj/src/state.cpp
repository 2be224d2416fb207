#include "aczel/state.hpp"

#include "aczel/errors.hpp"

#include <algorithm>
#include <set>

namespace aczel {

StateSpace::StateSpace(std::vector<Variable> variables)
    : variables_(std::move(variables)) {
  std::set<std::string> names;
  for (const auto &v : variables_) {
    if (v.name.empty())
      throw Error("variable with empty name");
    if (!names.insert(v.name).second)
      throw Error("duplicate variable '" + v.name + "'");
    if (v.domain.empty())
      throw Error("variable '" + v.name + "' has an empty domain");
    std::set<std::string> values(v.domain.begin(), v.domain.end());
    if (values.size() != v.domain.size())
      throw Error("variable '" + v.name + "' has repeated domain values");
  }
  strides_.assign(variables_.size(), 1);
  size_ = 1;
  for (std::size_t i = variables_.size(); i-- > 0;) {
    strides_[i] = size_;
    size_ *= variables_[i].domain.size();
    if (size_ > (1u << 20))
      throw Error("state space too large");
  }
}

std::optional<std::size_t> StateSpace::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i].name == name)
      return i;
  return std::nullopt;
}

std::size_t StateSpace::variable_index(std::string_view name) const {
  if (auto i = find_variable(name))
    return *i;
  throw UnknownVariable(std::string(name));
}

std::optional<std::size_t> StateSpace::find_value(std::size_t var,
                                                  std::string_view value) const {
  const auto &dom = variables_.at(var).domain;
  auto it = std::find(dom.begin(), dom.end(), value);
  if (it == dom.end())
    return std::nullopt;
  return static_cast<std::size_t>(it - dom.begin());
}

std::size_t StateSpace::value_index(StateId s, std::size_t var) const {
  return (s.index / strides_[var]) % variables_[var].domain.size();
}

const std::string &StateSpace::value(StateId s, std::size_t var) const {
  return variables_[var].domain[value_index(s, var)];
}

StateId StateSpace::with_value(StateId s, std::size_t var,
                               std::size_t value) const {
  auto cur = value_index(s, var);
  auto idx = s.index - cur * strides_[var] + value * strides_[var];
  return state(idx);
}

StateId StateSpace::encode(std::span<const std::size_t> value_indices) const {
  if (value_indices.size() != variables_.size())
    throw Error("state encoding needs one value per variable");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (value_indices[i] >= variables_[i].domain.size())
      throw UnknownValue("value index out of domain for '" +
                         variables_[i].name + "'");
    idx += value_indices[i] * strides_[i];
  }
  return state(idx);
}

StateId StateSpace::erase(StateId s, std::size_t var) const {
  return with_value(s, var, 0);
}

std::string StateSpace::format(StateId s) const {
  std::string out;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (i)
      out += ',';
    out += variables_[i].name;
    out += '=';
    out += value(s, i);
  }
  return out;
}

SpacePtr make_space(std::vector<Variable> variables) {
  return std::make_shared<const StateSpace>(std::move(variables));
}

void require_same_space(const SpacePtr &a, const SpacePtr &b) {
  if (a == b)
    return;
  if (!a || !b || !(*a == *b))
    throw SpaceMismatch("operands range over different state spaces");
}

// ---------------------------------------------------------------- Predicate

Predicate Predicate::full(SpacePtr space) {
  auto n = space->size();
  return Predicate(std::move(space), std::vector<bool>(n, true));
}

Predicate Predicate::empty(SpacePtr space) {
  auto n = space->size();
  return Predicate(std::move(space), std::vector<bool>(n, false));
}

Predicate Predicate::singleton(SpacePtr space, StateId s) {
  auto p = empty(std::move(space));
  p.members_.at(s.index) = true;
  return p;
}

Predicate Predicate::from(SpacePtr space,
                          const std::function<bool(StateId)> &f) {
  std::vector<bool> m(space->size());
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = f(space->state(i));
  return Predicate(std::move(space), std::move(m));
}

std::size_t Predicate::count() const {
  return static_cast<std::size_t>(
      std::count(members_.begin(), members_.end(), true));
}

std::vector<StateId> Predicate::states() const {
  std::vector<StateId> out;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i])
      out.push_back(space_->state(i));
  return out;
}

Predicate Predicate::complement() const {
  auto m = members_;
  m.flip();
  return Predicate(space_, std::move(m));
}

Predicate Predicate::operator|(const Predicate &other) const {
  require_same_space(space_, other.space_);
  auto m = members_;
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = m[i] || other.members_[i];
  return Predicate(space_, std::move(m));
}

Predicate Predicate::operator&(const Predicate &other) const {
  require_same_space(space_, other.space_);
  auto m = members_;
  for (std::size_t i = 0; i < m.size(); ++i)
    m[i] = m[i] && other.members_[i];
  return Predicate(space_, std::move(m));
}

bool Predicate::subset_of(const Predicate &other) const {
  require_same_space(space_, other.space_);
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i] && !other.members_[i])
      return false;
  return true;
}

bool Predicate::operator==(const Predicate &other) const {
  require_same_space(space_, other.space_);
  return members_ == other.members_;
}

// ----------------------------------------------------------------- Relation

Relation::Relation(SpacePtr space, std::vector<bool> pairs)
    : space_(std::move(space)), n_(space_->size()), pairs_(std::move(pairs)) {}

Relation Relation::universal(SpacePtr space) {
  auto n = space->size();
  return Relation(std::move(space), std::vector<bool>(n * n, true));
}

Relation Relation::empty(SpacePtr space) {
  auto n = space->size();
  return Relation(std::move(space), std::vector<bool>(n * n, false));
}

Relation Relation::identity(SpacePtr space) {
  return from(std::move(space), [](StateId a, StateId b) { return a == b; });
}

Relation Relation::identity_on(SpacePtr space,
                               const std::vector<std::string> &vars) {
  std::vector<std::size_t> idx;
  for (const auto &v : vars)
    idx.push_back(space->variable_index(v));
  const auto *sp = space.get();
  return from(std::move(space), [&](StateId a, StateId b) {
    for (auto i : idx)
      if (sp->value_index(a, i) != sp->value_index(b, i))
        return false;
    return true;
  });
}

Relation Relation::from(SpacePtr space,
                        const std::function<bool(StateId, StateId)> &f) {
  auto n = space->size();
  std::vector<bool> p(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      p[a * n + b] = f(space->state(a), space->state(b));
  return Relation(std::move(space), std::move(p));
}

std::size_t Relation::count() const {
  return static_cast<std::size_t>(std::count(pairs_.begin(), pairs_.end(), true));
}

Relation Relation::operator|(const Relation &other) const {
  require_same_space(space_, other.space_);
  auto p = pairs_;
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = p[i] || other.pairs_[i];
  return Relation(space_, std::move(p));
}

Relation Relation::operator&(const Relation &other) const {
  require_same_space(space_, other.space_);
  auto p = pairs_;
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = p[i] && other.pairs_[i];
  return Relation(space_, std::move(p));
}

Relation Relation::complement() const {
  auto p = pairs_;
  p.flip();
  return Relation(space_, std::move(p));
}

Relation Relation::then(const Relation &other) const {
  require_same_space(space_, other.space_);
  std::vector<bool> p(n_ * n_, false);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t m = 0; m < n_; ++m) {
      if (!pairs_[a * n_ + m])
        continue;
      for (std::size_t b = 0; b < n_; ++b)
        if (other.pairs_[m * n_ + b])
          p[a * n_ + b] = true;
    }
  return Relation(space_, std::move(p));
}

Relation Relation::closure() const {
  auto p = pairs_;
  for (std::size_t i = 0; i < n_; ++i)
    p[i * n_ + i] = true;
  // Warshall
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t a = 0; a < n_; ++a) {
      if (!p[a * n_ + k])
        continue;
      for (std::size_t b = 0; b < n_; ++b)
        if (p[k * n_ + b])
          p[a * n_ + b] = true;
    }
  return Relation(space_, std::move(p));
}

Relation Relation::restrict_domain(const Predicate &pred) const {
  require_same_space(space_, pred.space());
  auto p = pairs_;
  for (std::size_t a = 0; a < n_; ++a)
    if (!pred.contains(space_->state(a)))
      for (std::size_t b = 0; b < n_; ++b)
        p[a * n_ + b] = false;
  return Relation(space_, std::move(p));
}

Relation Relation::hide(std::string_view var) const {
  auto x = space_->variable_index(var);
  std::vector<bool> p(n_ * n_, false);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      if (!pairs_[a * n_ + b])
        continue;
      // Every pair of x-variants of (a, b) is related.
      auto ea = space_->erase(space_->state(a), x);
      auto eb = space_->erase(space_->state(b), x);
      auto dom = space_->variable(x).domain.size();
      for (std::size_t i = 0; i < dom; ++i)
        for (std::size_t j = 0; j < dom; ++j)
          p[space_->with_value(ea, x, i).index * n_ +
            space_->with_value(eb, x, j).index] = true;
    }
  return Relation(space_, std::move(p));
}

Predicate Relation::reflexive_states() const {
  return Predicate::from(space_,
                         [&](StateId s) { return contains(s, s); });
}

Predicate Relation::image(StateId s) const {
  return Predicate::from(space_, [&](StateId t) { return contains(s, t); });
}

bool Relation::subset_of(const Relation &other) const {
  require_same_space(space_, other.space_);
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    if (pairs_[i] && !other.pairs_[i])
      return false;
  return true;
}

bool Relation::operator==(const Relation &other) const {
  require_same_space(space_, other.space_);
  return pairs_ == other.pairs_;
}

std::vector<Predicate> all_predicates(const SpacePtr &space, std::size_t limit) {
  auto n = space->size();
  if (n >= 31 || (std::size_t{1} << n) > limit)
    throw Error("too many predicates to enumerate");
  std::vector<Predicate> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask)
    out.push_back(Predicate::from(
        space, [mask](StateId s) { return (mask >> s.index) & 1u; }));
  return out;
}

std::vector<Relation> all_relations(const SpacePtr &space, std::size_t limit) {
  auto n = space->size();
  auto bits = n * n;
  if (bits >= 31 || (std::size_t{1} << bits) > limit)
    throw Error("too many relations to enumerate");
  std::vector<Relation> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << bits); ++mask)
    out.push_back(Relation::from(space, [mask, n](StateId a, StateId b) {
      return (mask >> (a.index * n + b.index)) & 1u;
    }));
  return out;
}

} // namespace aczel

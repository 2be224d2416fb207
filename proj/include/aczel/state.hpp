#pragma once

// Finite state spaces, states, predicates (sets of states) and relations
// (sets of state pairs).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aczel {

struct Variable {
  std::string name;
  std::vector<std::string> domain;

  bool operator==(const Variable &) const = default;
};

// Index of a state in the canonical enumeration of a StateSpace.
struct StateId {
  std::uint32_t index = 0;

  auto operator<=>(const StateId &) const = default;
};

// The cartesian product of the declared variable domains. States are
// numbered lexicographically: first variable most significant, values in
// declaration order.
class StateSpace {
public:
  explicit StateSpace(std::vector<Variable> variables);

  std::size_t size() const { return size_; }
  std::size_t variable_count() const { return variables_.size(); }
  const std::vector<Variable> &variables() const { return variables_; }
  const Variable &variable(std::size_t i) const { return variables_.at(i); }

  std::optional<std::size_t> find_variable(std::string_view name) const;
  // Throws UnknownVariable.
  std::size_t variable_index(std::string_view name) const;
  std::optional<std::size_t> find_value(std::size_t var,
                                        std::string_view value) const;

  std::size_t value_index(StateId s, std::size_t var) const;
  const std::string &value(StateId s, std::size_t var) const;
  StateId with_value(StateId s, std::size_t var, std::size_t value) const;
  StateId encode(std::span<const std::size_t> value_indices) const;

  // Representative of the class of states that agree with `s` everywhere
  // except possibly on `var` (the state with `var` at its first value).
  StateId erase(StateId s, std::size_t var) const;

  StateId state(std::size_t index) const {
    return StateId{static_cast<std::uint32_t>(index)};
  }

  // "x=0,y=1"
  std::string format(StateId s) const;

  bool operator==(const StateSpace &other) const {
    return variables_ == other.variables_;
  }

private:
  std::vector<Variable> variables_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
};

using SpacePtr = std::shared_ptr<const StateSpace>;

SpacePtr make_space(std::vector<Variable> variables);

// Throws SpaceMismatch unless the two spaces are the same.
void require_same_space(const SpacePtr &a, const SpacePtr &b);

// A State or the undefined state.
class ExtState {
public:
  ExtState(StateId s) : state_(s) {}
  static ExtState bottom() { return ExtState(); }

  bool is_bottom() const { return !state_.has_value(); }
  // Precondition: !is_bottom().
  StateId state() const { return *state_; }

  auto operator<=>(const ExtState &other) const {
    // Bottom orders after every proper state.
    if (is_bottom() || other.is_bottom())
      return is_bottom() <=> other.is_bottom();
    return *state_ <=> *other.state_;
  }
  bool operator==(const ExtState &) const = default;

private:
  ExtState() = default;
  std::optional<StateId> state_;
};

class Predicate {
public:
  static Predicate full(SpacePtr space);
  static Predicate empty(SpacePtr space);
  static Predicate singleton(SpacePtr space, StateId s);
  static Predicate from(SpacePtr space, const std::function<bool(StateId)> &f);

  const SpacePtr &space() const { return space_; }
  bool contains(StateId s) const { return members_[s.index]; }
  std::size_t count() const;
  std::vector<StateId> states() const;

  Predicate complement() const;
  Predicate operator|(const Predicate &other) const;
  Predicate operator&(const Predicate &other) const;
  bool subset_of(const Predicate &other) const;

  bool operator==(const Predicate &other) const;

private:
  Predicate(SpacePtr space, std::vector<bool> members)
      : space_(std::move(space)), members_(std::move(members)) {}

  SpacePtr space_;
  std::vector<bool> members_;
};

class Relation {
public:
  static Relation universal(SpacePtr space);
  static Relation empty(SpacePtr space);
  static Relation identity(SpacePtr space);
  // id(X): pairs that agree on every variable in X. Throws UnknownVariable.
  static Relation identity_on(SpacePtr space,
                              const std::vector<std::string> &vars);
  static Relation from(SpacePtr space,
                       const std::function<bool(StateId, StateId)> &f);

  const SpacePtr &space() const { return space_; }
  bool contains(StateId from, StateId to) const {
    return pairs_[from.index * n_ + to.index];
  }
  std::size_t count() const;

  Relation operator|(const Relation &other) const;
  Relation operator&(const Relation &other) const;
  Relation complement() const;
  // r1 ∘ r2: first r1 then r2.
  Relation then(const Relation &other) const;
  Relation closure() const;
  // p ◁ r
  Relation restrict_domain(const Predicate &p) const;
  // r\x: pairs whose x-variants are related by r. Throws UnknownVariable.
  Relation hide(std::string_view var) const;

  // {σ | (σ,σ) ∈ r}
  Predicate reflexive_states() const;
  // {σ' | (σ,σ') ∈ r}
  Predicate image(StateId s) const;
  bool subset_of(const Relation &other) const;

  bool operator==(const Relation &other) const;

private:
  Relation(SpacePtr space, std::vector<bool> pairs);

  SpacePtr space_;
  std::size_t n_ = 0;
  std::vector<bool> pairs_;
};

// All 2^|Σ| predicates / 2^(|Σ|²) relations, in a fixed order. Intended for
// exhaustive checks over tiny spaces; throws Error when the count would
// exceed `limit`.
std::vector<Predicate> all_predicates(const SpacePtr &space,
                                      std::size_t limit = 1u << 16);
std::vector<Relation> all_relations(const SpacePtr &space,
                                    std::size_t limit = 1u << 16);

} // namespace aczel

#pragma once

// Expressions over the declared variables, the value set Val_⊥ and the
// operator table that interprets unary and binary operators.
//
// Val is the union of every declared domain together with the booleans
// `true` and `false`; ⊥ᵥ is an extra value. Built-in operators:
//   not hd tl                      unary
//   and or = != < <= > >= + - * / % ::   binary
// Arithmetic is modular with modulus 1 + (largest integer in Val); `/` and
// `%` by zero give ⊥ᵥ; `::` prepends to a sequence written `<a,b>`. Every
// built-in is strict in ⊥ᵥ, and any result outside Val is ⊥ᵥ.

#include "aczel/state.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aczel {

using ValueId = std::uint32_t;

class Values {
public:
  explicit Values(const StateSpace &space);

  // |Val|; ids [0, size()) are proper values and size() is ⊥ᵥ.
  std::size_t size() const { return names_.size(); }
  ValueId bottom() const { return static_cast<ValueId>(names_.size()); }
  bool is_bottom(ValueId v) const { return v == bottom(); }

  std::optional<ValueId> find(std::string_view name) const;
  // Throws UnknownValue.
  ValueId value(std::string_view name) const;
  // "bot" for ⊥ᵥ.
  const std::string &name(ValueId v) const;
  ValueId truth(bool b) const { return b ? true_ : false_; }

  // σ(x)
  ValueId of_state(const StateSpace &space, StateId s, std::size_t var) const;
  // Index of `v` in the domain of `var`, if it belongs to it.
  std::optional<std::size_t> domain_index(std::size_t var, ValueId v) const;

private:
  std::vector<std::string> names_;
  std::map<std::string, ValueId, std::less<>> index_;
  std::vector<std::vector<ValueId>> domain_values_;
  ValueId true_ = 0, false_ = 0;
};

class OperatorTable {
public:
  explicit OperatorTable(std::shared_ptr<const Values> values);
  // The built-in operators for the given space.
  static OperatorTable builtin(const StateSpace &space);

  // Adds or overrides operators from a table document:
  //   [unary name]            [binary name]
  //   arg = result            lhs rhs = result
  // with `bot` for ⊥ᵥ. Rows not listed keep the built-in meaning, or ⊥ᵥ
  // for a new operator. Throws ParseError or UnknownValue.
  void load(std::string_view text);

  const Values &values() const { return *values_; }
  const std::shared_ptr<const Values> &values_ptr() const { return values_; }

  bool has_unary(std::string_view op) const;
  bool has_binary(std::string_view op) const;
  // Throw Error for an unknown operator.
  ValueId unary(std::string_view op, ValueId a) const;
  ValueId binary(std::string_view op, ValueId a, ValueId b) const;

private:
  std::shared_ptr<const Values> values_;
  std::map<std::string, std::vector<ValueId>, std::less<>> unary_;
  std::map<std::string, std::vector<ValueId>, std::less<>> binary_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Literal, Variable, Primed, Unary, Binary };

  Kind kind;
  std::string name; // value, variable or operator
  ExprPtr lhs;      // operand of Unary, left of Binary
  ExprPtr rhs;

  static ExprPtr literal(std::string value);
  static ExprPtr variable(std::string var);
  // x' in a relation; not allowed in program expressions.
  static ExprPtr primed(std::string var);
  static ExprPtr unary(std::string op, ExprPtr e);
  static ExprPtr binary(std::string op, ExprPtr a, ExprPtr b);
};

std::string to_string(const Expr &e);

// Value of `e` with unprimed variables read from `pre` and primed ones
// from `post`. Throws UnknownVariable, UnknownValue, or Error for a primed
// variable without a post state.
ValueId evaluate(const Expr &e, const OperatorTable &ops,
                 const StateSpace &space, StateId pre,
                 std::optional<StateId> post = std::nullopt);

// {σ | e evaluates to true in σ}
Predicate predicate_of(const Expr &e, const OperatorTable &ops,
                       const SpacePtr &space);
// {(σ,σ') | e evaluates to true with x read from σ and x' from σ'}
Relation relation_of(const Expr &e, const OperatorTable &ops,
                     const SpacePtr &space);

} // namespace aczel

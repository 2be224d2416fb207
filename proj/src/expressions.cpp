#include "aczel/expressions.hpp"

#include "aczel/errors.hpp"

#include <charconv>
#include <functional>
#include <sstream>

namespace aczel {

namespace {

const std::string kBottomName = "bot";

std::optional<long> as_int(const std::string &s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    return std::nullopt;
  return v;
}

std::optional<bool> as_bool(const std::string &s) {
  if (s == "true")
    return true;
  if (s == "false")
    return false;
  return std::nullopt;
}

std::optional<std::vector<std::string>> as_seq(const std::string &s) {
  if (s.size() < 2 || s.front() != '<' || s.back() != '>')
    return std::nullopt;
  std::vector<std::string> out;
  auto body = s.substr(1, s.size() - 2);
  if (body.empty())
    return out;
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string seq_text(const std::vector<std::string> &xs) {
  std::string s = "<";
  for (std::size_t i = 0; i < xs.size(); ++i)
    s += (i ? "," : "") + xs[i];
  return s + ">";
}

} // namespace

// ------------------------------------------------------------------ Values

Values::Values(const StateSpace &space) {
  auto add = [&](const std::string &v) {
    if (v == kBottomName)
      throw UnknownValue("'" + kBottomName + "' is reserved for undefined");
    auto [it, fresh] = index_.emplace(v, static_cast<ValueId>(names_.size()));
    if (fresh)
      names_.push_back(v);
    return it->second;
  };
  for (const auto &var : space.variables()) {
    std::vector<ValueId> ids;
    for (const auto &v : var.domain)
      ids.push_back(add(v));
    domain_values_.push_back(std::move(ids));
  }
  true_ = add("true");
  false_ = add("false");
}

std::optional<ValueId> Values::find(std::string_view name) const {
  if (name == kBottomName)
    return bottom();
  auto it = index_.find(name);
  if (it == index_.end())
    return std::nullopt;
  return it->second;
}

ValueId Values::value(std::string_view name) const {
  if (auto v = find(name))
    return *v;
  throw UnknownValue("unknown value '" + std::string(name) + "'");
}

const std::string &Values::name(ValueId v) const {
  return is_bottom(v) ? kBottomName : names_.at(v);
}

ValueId Values::of_state(const StateSpace &space, StateId s,
                         std::size_t var) const {
  return domain_values_.at(var)[space.value_index(s, var)];
}

std::optional<std::size_t> Values::domain_index(std::size_t var,
                                                ValueId v) const {
  const auto &d = domain_values_.at(var);
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] == v)
      return i;
  return std::nullopt;
}

// ----------------------------------------------------------- OperatorTable

OperatorTable::OperatorTable(std::shared_ptr<const Values> values)
    : values_(std::move(values)) {}

OperatorTable OperatorTable::builtin(const StateSpace &space) {
  OperatorTable t(std::make_shared<const Values>(space));
  const auto &vals = *t.values_;
  auto n = vals.size() + 1;
  auto bot = vals.bottom();

  long max_int = -1;
  for (ValueId v = 0; v < vals.size(); ++v)
    if (auto i = as_int(vals.name(v)); i && *i >= 0)
      max_int = std::max(max_int, *i);
  long modulus = max_int + 1;

  auto lookup = [&](const std::string &s) {
    auto v = vals.find(s);
    return v && !vals.is_bottom(*v) ? *v : bot;
  };
  auto ints = [&](ValueId a, ValueId b,
                  const std::function<std::optional<long>(long, long)> &f) {
    auto x = as_int(vals.name(a)), y = as_int(vals.name(b));
    if (!x || !y)
      return bot;
    auto r = f(*x, *y);
    return r ? lookup(std::to_string(*r)) : bot;
  };
  auto cmp = [&](ValueId a, ValueId b, const std::function<bool(long, long)> &f) {
    auto x = as_int(vals.name(a)), y = as_int(vals.name(b));
    if (!x || !y)
      return bot;
    return vals.truth(f(*x, *y));
  };
  auto bools = [&](ValueId a, ValueId b, const std::function<bool(bool, bool)> &f) {
    auto x = as_bool(vals.name(a)), y = as_bool(vals.name(b));
    if (!x || !y)
      return bot;
    return vals.truth(f(*x, *y));
  };
  auto mod = [modulus](long v) { return ((v % modulus) + modulus) % modulus; };

  using Bin = std::function<ValueId(ValueId, ValueId)>;
  std::vector<std::pair<std::string, Bin>> bins = {
      {"and", [&](ValueId a, ValueId b) { return bools(a, b, std::logical_and<>()); }},
      {"or", [&](ValueId a, ValueId b) { return bools(a, b, std::logical_or<>()); }},
      {"=", [&](ValueId a, ValueId b) { return vals.truth(a == b); }},
      {"!=", [&](ValueId a, ValueId b) { return vals.truth(a != b); }},
      {"<", [&](ValueId a, ValueId b) { return cmp(a, b, std::less<>()); }},
      {"<=", [&](ValueId a, ValueId b) { return cmp(a, b, std::less_equal<>()); }},
      {">", [&](ValueId a, ValueId b) { return cmp(a, b, std::greater<>()); }},
      {">=", [&](ValueId a, ValueId b) { return cmp(a, b, std::greater_equal<>()); }},
      {"+", [&](ValueId a, ValueId b) {
         return ints(a, b, [&](long x, long y) -> std::optional<long> {
           if (modulus <= 0)
             return std::nullopt;
           return mod(x + y);
         });
       }},
      {"-", [&](ValueId a, ValueId b) {
         return ints(a, b, [&](long x, long y) -> std::optional<long> {
           if (modulus <= 0)
             return std::nullopt;
           return mod(x - y);
         });
       }},
      {"*", [&](ValueId a, ValueId b) {
         return ints(a, b, [&](long x, long y) -> std::optional<long> {
           if (modulus <= 0)
             return std::nullopt;
           return mod(x * y);
         });
       }},
      {"/", [&](ValueId a, ValueId b) {
         return ints(a, b, [](long x, long y) -> std::optional<long> {
           if (y == 0)
             return std::nullopt;
           return x / y;
         });
       }},
      {"%", [&](ValueId a, ValueId b) {
         return ints(a, b, [](long x, long y) -> std::optional<long> {
           if (y == 0)
             return std::nullopt;
           return x % y;
         });
       }},
      {"::", [&](ValueId a, ValueId b) {
         auto xs = as_seq(vals.name(b));
         if (!xs || as_seq(vals.name(a)))
           return bot;
         xs->insert(xs->begin(), vals.name(a));
         return lookup(seq_text(*xs));
       }},
  };
  for (const auto &[name, f] : bins) {
    std::vector<ValueId> tab(n * n, bot);
    for (ValueId a = 0; a < vals.size(); ++a)
      for (ValueId b = 0; b < vals.size(); ++b)
        tab[a * n + b] = f(a, b);
    t.binary_.emplace(name, std::move(tab));
  }

  using Un = std::function<ValueId(ValueId)>;
  std::vector<std::pair<std::string, Un>> uns = {
      {"not", [&](ValueId a) {
         auto x = as_bool(vals.name(a));
         return x ? vals.truth(!*x) : bot;
       }},
      {"hd", [&](ValueId a) {
         auto xs = as_seq(vals.name(a));
         return xs && !xs->empty() ? lookup(xs->front()) : bot;
       }},
      {"tl", [&](ValueId a) {
         auto xs = as_seq(vals.name(a));
         if (!xs || xs->empty())
           return bot;
         xs->erase(xs->begin());
         return lookup(seq_text(*xs));
       }},
  };
  for (const auto &[name, f] : uns) {
    std::vector<ValueId> tab(n, bot);
    for (ValueId a = 0; a < vals.size(); ++a)
      tab[a] = f(a);
    t.unary_.emplace(name, std::move(tab));
  }
  return t;
}

void OperatorTable::load(std::string_view text) {
  const auto &vals = *values_;
  auto n = vals.size() + 1;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<ValueId> *current = nullptr;
  bool binary = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> toks;
    for (std::string w; words >> w;)
      toks.push_back(w);
    if (toks.empty())
      continue;
    auto col = line.find_first_not_of(" \t") + 1;
    if (toks[0].front() == '[') {
      auto open = line.find('['), close = line.find(']');
      if (close == std::string::npos)
        throw ParseError("missing ']'", lineno, col);
      std::istringstream hdr(line.substr(open + 1, close - open - 1));
      std::string kind, name, extra;
      hdr >> kind >> name;
      if (name.empty() || (hdr >> extra))
        throw ParseError("expected [unary NAME] or [binary NAME]", lineno, col);
      if (kind == "unary") {
        binary = false;
        auto it = unary_.try_emplace(name, std::vector<ValueId>(n, vals.bottom())).first;
        current = &it->second;
      } else if (kind == "binary") {
        binary = true;
        auto it = binary_.try_emplace(name, std::vector<ValueId>(n * n, vals.bottom())).first;
        current = &it->second;
      } else {
        throw ParseError("unknown section kind '" + kind + "'", lineno, col);
      }
      continue;
    }
    if (!current)
      throw ParseError("row outside an operator section", lineno, col);
    std::size_t args = binary ? 2 : 1;
    if (toks.size() != args + 2 || toks[args] != "=")
      throw ParseError(binary ? "expected 'lhs rhs = result'"
                              : "expected 'arg = result'",
                       lineno, col);
    auto val = [&](const std::string &s) {
      if (auto v = vals.find(s))
        return *v;
      throw ParseError("unknown value '" + s + "'", lineno, col);
    };
    auto result = val(toks[args + 1]);
    if (binary)
      (*current)[val(toks[0]) * n + val(toks[1])] = result;
    else
      (*current)[val(toks[0])] = result;
  }
}

bool OperatorTable::has_unary(std::string_view op) const {
  return unary_.find(op) != unary_.end();
}

bool OperatorTable::has_binary(std::string_view op) const {
  return binary_.find(op) != binary_.end();
}

ValueId OperatorTable::unary(std::string_view op, ValueId a) const {
  auto it = unary_.find(op);
  if (it == unary_.end())
    throw Error("unknown unary operator '" + std::string(op) + "'");
  return it->second.at(a);
}

ValueId OperatorTable::binary(std::string_view op, ValueId a, ValueId b) const {
  auto it = binary_.find(op);
  if (it == binary_.end())
    throw Error("unknown binary operator '" + std::string(op) + "'");
  return it->second.at(a * (values_->size() + 1) + b);
}

// -------------------------------------------------------------------- Expr

ExprPtr Expr::literal(std::string value) {
  return std::make_shared<const Expr>(Expr{Kind::Literal, std::move(value), {}, {}});
}
ExprPtr Expr::variable(std::string var) {
  return std::make_shared<const Expr>(Expr{Kind::Variable, std::move(var), {}, {}});
}
ExprPtr Expr::primed(std::string var) {
  return std::make_shared<const Expr>(Expr{Kind::Primed, std::move(var), {}, {}});
}
ExprPtr Expr::unary(std::string op, ExprPtr e) {
  return std::make_shared<const Expr>(Expr{Kind::Unary, std::move(op), std::move(e), {}});
}
ExprPtr Expr::binary(std::string op, ExprPtr a, ExprPtr b) {
  return std::make_shared<const Expr>(
      Expr{Kind::Binary, std::move(op), std::move(a), std::move(b)});
}

std::string to_string(const Expr &e) {
  switch (e.kind) {
  case Expr::Kind::Literal:
  case Expr::Kind::Variable:
    return e.name;
  case Expr::Kind::Primed:
    return e.name + "'";
  case Expr::Kind::Unary:
    return e.name + "(" + to_string(*e.lhs) + ")";
  case Expr::Kind::Binary:
    return "(" + to_string(*e.lhs) + " " + e.name + " " + to_string(*e.rhs) + ")";
  }
  return {};
}

ValueId evaluate(const Expr &e, const OperatorTable &ops,
                 const StateSpace &space, StateId pre,
                 std::optional<StateId> post) {
  const auto &vals = ops.values();
  switch (e.kind) {
  case Expr::Kind::Literal:
    return vals.value(e.name);
  case Expr::Kind::Variable:
    return vals.of_state(space, pre, space.variable_index(e.name));
  case Expr::Kind::Primed:
    if (!post)
      throw Error("primed variable " + e.name + "' outside a relation");
    return vals.of_state(space, *post, space.variable_index(e.name));
  case Expr::Kind::Unary:
    return ops.unary(e.name, evaluate(*e.lhs, ops, space, pre, post));
  case Expr::Kind::Binary: {
    auto a = evaluate(*e.lhs, ops, space, pre, post);
    auto b = evaluate(*e.rhs, ops, space, pre, post);
    return ops.binary(e.name, a, b);
  }
  }
  return vals.bottom();
}

Predicate predicate_of(const Expr &e, const OperatorTable &ops,
                       const SpacePtr &space) {
  auto yes = ops.values().truth(true);
  return Predicate::from(space, [&](StateId s) {
    return evaluate(e, ops, *space, s) == yes;
  });
}

Relation relation_of(const Expr &e, const OperatorTable &ops,
                     const SpacePtr &space) {
  auto yes = ops.values().truth(true);
  return Relation::from(space, [&](StateId a, StateId b) {
    return evaluate(e, ops, *space, a, b) == yes;
  });
}

} // namespace aczel

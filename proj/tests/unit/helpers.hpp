#pragma once

#include "aczel/combinators.hpp"

#include <string>
#include <vector>

namespace aczel::testing {

// One variable `name` over {0, ..., n-1}.
inline SpacePtr counter_space(std::size_t n, const std::string &name = "x") {
  std::vector<std::string> dom;
  for (std::size_t i = 0; i < n; ++i)
    dom.push_back(std::to_string(i));
  return make_space({Variable{name, dom}});
}

inline SpacePtr bits_space(const std::vector<std::string> &names) {
  std::vector<Variable> vars;
  for (const auto &n : names)
    vars.push_back(Variable{n, {"0", "1"}});
  return make_space(std::move(vars));
}

inline Trace tr(std::uint32_t init, std::vector<Step> steps) {
  return Trace{StateId{init}, std::move(steps)};
}
inline Step P(std::uint32_t s) { return Step::program(StateId{s}); }
inline Step E(std::uint32_t s) { return Step::env(StateId{s}); }
inline Step Pbot() { return Step::program(ExtState::bottom()); }
inline Step Ebot() { return Step::env(ExtState::bottom()); }
inline Step T() { return Step::term(); }

} // namespace aczel::testing

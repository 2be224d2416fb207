#pragma once

// State-space configuration documents.
//
//   # comment
//   [variables]
//   x = 0 1 2
//   s = <> <a> <b>
//   [predicates]
//   small = x < 2
//   [relations]
//   inc = x' = x + 1
//   [settings]
//   depth = 4
//
// Variables list their values separated by whitespace. Predicates and
// relations are expressions in the command language's expression syntax;
// they are compiled once the space is known.

#include "aczel/state.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace aczel {

struct NamedDefinition {
  std::string name;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0; // of the expression text
};

struct SpaceConfig {
  std::vector<Variable> variables;
  std::vector<NamedDefinition> predicates;
  std::vector<NamedDefinition> relations;
  std::map<std::string, std::string> settings;
};

// Throws ParseError with the line and column of the offending text.
SpaceConfig parse_config(std::string_view text);

} // namespace aczel

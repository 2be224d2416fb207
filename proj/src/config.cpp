#include "aczel/config.hpp"

#include "aczel/errors.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace aczel {

namespace {

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_identifier(const std::string &s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

} // namespace

SpaceConfig parse_config(std::string_view text) {
  SpaceConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::string section;
  std::size_t lineno = 0;
  std::set<std::string> seen_defs;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto body = trim(line);
    if (body.empty())
      continue;
    auto col = line.find_first_not_of(" \t") + 1;
    if (body.front() == '[') {
      if (body.back() != ']')
        throw ParseError("missing ']' in section header", lineno, col);
      section = trim(body.substr(1, body.size() - 2));
      if (section != "variables" && section != "predicates" &&
          section != "relations" && section != "settings")
        throw ParseError("unknown section '" + section + "'", lineno, col);
      continue;
    }
    auto eq = line.find('=');
    if (section.empty())
      throw ParseError("entry outside a section", lineno, col);
    if (eq == std::string::npos)
      throw ParseError("expected 'name = ...'", lineno, col);
    auto name = trim(line.substr(0, eq));
    auto rest = line.substr(eq + 1);
    auto rest_col = eq + 2 + (rest.find_first_not_of(" \t") == std::string::npos
                                  ? 0
                                  : rest.find_first_not_of(" \t"));
    auto value = trim(rest);
    if (!is_identifier(name))
      throw ParseError("invalid name '" + name + "'", lineno, col);
    if (section == "variables") {
      Variable v{name, {}};
      std::istringstream words(value);
      for (std::string w; words >> w;)
        v.domain.push_back(w);
      if (v.domain.empty())
        throw ParseError("variable '" + name + "' has no values", lineno, rest_col);
      for (const auto &existing : cfg.variables)
        if (existing.name == name)
          throw ParseError("duplicate variable '" + name + "'", lineno, col);
      cfg.variables.push_back(std::move(v));
    } else if (section == "settings") {
      cfg.settings[name] = value;
    } else {
      if (value.empty())
        throw ParseError("empty definition of '" + name + "'", lineno, rest_col);
      if (!seen_defs.insert(name).second)
        throw ParseError("duplicate definition '" + name + "'", lineno, col);
      auto &dst = section == "predicates" ? cfg.predicates : cfg.relations;
      dst.push_back(NamedDefinition{name, value, lineno, rest_col});
    }
  }
  if (cfg.variables.empty())
    throw ParseError("no variables declared", lineno == 0 ? 1 : lineno, 1);
  return cfg;
}

} // namespace aczel

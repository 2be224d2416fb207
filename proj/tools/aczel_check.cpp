// Command-line front end: refinement checks, the law suite and trace dumps.
//
//   aczel_check --space s.cfg --check "idle <= skip"
//   aczel_check --space s.cfg --laws --seed 7 --json
//   aczel_check --space s.cfg --dump "pi(id) ; eps"
//
// Exit status: 0 when everything holds, 1 on a refutation or failed law,
// 2 on usage, parse or evaluation errors.

#include "aczel/aczel.h"

#include "CLI11.hpp"

#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

std::optional<std::string> slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int emit(aczel_status st, char *text, aczel_session *s) {
  if (text) {
    std::cout << text;
    if (*text && text[std::strlen(text) - 1] != '\n')
      std::cout << '\n';
    aczel_string_free(text);
  }
  switch (st) {
  case ACZEL_OK:
    return 0;
  case ACZEL_REFUTED:
  case ACZEL_LAWS_FAILED:
    return 1;
  default:
    std::cerr << "error: " << aczel_last_error(s) << "\n";
    return 2;
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Depth-bounded refinement checker for trace-semantics commands"};
  std::string space_file, ops_file, query, dump;
  int depth = 0;
  unsigned seed = 1;
  unsigned long long budget = 0;
  bool laws = false, json = false, version = false;
  app.add_option("--space", space_file, "state-space config file");
  app.add_option("--depth", depth, "trace length bound (default: config setting or 5)")
      ->check(CLI::PositiveNumber);
  app.add_option("--check", query, "\"c <= d\" (refinement) or \"c = d\" (equality)");
  app.add_flag("--laws", laws, "run the law suite");
  app.add_option("--seed", seed, "seed for sampled law instances");
  app.add_option("--ops", ops_file, "operator table file");
  app.add_option("--budget", budget, "maximum number of trace-tree nodes");
  app.add_option("--dump", dump, "list the maximal traces of a command");
  app.add_flag("--json", json, "machine-readable output");
  app.add_flag("--version", version, "print the version");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    auto code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (version) {
    std::cout << aczel_version() << "\n";
    return 0;
  }
  if (space_file.empty()) {
    std::cerr << "error: --space is required\n";
    return 2;
  }
  int actions = (query.empty() ? 0 : 1) + (laws ? 1 : 0) + (dump.empty() ? 0 : 1);
  if (actions != 1) {
    std::cerr << "error: give exactly one of --check, --laws, --dump\n";
    return 2;
  }
  auto cfg = slurp(space_file);
  if (!cfg) {
    std::cerr << "error: cannot read " << space_file << "\n";
    return 2;
  }
  std::optional<std::string> ops;
  if (!ops_file.empty()) {
    ops = slurp(ops_file);
    if (!ops) {
      std::cerr << "error: cannot read " << ops_file << "\n";
      return 2;
    }
  }
  aczel_session *s = nullptr;
  if (aczel_session_new(cfg->c_str(), depth, ops ? ops->c_str() : nullptr, &s) != ACZEL_OK) {
    std::cerr << "error: " << space_file << ": " << aczel_last_error(nullptr) << "\n";
    return 2;
  }
  if (budget)
    aczel_set_budget(s, budget);
  char *out = nullptr;
  aczel_status st;
  if (laws)
    st = aczel_run_laws(s, seed, json ? 1 : 0, &out);
  else if (!query.empty())
    st = aczel_check(s, query.c_str(), json ? 1 : 0, &out);
  else
    st = aczel_dump(s, dump.c_str(), &out);
  auto code = emit(st, out, s);
  aczel_session_free(s);
  return code;
}

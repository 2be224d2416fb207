#pragma once

// The conformance law suite: algebraic identities and refinements of the
// command algebra checked by exact set comparison. Over spaces of at most
// two states every law ranges over all relations and predicates; larger
// spaces are sampled from a seeded generator. Laws that are expected not
// to hold are run as negative laws and must produce a counterexample.

#include "aczel/expressions.hpp"
#include "aczel/primitives.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aczel {

enum class LawStatus { Verified, RefutedAsExpected, Failed };

const char *to_string(LawStatus s);

struct LawResult {
  std::string name;
  std::string category;
  std::string statement;
  bool negative = false;
  LawStatus status = LawStatus::Verified;
  std::size_t instances = 0;
  std::size_t failures = 0;
  // First failing instance of a positive law or the refuting instance of a
  // negative one: its index, operands and the distinguishing trace.
  std::optional<std::size_t> instance_index;
  std::string instance;
  std::string witness;
};

struct LawSuiteOptions {
  std::uint32_t seed = 1;
  // Run only these categories; empty means all.
  std::vector<std::string> categories;
  // Run only these laws by name; empty means all.
  std::vector<std::string> names;
};

struct LawSuiteReport {
  std::string space;
  int depth = 0;
  std::uint32_t seed = 0;
  bool exhaustive = false;
  std::vector<LawResult> results; // ordered by name

  bool ok() const;
  std::size_t count(LawStatus s) const;
  const LawResult *find(const std::string &name) const;
  // Deterministic: no timings.
  std::string to_text() const;
  std::string to_json() const;
};

struct LawInfo {
  std::string name;
  std::string category;
  std::string statement;
  bool negative;
};
const std::vector<LawInfo> &law_catalogue();

LawSuiteReport run_law_suite(const Context &ctx, const OperatorTable &ops,
                             const LawSuiteOptions &opts = {});

} // namespace aczel

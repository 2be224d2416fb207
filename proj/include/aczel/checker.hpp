#pragma once

// Refinement and equality checks with counterexamples, and a Session that
// ties a space configuration, an operator table and a depth together.

#include "aczel/config.hpp"
#include "aczel/dsl.hpp"

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace aczel {

enum class VerdictStatus { Holds, Refuted };

struct Verdict {
  VerdictStatus status = VerdictStatus::Holds;
  int depth = 0;
  std::string query;
  // Refuted only: a shortest trace of the right-hand command missing from
  // the left-hand one. For an equality query whose right side holds the
  // extra trace, `reversed` is false; true when the left side does.
  std::optional<Trace> witness;
  bool reversed = false;
  std::chrono::microseconds elapsed{0};

  bool holds() const { return status == VerdictStatus::Holds; }
};

// lhs ⊑ rhs
Verdict check_refinement(const CommandSemantics &lhs,
                         const CommandSemantics &rhs, std::string query = {});
// lhs = rhs, by inclusion both ways.
Verdict check_equality(const CommandSemantics &lhs, const CommandSemantics &rhs,
                       std::string query = {});

std::string format_verdict(const Verdict &v, const StateSpace &space);
// {"query":..., "status":"holds"|"refuted", "depth":n,
//  "witness":[{"kind":"init"|"program"|"env"|"term", "state":...}] | null}
std::string verdict_json(const Verdict &v, const StateSpace &space);

class Session {
public:
  // Throws ParseError for a malformed config or operator table.
  Session(const SpaceConfig &config, int depth,
          std::optional<std::string> ops_text = std::nullopt,
          Faults faults = {});
  static Session from_text(std::string_view config_text, int depth,
                           std::optional<std::string> ops_text = std::nullopt,
                           Faults faults = {});

  const Context &context() const { return env_->context(); }
  const SpacePtr &space() const { return context().space(); }
  const OperatorTable &ops() const { return *ops_; }
  const SpaceConfig &config() const { return config_; }
  Environment &environment() { return *env_; }
  int depth() const { return context().depth.bound; }

  void set_budget(std::size_t nodes) { context().store().set_budget(nodes); }

  CommandSemantics evaluate(std::string_view command);
  // "c <= d" or "c = d".
  Verdict check(std::string_view query);

private:
  SpaceConfig config_;
  std::shared_ptr<const OperatorTable> ops_;
  std::unique_ptr<Environment> env_;
};

} // namespace aczel

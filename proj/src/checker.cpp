#include "aczel/checker.hpp"

#include "aczel/errors.hpp"

#include "json.hpp"

#include <sstream>

namespace aczel {

namespace {

using Clock = std::chrono::steady_clock;

std::string ext_state(const StateSpace &space, const Step &z) {
  return z.post.is_bottom() ? "bot" : space.format(z.post.state());
}

} // namespace

Verdict check_refinement(const CommandSemantics &lhs,
                         const CommandSemantics &rhs, std::string query) {
  auto t0 = Clock::now();
  auto r = subset(lhs, rhs);
  Verdict v;
  v.depth = lhs.depth();
  v.query = std::move(query);
  v.status = r.holds ? VerdictStatus::Holds : VerdictStatus::Refuted;
  v.witness = r.witness;
  v.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
  return v;
}

Verdict check_equality(const CommandSemantics &lhs, const CommandSemantics &rhs,
                       std::string query) {
  auto t0 = Clock::now();
  auto v = check_refinement(lhs, rhs, std::move(query));
  if (v.holds()) {
    auto back = subset(rhs, lhs);
    if (!back.holds) {
      v.status = VerdictStatus::Refuted;
      v.witness = back.witness;
      v.reversed = true;
    }
  }
  v.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
  return v;
}

std::string format_verdict(const Verdict &v, const StateSpace &space) {
  std::ostringstream out;
  if (!v.query.empty())
    out << v.query << "\n";
  if (v.holds()) {
    out << "holds at depth " << v.depth << "\n";
    return out.str();
  }
  out << "refuted at depth " << v.depth << "\n";
  out << (v.reversed ? "trace of the left side missing from the right: "
                     : "trace of the right side missing from the left: ")
      << format_trace(space, *v.witness) << "\n";
  return out.str();
}

std::string verdict_json(const Verdict &v, const StateSpace &space) {
  nlohmann::ordered_json j;
  j["query"] = v.query;
  j["status"] = v.holds() ? "holds" : "refuted";
  j["depth"] = v.depth;
  if (v.witness) {
    auto w = nlohmann::ordered_json::array();
    w.push_back({{"kind", "init"}, {"state", space.format(v.witness->initial)}});
    for (const auto &z : v.witness->steps) {
      switch (z.kind) {
      case StepKind::Program:
        w.push_back({{"kind", "program"}, {"state", ext_state(space, z)}});
        break;
      case StepKind::Env:
        w.push_back({{"kind", "env"}, {"state", ext_state(space, z)}});
        break;
      case StepKind::Term:
        w.push_back({{"kind", "term"}, {"state", nullptr}});
        break;
      }
    }
    j["witness"] = w;
    j["missing_from"] = v.reversed ? "right" : "left";
  } else {
    j["witness"] = nullptr;
  }
  return j.dump();
}

Session::Session(const SpaceConfig &config, int depth,
                 std::optional<std::string> ops_text, Faults faults)
    : config_(config) {
  auto space = make_space(config_.variables);
  auto ctx = Context::create(space, Depth(depth), faults);
  auto ops = std::make_shared<OperatorTable>(OperatorTable::builtin(*space));
  if (ops_text)
    ops->load(*ops_text);
  ops_ = ops;
  env_ = std::make_unique<Environment>(ctx, ops_, config_);
}

Session Session::from_text(std::string_view config_text, int depth,
                           std::optional<std::string> ops_text, Faults faults) {
  return Session(parse_config(config_text), depth, std::move(ops_text), faults);
}

CommandSemantics Session::evaluate(std::string_view command) {
  return env_->command(*parse_command(command));
}

Verdict Session::check(std::string_view query) {
  auto q = parse_query(query);
  auto t0 = Clock::now();
  auto lhs = env_->command(*q.lhs);
  auto rhs = env_->command(*q.rhs);
  auto v = q.equality ? check_equality(lhs, rhs, std::string(query))
                      : check_refinement(lhs, rhs, std::string(query));
  v.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - t0);
  return v;
}

} // namespace aczel

#include "aczel/aczel.h"

#include "aczel/checker.hpp"
#include "aczel/errors.hpp"
#include "aczel/laws.hpp"

#include <cstring>
#include <memory>
#include <string>

struct aczel_session {
  std::unique_ptr<aczel::Session> session;
  std::string error;
};

namespace {

thread_local std::string g_error;
constexpr std::size_t kDefaultBudget = 40'000'000;
constexpr int kDefaultDepth = 5;

char *dup(const std::string &s) {
  auto *p = static_cast<char *>(std::malloc(s.size() + 1));
  if (p)
    std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename F> aczel_status guarded(std::string &error, F f) {
  try {
    return f();
  } catch (const aczel::ParseError &e) {
    error = e.what();
    return ACZEL_ERR_PARSE;
  } catch (const aczel::UnknownVariable &e) {
    error = e.what();
    return ACZEL_ERR_PARSE;
  } catch (const aczel::UnknownValue &e) {
    error = e.what();
    return ACZEL_ERR_PARSE;
  } catch (const aczel::BudgetExceeded &e) {
    error = e.what();
    return ACZEL_ERR_BUDGET;
  } catch (const aczel::Error &e) {
    error = e.what();
    return ACZEL_ERR_ARGUMENT;
  } catch (const std::exception &e) {
    error = e.what();
    return ACZEL_ERR_INTERNAL;
  } catch (...) {
    error = "unknown error";
    return ACZEL_ERR_INTERNAL;
  }
}

} // namespace

extern "C" {

aczel_status aczel_session_new(const char *config_text, int depth,
                               const char *ops_text, aczel_session **out) {
  if (!out) {
    g_error = "null output pointer";
    return ACZEL_ERR_ARGUMENT;
  }
  *out = nullptr;
  if (!config_text || depth < 0) {
    g_error = config_text ? "depth must not be negative" : "null config";
    return ACZEL_ERR_ARGUMENT;
  }
  return guarded(g_error, [&] {
    auto config = aczel::parse_config(config_text);
    if (depth == 0) {
      depth = kDefaultDepth;
      if (auto it = config.settings.find("depth"); it != config.settings.end()) {
        try {
          depth = std::stoi(it->second);
        } catch (const std::exception &) {
          throw aczel::Error("setting depth = '" + it->second + "' is not a number");
        }
      }
    }
    if (depth < 1)
      throw aczel::Error("depth must be at least 1");
    auto s = std::make_unique<aczel_session>();
    std::optional<std::string> ops;
    if (ops_text)
      ops = ops_text;
    s->session = std::make_unique<aczel::Session>(config, depth, ops);
    *out = s.release();
    return ACZEL_OK;
  });
}

void aczel_session_free(aczel_session *s) { delete s; }

aczel_status aczel_set_budget(aczel_session *s, unsigned long long max_nodes) {
  if (!s)
    return ACZEL_ERR_ARGUMENT;
  s->session->set_budget(max_nodes ? static_cast<std::size_t>(max_nodes)
                                   : kDefaultBudget);
  return ACZEL_OK;
}

int aczel_depth(const aczel_session *s) { return s ? s->session->depth() : 0; }

aczel_status aczel_check(aczel_session *s, const char *query, int json,
                         char **out) {
  if (!s || !query || !out) {
    if (s)
      s->error = "null argument";
    return ACZEL_ERR_ARGUMENT;
  }
  *out = nullptr;
  return guarded(s->error, [&] {
    auto v = s->session->check(query);
    const auto &space = *s->session->space();
    *out = dup(json ? aczel::verdict_json(v, space) : aczel::format_verdict(v, space));
    return v.holds() ? ACZEL_OK : ACZEL_REFUTED;
  });
}

aczel_status aczel_run_laws(aczel_session *s, unsigned seed, int json,
                            char **out) {
  if (!s || !out) {
    if (s)
      s->error = "null argument";
    return ACZEL_ERR_ARGUMENT;
  }
  *out = nullptr;
  return guarded(s->error, [&] {
    aczel::LawSuiteOptions opts;
    opts.seed = seed;
    auto report = aczel::run_law_suite(s->session->context(), s->session->ops(), opts);
    *out = dup(json ? report.to_json() : report.to_text());
    return report.ok() ? ACZEL_OK : ACZEL_LAWS_FAILED;
  });
}

aczel_status aczel_dump(aczel_session *s, const char *command, char **out) {
  if (!s || !command || !out) {
    if (s)
      s->error = "null argument";
    return ACZEL_ERR_ARGUMENT;
  }
  *out = nullptr;
  return guarded(s->error, [&] {
    *out = dup(aczel::to_listing(s->session->evaluate(command)));
    return ACZEL_OK;
  });
}

const char *aczel_last_error(const aczel_session *s) {
  return s ? s->error.c_str() : g_error.c_str();
}

void aczel_string_free(char *str) { std::free(str); }

const char *aczel_version(void) { return "1.0.0"; }

} // extern "C"

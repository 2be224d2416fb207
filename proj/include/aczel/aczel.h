#ifndef ACZEL_H
#define ACZEL_H

/* C interface to the trace-semantics engine. Strings returned through
 * `char **out` are owned by the caller and released with
 * aczel_string_free. A session is not safe for concurrent use. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct aczel_session aczel_session;

typedef enum aczel_status {
  ACZEL_OK = 0,
  ACZEL_REFUTED = 1,      /* a refinement or equality does not hold */
  ACZEL_LAWS_FAILED = 2,  /* at least one law failed */
  ACZEL_ERR_PARSE = 3,    /* malformed config, operator table or command */
  ACZEL_ERR_ARGUMENT = 4, /* null pointer, bad depth, other misuse */
  ACZEL_ERR_BUDGET = 5,   /* node or fixed-point budget exhausted */
  ACZEL_ERR_INTERNAL = 6
} aczel_status;

/* Create a session over the space described by `config_text`. `ops_text`
 * may be NULL for the built-in operator table. A depth of 0 takes the
 * `depth` entry of the config's [settings], or 5. On failure *out is NULL
 * and aczel_last_error(NULL) describes the problem. */
aczel_status aczel_session_new(const char *config_text, int depth,
                               const char *ops_text, aczel_session **out);
void aczel_session_free(aczel_session *s);

/* 0 restores the default budget. */
aczel_status aczel_set_budget(aczel_session *s, unsigned long long max_nodes);
int aczel_depth(const aczel_session *s);

/* Decide "c <= d" or "c = d". ACZEL_OK when it holds, ACZEL_REFUTED when
 * not; *out receives the verdict as text or JSON. */
aczel_status aczel_check(aczel_session *s, const char *query, int json,
                         char **out);

/* Run the law suite. ACZEL_OK when nothing failed. */
aczel_status aczel_run_laws(aczel_session *s, unsigned seed, int json,
                            char **out);

/* Listing of the maximal traces of a command. */
aczel_status aczel_dump(aczel_session *s, const char *command, char **out);

/* Message for the last failing call on `s`, or for the last failed
 * aczel_session_new on this thread when `s` is NULL. Never NULL. */
const char *aczel_last_error(const aczel_session *s);

void aczel_string_free(char *str);
const char *aczel_version(void);

#ifdef __cplusplus
}
#endif

#endif

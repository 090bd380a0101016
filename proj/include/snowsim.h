#ifndef SNOWSIM_H
#define SNOWSIM_H

/* C interface to the snowsim simulation library. Everything fallible
 * returns a status code; string results are borrowed from the run object
 * and stay valid until it is destroyed. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Zero is success; the rest mirror the library's error
 * conditions one to one. */
typedef enum snowsim_status {
  SNOWSIM_OK = 0,
  SNOWSIM_INVALID_ARGUMENT = 1,
  SNOWSIM_NO_SUCH_QUBIT = 2,
  SNOWSIM_SELF_FUSION = 3,
  SNOWSIM_EMPTY_INPUT = 4,
  SNOWSIM_NOT_CONNECTED = 5,
  SNOWSIM_TIMEOUT = 6,
  SNOWSIM_INSUFFICIENT_PERIMETER = 7,
  SNOWSIM_NO_FEASIBLE_SCHEDULE = 8,
  SNOWSIM_GRID_CAPPED = 9,
  SNOWSIM_NO_TRIALS = 10,
  SNOWSIM_INSUFFICIENT_DATA = 11,
  SNOWSIM_INTERNAL = 12
} snowsim_status;

/* Opaque experiment run. */
typedef struct snowsim_run snowsim_run;

/* Creates a run from flat `key = value` configuration text, the same syntax
 * the command-line harness accepts as a config file. '#' starts a comment.
 * On success *out owns the run and must be released with
 * snowsim_run_destroy. On failure *out is NULL. */
int snowsim_run_create(const char* config_text, snowsim_run** out);

/* Executes the configured experiment. Idempotent: after a success, further
 * calls return SNOWSIM_OK without recomputing. */
int snowsim_run_execute(snowsim_run* run);

/* Borrowed result strings; NULL before a successful execute. The SVG is
 * additionally NULL unless the configuration asked for it. */
const char* snowsim_run_trial_csv(const snowsim_run* run);
const char* snowsim_run_summary_csv(const snowsim_run* run);
const char* snowsim_run_svg(const snowsim_run* run);

/* verify-oracle tallies; zero for the other subcommands. */
uint64_t snowsim_run_checks(const snowsim_run* run);
uint64_t snowsim_run_mismatches(const snowsim_run* run);

/* Safe on NULL. */
void snowsim_run_destroy(snowsim_run* run);

/* Message for the most recent failing call on this thread; empty string
 * when the last call succeeded. Never NULL. */
const char* snowsim_last_error(void);

/* Convenience wrapper over the exhaustive measurement-rule sweep: compares
 * the graph rewrite rules against the stabilizer tableau on every connected
 * labeled graph with up to max_n vertices (max_n in [1, 6]). Either out
 * pointer may be NULL. */
int snowsim_verify_oracle(int32_t max_n, uint64_t* checks_out,
                          uint64_t* mismatches_out);

#ifdef __cplusplus
}
#endif

#endif /* SNOWSIM_H */

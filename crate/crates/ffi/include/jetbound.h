#ifndef JETBOUND_H
#define JETBOUND_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum JbCommand {
  JB_COMMAND_EL = 0,
  JB_COMMAND_REL_EULER = 1,
  JB_COMMAND_GREEN = 2,
  JB_COMMAND_CHECK = 3,
} JbCommand;

typedef enum JbStatus {
  JB_STATUS_OK = 0,
  // A report was produced but at least one check failed.
  JB_STATUS_CHECK_FAILED = 1,
  // Malformed problem, expression or argument.
  JB_STATUS_INPUT_ERROR = 2,
  JB_STATUS_NULL_POINTER = 3,
  JB_STATUS_INVALID_UTF8 = 4,
  // A Rust panic was caught at the boundary.
  JB_STATUS_INTERNAL = 5,
} JbStatus;

// Opaque validated problem.
typedef struct JbProblem JbProblem;

// Opaque command result.
typedef struct JbReport JbReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next library call on the same thread.
const char *jb_last_error(void);

// Release a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void jb_string_free(char *s);

// Library version as a static string.
const char *jb_version(void);

// Parse and validate a JSON problem file.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum JbStatus jb_problem_from_json(const char *json, struct JbProblem **out);

// Override the peel strategy: `"default"` or `"alternate"`.
//
// # Safety
// `problem` must be a live handle; `strategy` a NUL-terminated string.
enum JbStatus jb_problem_set_strategy(struct JbProblem *problem, const char *strategy);

// Override the probe count and seed used by `JB_COMMAND_CHECK`.
//
// # Safety
// `problem` must be a live handle.
enum JbStatus jb_problem_set_sampling(struct JbProblem *problem, size_t probes, uint64_t seed);

// # Safety
// `problem` must be NULL or a handle not yet freed.
void jb_problem_free(struct JbProblem *problem);

// Run a command. A report is stored in `out` for both `JB_STATUS_OK` and
// `JB_STATUS_CHECK_FAILED`.
//
// # Safety
// `problem` must be a live handle; `out` must be writable.
enum JbStatus jb_run(const struct JbProblem *problem,
                     enum JbCommand command,
                     struct JbReport **out);

// The report as JSON (same bytes as `jetbound --format json`). Returns
// NULL for a NULL handle.
//
// # Safety
// `report` must be NULL or a live handle.
char *jb_report_json(const struct JbReport *report);

// The report as human-readable text.
//
// # Safety
// `report` must be NULL or a live handle.
char *jb_report_text(const struct JbReport *report);

// Number of Euler-Lagrange components.
//
// # Safety
// `report` must be NULL or a live handle.
size_t jb_report_el_len(const struct JbReport *report);

// Euler-Lagrange component `index` (0-based), or NULL when out of range.
//
// # Safety
// `report` must be NULL or a live handle.
char *jb_report_el(const struct JbReport *report, size_t index);

// Number of natural boundary condition entries.
//
// # Safety
// `report` must be NULL or a live handle.
size_t jb_report_theta_len(const struct JbReport *report);

// Boundary condition entry `index`: writes `k` and `i` and returns the
// expression, or NULL when out of range.
//
// # Safety
// `report` must be NULL or a live handle; `k` and `i` must be writable.
char *jb_report_theta(const struct JbReport *report, size_t index, size_t *k, uint32_t *i);

// Whether every check in the report passed.
//
// # Safety
// `report` must be NULL or a live handle.
bool jb_report_passed(const struct JbReport *report);

// # Safety
// `report` must be NULL or a handle not yet freed.
void jb_report_free(struct JbReport *report);

// Pull an interior expression back to the boundary `x_n = 0`.
//
// # Safety
// `expr` must be a NUL-terminated string; `out` must be writable.
enum JbStatus jb_pullback(size_t n, size_t m, const char *expr, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JETBOUND_H */

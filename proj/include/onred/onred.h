/* C interface to the onred library. All strings are NUL-terminated UTF-8.
 * Functions returning int give an onred_status; on ONRED_USAGE or
 * ONRED_INTERNAL no report is produced and onred_last_error() says why. */
#ifndef ONRED_H
#define ONRED_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ONRED_API __declspec(dllexport)
#else
#define ONRED_API __attribute__((visibility("default")))
#endif

typedef enum onred_status {
  ONRED_OK = 0,       /* everything checked passed */
  ONRED_FAILED = 1,   /* a verification condition failed; the report says which */
  ONRED_USAGE = 2,    /* bad arguments, parse error, invalid instance, cap exceeded */
  ONRED_INTERNAL = 3
} onred_status;

/* Bound value meaning t = inf. */
#define ONRED_T_INF 0

typedef struct onred_instance onred_instance;
typedef struct onred_report onred_report;

/* Message of the last failed call on this thread, "" if none. */
ONRED_API const char* onred_last_error(void);

/* Parses instance text. A syntactically valid but inadmissible instance is
 * returned (ONRED_OK) with onred_instance_valid() == 0. */
ONRED_API int onred_instance_parse(const char* text, onred_instance** out);
ONRED_API void onred_instance_free(onred_instance* instance);
ONRED_API size_t onred_instance_size(const onred_instance* instance);
ONRED_API const char* onred_instance_problem(const onred_instance* instance);
ONRED_API int onred_instance_valid(const onred_instance* instance);
/* Validity violations, one per line. Owned by the instance. */
ONRED_API const char* onred_instance_violations(const onred_instance* instance);
/* Canonical text. Owned by the instance, valid until it is freed. */
ONRED_API const char* onred_instance_serialize(const onred_instance* instance);

typedef struct onred_verify_options {
  const char* reduction;  /* name, or names joined by '+' */
  int n_max;
  int t;                  /* ONRED_T_INF for unbounded */
  int k;                  /* colours, mcs sources only */
  const char* algorithms; /* "all" or comma-separated; NULL means all */
  const char* grid;       /* alpha/beta grid; NULL means alpha+beta=t */
} onred_verify_options;

typedef struct onred_frontier_options {
  const char* problem;
  const char* algorithm;
  int n_max;
  int t;
  int k;
  const char* grid;  /* "alpha=..;beta=..;gamma=.."; NULL for defaults */
  const char* b_cap; /* rational, NULL means 0 */
} onred_frontier_options;

ONRED_API int onred_evaluate(const onred_instance* instance, const char* algorithm, onred_report** out);
ONRED_API int onred_verify(const onred_verify_options* options, onred_report** out);
ONRED_API int onred_adversary(const char* algorithm, int t, const char* alpha, const char* gamma,
                              const int* n_list, size_t n_count, onred_report** out);
ONRED_API int onred_frontier(const onred_frontier_options* options, onred_report** out);
ONRED_API int onred_hardness_graph(onred_report** out);
/* out_dir NULL or "" prints the corpus into the report instead of writing files. */
ONRED_API int onred_enumerate(const char* problem, int n_max, int t, int k, const char* out_dir,
                              onred_report** out);

ONRED_API const char* onred_report_text(const onred_report* report);
ONRED_API int onred_report_passed(const onred_report* report);
ONRED_API void onred_report_free(onred_report* report);

#ifdef __cplusplus
}
#endif

#endif /* ONRED_H */

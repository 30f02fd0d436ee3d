/* C interface to the ctsum library. */
#ifndef CTSUM_CTSUM_H
#define CTSUM_CTSUM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CTSUM_API __declspec(dllexport)
#else
#define CTSUM_API __attribute__((visibility("default")))
#endif

/* Return codes; they double as process exit codes of the command-line tool. */
typedef enum {
  CTSUM_OK = 0,
  CTSUM_INVALID_ARGUMENT = 1,
  CTSUM_PARSE_ERROR = 2,
  CTSUM_INCOMPATIBLE_TERM = 3,
  CTSUM_ORDER_BOUND_EXCEEDED = 4,
  CTSUM_INTERNAL_ERROR = 5
} ctsum_status;

typedef enum { CTSUM_SHIFT = 0, CTSUM_Q = 1 } ctsum_case;

typedef enum {
  CTSUM_CERTIFICATE_NONE = 0,
  CTSUM_CERTIFICATE_TAGGED = 1,
  CTSUM_CERTIFICATE_NORMALIZED = 2
} ctsum_certificate_mode;

typedef struct ctsum_job ctsum_job;
typedef struct ctsum_result ctsum_result;

CTSUM_API const char* ctsum_version(void);

/* Message of the last failing call on this thread, or "". */
CTSUM_API const char* ctsum_last_error(void);

CTSUM_API ctsum_job* ctsum_job_new(void);
CTSUM_API void ctsum_job_free(ctsum_job* job);
CTSUM_API ctsum_status ctsum_job_set_case(ctsum_job* job, ctsum_case c);
CTSUM_API ctsum_status ctsum_job_add_param(ctsum_job* job, const char* name);
CTSUM_API ctsum_status ctsum_job_set_term(ctsum_job* job, const char* expr);
CTSUM_API ctsum_status ctsum_job_set_quotients(ctsum_job* job, const char* quotient_x, const char* quotient_y);
CTSUM_API ctsum_status ctsum_job_set_max_order(ctsum_job* job, int max_order);
CTSUM_API ctsum_status ctsum_job_set_certificate(ctsum_job* job, ctsum_certificate_mode mode);
CTSUM_API ctsum_status ctsum_job_set_verify(ctsum_job* job, int verify);

/* Runs the job. *out receives a result handle even when the status is not
   CTSUM_OK, so that the report can be printed; free it with ctsum_result_free. */
CTSUM_API ctsum_status ctsum_run(const ctsum_job* job, ctsum_result** out);
CTSUM_API void ctsum_result_free(ctsum_result* r);
CTSUM_API ctsum_status ctsum_result_status(const ctsum_result* r);
/* Telescoper order, or -1 if none was found. */
CTSUM_API int ctsum_result_order(const ctsum_result* r);
CTSUM_API int ctsum_result_summable(const ctsum_result* r);
/* Borrowed strings, valid until ctsum_result_free. */
CTSUM_API const char* ctsum_result_json(const ctsum_result* r);
CTSUM_API const char* ctsum_result_text(const ctsum_result* r);

/* Term expression of a benchmark instance; free with ctsum_string_free. */
CTSUM_API ctsum_status ctsum_bench_term(int d, int alpha, int lambda, int mu, uint64_t seed, char** out);
/* Runs one benchmark instance with and without certificates; JSON object in *out. */
CTSUM_API ctsum_status ctsum_bench_run(int d, int alpha, int lambda, int mu, uint64_t seed, char** out);
/* Runs a line-delimited fixture file; JSON summary in *out. CTSUM_OK iff all pass. */
CTSUM_API ctsum_status ctsum_run_corpus(const char* path, char** out);
CTSUM_API void ctsum_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif

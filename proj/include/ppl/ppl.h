/* C interface to the pencil library.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Strings returned through `char**` are heap allocated and
 * must be released with ppl_string_free. On failure a function returns a
 * nonzero status and ppl_last_error() describes the failure (thread-local,
 * valid until the next call on the same thread).
 */
#ifndef PPL_PPL_H
#define PPL_PPL_H

#include <stddef.h>

#if defined(_WIN32)
#define PPL_API __declspec(dllexport)
#else
#define PPL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ppl_status {
  PPL_OK = 0,
  PPL_ERR_USAGE = 1,
  PPL_ERR_PRECONDITION = 2,
  PPL_ERR_LOOKUP = 3,
  PPL_ERR_PARSE = 4,
  PPL_ERR_VALIDATION = 5,
  PPL_ERR_INTEGRITY = 6,
  PPL_ERR_SINGULAR = 7,
  PPL_ERR_NON_TERMINATION = 8,
  PPL_ERR_SEMISIMPLICITY = 9,
  PPL_ERR_NO_DISPERSIONLESS_LIMIT = 10,
  PPL_ERR_GRADING = 11,
  PPL_ERR_INTERNAL = 12
} ppl_status;

typedef enum ppl_format { PPL_FORMAT_TEXT = 0, PPL_FORMAT_JSON = 1, PPL_FORMAT_LATEX = 2 } ppl_format;

typedef struct ppl_algebra ppl_algebra;
typedef struct ppl_pencil ppl_pencil;
typedef struct ppl_reduced ppl_reduced;

typedef struct ppl_sample_options {
  int samples;
  unsigned long long seed;
  int order;      /* p-order of the root expansions */
  double tol;
  int max_order;  /* Neumann steps allowed when a reduction is needed */
} ppl_sample_options;

PPL_API const char* ppl_version(void);
PPL_API const char* ppl_last_error(void);
PPL_API const char* ppl_status_name(ppl_status status);
PPL_API void ppl_string_free(char* s);

/* Working precision (decimal digits) of the numeric paths. */
PPL_API ppl_status ppl_set_digits(int digits);
PPL_API int ppl_get_digits(void);

PPL_API ppl_status ppl_parse_format(const char* name, ppl_format* out);

/* "A3", "B2", "so5", ... */
PPL_API ppl_status ppl_algebra_new(const char* descriptor, ppl_algebra** out);
PPL_API void ppl_algebra_free(ppl_algebra* alg);
PPL_API ppl_status ppl_algebra_info(const ppl_algebra* alg, int* rank, int* dim, int* h, int* h_vee);
PPL_API ppl_status ppl_algebra_render(const ppl_algebra* alg, ppl_format format, char** out);

/* Newline-separated builtin pencil names. */
PPL_API ppl_status ppl_builtin_names(char** out);

/* Builtin name, "scalar:c=<expr>", "ds:<algebra>" or a path to a JSON file. */
PPL_API ppl_status ppl_pencil_load(const char* target, ppl_pencil** out);
PPL_API ppl_status ppl_pencil_from_json(const char* json, ppl_pencil** out);
PPL_API void ppl_pencil_free(ppl_pencil* pencil);
/* Replaces the gauge with the one read from a JSON file. */
PPL_API ppl_status ppl_pencil_set_gauge_file(ppl_pencil* pencil, const char* path);
PPL_API ppl_status ppl_pencil_fields(const ppl_pencil* pencil, size_t* out);
PPL_API ppl_status ppl_pencil_render(const ppl_pencil* pencil, ppl_format format, char** out);
/* Sets *p1_ok to [L_Z P1 = 0] and *p2_ok to [L_Z P2 = P1]. */
PPL_API ppl_status ppl_pencil_check_exact(const ppl_pencil* pencil, int* p1_ok, int* p2_ok);

PPL_API ppl_status ppl_reduce(const ppl_pencil* pencil, int max_order, ppl_reduced** out);
PPL_API void ppl_reduced_free(ppl_reduced* reduced);
PPL_API ppl_status ppl_reduced_render(const ppl_reduced* reduced, ppl_format format, char** out);
/* det_delta may be NULL. */
PPL_API ppl_status ppl_reduced_schur(const ppl_reduced* reduced, int* factorizes, int* lambda_free, char** det_delta);

PPL_API void ppl_sample_options_default(ppl_sample_options* opt);
PPL_API ppl_status ppl_invariants(const ppl_pencil* pencil, const ppl_sample_options* opt, ppl_format format,
                                  char** out);

/* Newline-separated suite names. */
PPL_API ppl_status ppl_suite_names(char** out);
/* Runs one suite, or every suite when `suite` is "all". *passed is 1 when
 * every non-informational check passed. */
PPL_API ppl_status ppl_verify(const char* suite, int max_rank, const ppl_sample_options* opt, ppl_format format,
                              char** out, int* passed);

#ifdef __cplusplus
}
#endif

#endif

/*
 * inversio C API.
 *
 * Every operation returns an inv_status. On success the result is returned
 * through an opaque inv_result handle owned by the caller and released with
 * inv_result_free(). On failure no handle is produced and
 * inv_last_error() describes the problem (thread-local, valid until the next
 * call on the same thread).
 *
 * Rationals cross this boundary as text: "a/b", integers, or decimal
 * literals ("0.6", "1e-3") on input; always "num/den" in lowest terms on
 * output.
 */
#ifndef INVERSIO_H
#define INVERSIO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define INV_API __declspec(dllexport)
#else
#define INV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum inv_status {
  INV_OK = 0,
  INV_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad handle or index */
  INV_ERR_PARSE = 2,            /* malformed rational or scenario JSON */
  INV_ERR_DOMAIN = 3,
  INV_ERR_UNSUPPORTED = 4,
  INV_ERR_NOT_FOUND = 5,
  INV_ERR_NUMERICAL = 6,
  INV_ERR_RESOURCE = 7,
  INV_ERR_INTERNAL = 8
} inv_status;

typedef enum inv_mode {
  INV_MODE_EXACT = 0,
  INV_MODE_FLOAT = 1,
  /* Exact where it is cheap for the given inputs, float otherwise. */
  INV_MODE_AUTO = 2
} inv_mode;

typedef enum inv_value_kind {
  INV_KIND_NULL = 0,
  INV_KIND_RATIONAL = 1,
  INV_KIND_FLOAT = 2,
  INV_KIND_INTEGER = 3,
  INV_KIND_BOOL = 4,
  INV_KIND_TEXT = 5
} inv_value_kind;

typedef struct inv_result inv_result;

/* Row index selecting the summary fields rather than a table row. */
#define INV_SUMMARY ((size_t)-1)

INV_API const char* inv_version(void);
INV_API const char* inv_status_name(inv_status status);
INV_API const char* inv_last_error(void);

/* ---- result handles ---------------------------------------------------- */

INV_API void inv_result_free(inv_result* result);
/* "exact" or "float". */
INV_API const char* inv_result_mode(const inv_result* result);
INV_API size_t inv_result_row_count(const inv_result* result);
INV_API size_t inv_result_field_count(const inv_result* result, size_t row);
INV_API const char* inv_result_field_name(const inv_result* result, size_t row, size_t index);
INV_API inv_value_kind inv_result_field_kind(const inv_result* result, size_t row, size_t index);
/* Canonical text: "num/den", decimal integer, "%.17g", "true"/"false", "" for null. */
INV_API const char* inv_result_field_text(const inv_result* result, size_t row, size_t index);
/* Nearest double (NaN for text and null fields). */
INV_API double inv_result_field_double(const inv_result* result, size_t row, size_t index);
/* Looks up a summary field by name; either output pointer may be NULL. */
INV_API inv_status inv_result_lookup(const inv_result* result, const char* name,
                                     const char** text, double* value);
/* Structured JSON attachment (trichotomy report), or NULL. */
INV_API const char* inv_result_payload(const inv_result* result);

/* ---- binomial kernel --------------------------------------------------- */

INV_API inv_status inv_pmf(uint64_t n, const char* theta, uint64_t k, inv_mode mode,
                           inv_result** out);
INV_API inv_status inv_interval_prob(uint64_t n, const char* theta, uint64_t lo, uint64_t hi,
                                     inv_mode mode, inv_result** out);
INV_API inv_status inv_deviation_prob(uint64_t n, const char* theta, const char* eps,
                                      inv_mode mode, inv_result** out);

/* ---- Bernoulli's direct problem ---------------------------------------- */

INV_API inv_status inv_bernoulli_bound(uint64_t r, uint64_t s, uint64_t c, inv_result** out);
INV_API inv_status inv_bernoulli_bound_theta(const char* theta, const char* eps, uint64_t c,
                                             inv_result** out);
INV_API inv_status inv_odds_from_target(const char* target, uint64_t* odds);
/* n_max = 0 selects the default bound (1,000,000). */
INV_API inv_status inv_search_n(const char* theta, const char* eps, const char* target,
                                uint64_t n_max, inv_result** out);

/* ---- normal approximation and the log-factorial series ------------------ */

INV_API inv_status inv_log_factorial(uint64_t n, uint64_t k_terms, inv_result** out);
INV_API inv_status inv_stirling_terms(uint64_t n, uint64_t k_max, inv_result** out);
INV_API inv_status inv_middle_term(uint64_t n, inv_result** out);
INV_API inv_status inv_normal_approx(uint64_t n, const char* theta, const char* eps,
                                     int continuity_correction, inv_result** out);

/* ---- Bayes's inverse problem -------------------------------------------- */

INV_API inv_status inv_posterior(const char* a, const char* b, uint64_t p, uint64_t q,
                                 inv_result** out);
INV_API inv_status inv_posterior_interval(const char* a, const char* b, uint64_t p, uint64_t q,
                                          const char* l1, const char* l2, inv_mode mode,
                                          inv_result** out);
INV_API inv_status inv_hartley(const char* a, const char* b, uint64_t p, uint64_t q,
                               const char* eps, inv_mode mode, inv_result** out);
INV_API inv_status inv_incomplete_beta(double x, double a, double b, double* value);

/* ---- runs --------------------------------------------------------------- */

INV_API inv_status inv_run_prob(uint64_t n, uint64_t r, const char* theta, inv_mode mode,
                                inv_result** out);
INV_API inv_status inv_run_prob_bruteforce(uint64_t n, uint64_t r, const char* theta,
                                           inv_result** out);

/* ---- side-by-side comparison -------------------------------------------- */

/* Scenario JSON: {"theta_true": "3/5"|null, "counts": {"p":..,"q":..},
 *  "eps": "1/50", "target": "0.999", "prior": {"a": 1, "b": 1}, "n_max": ..}.
 * The full report is available through inv_result_payload(). */
INV_API inv_status inv_trichotomy(const char* scenario_json, inv_result** out);

#ifdef __cplusplus
}
#endif

#endif /* INVERSIO_H */

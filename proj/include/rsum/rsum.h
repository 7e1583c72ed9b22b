#ifndef RSUM_RSUM_H
#define RSUM_RSUM_H

/* C interface to the rsum library: exact probabilities, certificates and
 * sweeps for Rademacher sums. Results that are documents (JSON or CSV) are
 * returned as heap strings owned by the caller and released with
 * rsum_string_free. On failure a function returns a nonzero status and
 * rsum_last_error() describes it (per thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(RSUM_BUILDING_LIBRARY)
#define RSUM_API __attribute__((visibility("default")))
#else
#define RSUM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rsum_status {
  RSUM_OK = 0,
  RSUM_INVALID_INPUT = 1,
  RSUM_DEGENERATE_VECTOR = 2,
  RSUM_INSTANCE_TOO_LARGE = 3,
  RSUM_WRONG_CASE = 4,
  RSUM_DOMAIN_ERROR = 5,
  RSUM_OUT_OF_RANGE = 6,
  /* A soundness check failed. The output document is still produced. */
  RSUM_SOUNDNESS_VIOLATION = 7,
  RSUM_INTERNAL = 8
} rsum_status;

typedef enum rsum_mode {
  RSUM_MODE_AUTO = 0, /* "sq:" lists are exact, decimal lists are float */
  RSUM_MODE_EXACT = 1,
  RSUM_MODE_FLOAT = 2
} rsum_mode;

typedef enum rsum_exact_check {
  RSUM_CHECK_NEVER = 0,
  RSUM_CHECK_ALWAYS = 1,
  RSUM_CHECK_AUTO = 2 /* whenever n is within the meet-in-the-middle limit */
} rsum_exact_check;

typedef struct rsum_options {
  unsigned full_limit; /* plain enumeration limit, default 24 */
  unsigned mitm_limit; /* meet-in-the-middle limit, default 40 */
  unsigned threads;    /* 0: RSUM_THREADS or 1 */
} rsum_options;

/* Opaque canonical weight vector. Immutable; safe to share across threads. */
typedef struct rsum_weights rsum_weights;

RSUM_API const char* rsum_version(void);
RSUM_API const char* rsum_last_error(void);
RSUM_API const char* rsum_status_name(rsum_status status);
RSUM_API void rsum_options_default(rsum_options* options);
RSUM_API void rsum_string_free(char* text);

/* Grammar: "0.8,0.6" (float) or "sq:16/25,9/25" (exact, squared weights). */
RSUM_API rsum_status rsum_weights_parse(const char* text, rsum_mode mode, rsum_weights** out);
RSUM_API rsum_status rsum_weights_from_doubles(const double* values, size_t n, rsum_weights** out);
RSUM_API void rsum_weights_free(rsum_weights* weights);
RSUM_API size_t rsum_weights_size(const rsum_weights* weights);
RSUM_API rsum_mode rsum_weights_mode(const rsum_weights* weights);
/* x_i rounded to double; 0 past the end. */
RSUM_API double rsum_weights_get(const rsum_weights* weights, size_t i);
/* 1 when x1 + x2 > 1, else 2. */
RSUM_API int rsum_weights_case(const rsum_weights* weights);
/* Serialized canonical form, accepted again by rsum_weights_parse. */
RSUM_API rsum_status rsum_weights_string(const rsum_weights* weights, char** out);

/* t is a decimal or rational string; NULL means 1. probability may be NULL. */
RSUM_API rsum_status rsum_threshold_json(const rsum_weights* weights, const char* t, int strict,
                                         const rsum_options* options, char** json, double* probability);
RSUM_API rsum_status rsum_distribution_csv(const rsum_weights* weights, const rsum_options* options, char** csv);
RSUM_API rsum_status rsum_partition_json(const rsum_weights* weights, const rsum_options* options, char** json);
RSUM_API rsum_status rsum_certify_json(const rsum_weights* weights, rsum_exact_check check,
                                       const rsum_options* options, char** json);
RSUM_API rsum_status rsum_hybrid_json(const rsum_weights* weights, const rsum_options* options, char** json);
RSUM_API rsum_status rsum_decomposition_json(const rsum_weights* weights, const rsum_options* options,
                                             char** json);
RSUM_API rsum_status rsum_monte_carlo_json(const rsum_weights* weights, const char* t, uint64_t samples,
                                           uint64_t seed, double confidence, char** json);
/* csv receives the per-k table, violations a JSON array (may be NULL). */
RSUM_API rsum_status rsum_lemmas(unsigned k_max, size_t grid_points, char** csv, char** violations);
RSUM_API rsum_status rsum_search_json(unsigned n, uint64_t budget, uint64_t seed, const rsum_options* options,
                                      char** json);

RSUM_API rsum_status rsum_g(unsigned k, double x, double* out);
RSUM_API rsum_status rsum_h(unsigned k, double x, double* out);

#ifdef __cplusplus
}
#endif

#endif

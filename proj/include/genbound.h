/* Copyright 2026 the genbound authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* genbound C API: exact generalization-error bounds on finite learning
 * scenarios and the Gaussian location model.
 *
 * Conventions: every fallible call returns a gb_status; GB_OK means the out
 * parameters are valid. On failure a human-readable message is copied into
 * the caller-provided (err, err_len) buffer when one is given. Objects are
 * opaque handles released with their matching _free function; strings
 * returned through char** are heap-allocated and released with
 * gb_string_free. Handles are immutable after creation and safe to share
 * across threads.
 */

#ifndef GENBOUND_H_
#define GENBOUND_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gb_status {
  GB_OK = 0,
  GB_ERR_CHECK_FAILED = 1, /* a verification suite reported a violation */
  GB_ERR_PARSE = 2,        /* malformed input document or value */
  GB_ERR_INVARIANT = 3,    /* a declared invariant failed validation */
  GB_ERR_USAGE = 4,        /* bad arguments or preconditions */
  GB_ERR_INTERNAL = 5
} gb_status;

typedef struct gb_scenario gb_scenario; /* a parsed learning scenario */
typedef struct gb_report gb_report;     /* exact gen error + bound values */

const char* gb_version(void);

void gb_string_free(char* s);

/* ---- scenarios and bound reports ------------------------------------- */

/* Parses the JSON scenario format (docs/scenario_schema.md). `id` is the
 * fallback name used in reports when the document carries no id field;
 * NULL falls back to "scenario". */
gb_status gb_scenario_from_json(const char* json_text, const char* id, gb_scenario** out,
                                char* err, size_t err_len);
void gb_scenario_free(gb_scenario* scenario);

/* 1 for the standard setting, 0 for the randomized-subsample setting. */
int gb_scenario_is_standard(const gb_scenario* scenario);

/* Exact expected generalization error (standard) or empirical
 * generalization error (randomized-subsample) by exhaustive enumeration. */
gb_status gb_scenario_gen_error(const gb_scenario* scenario, double* out, char* err,
                                size_t err_len);

gb_status gb_report_compute(const gb_scenario* scenario, gb_report** out, char* err,
                            size_t err_len);
void gb_report_free(gb_report* report);

gb_status gb_report_to_json(const gb_report* report, char** out, char* err, size_t err_len);
gb_status gb_report_to_csv(const gb_report* report, char** out, char* err, size_t err_len);

/* Number of bounds and access by index; returns GB_ERR_USAGE out of range.
 * `name` receives a pointer owned by the report. */
size_t gb_report_bound_count(const gb_report* report);
gb_status gb_report_bound(const gb_report* report, size_t index, const char** name,
                          double* value, char* err, size_t err_len);
double gb_report_gen_error(const gb_report* report);

/* ---- direct numeric entry points -------------------------------------- */

/* Psi(x) = sqrt(min{x/2, 1 - exp(-x)}); the Pinsker/BH conversion. */
gb_status gb_psi(double x, double* out, char* err, size_t err_len);

/* The positive root of x/2 = 1 - exp(-x). */
double gb_pinsker_bh_crossover(void);

/* Divergences between two length-k probability vectors on one support. */
gb_status gb_total_variation(const double* p, const double* q, size_t k, double* out,
                             char* err, size_t err_len);
gb_status gb_kl_divergence(const double* p, const double* q, size_t k, double* out, char* err,
                           size_t err_len);

/* Exact Wasserstein-1 under a row-major k x k distance matrix. If `plan` is
 * non-NULL it receives the optimal coupling (row-major, k*k entries). */
gb_status gb_wasserstein1(const double* p, const double* q, const double* dist, size_t k,
                          double* out, double* plan, char* err, size_t err_len);

/* ---- Gaussian location model ------------------------------------------ */

/* Closed forms; `which` selects the curve. */
typedef enum gb_glm_curve {
  GB_GLM_GEN_EXACT = 0,
  GB_GLM_BOUND_FULL = 1,
  GB_GLM_BOUND_SINGLE = 2,
  GB_GLM_BOUND_SUBSET = 3,
  GB_GLM_BOUND_ISMI = 4 /* d = 1 only */
} gb_glm_curve;

gb_status gb_glm_value(gb_glm_curve which, int d, double sigma2, int n, double* out, char* err,
                       size_t err_len);

/* Monte Carlo estimate of the generalization error with its standard error;
 * deterministic for a fixed seed. */
gb_status gb_glm_monte_carlo(int d, double sigma2, int n, long trials, uint64_t seed,
                             double* estimate, double* std_error, char* err, size_t err_len);

/* The full sweep as CSV with header
 * d,sigma2,n,gen_exact,gen_mc,gen_mc_se,bound_full,bound_single,bound_subset,bound_ismi */
gb_status gb_glm_sweep_csv(int d, double sigma2, const int* n_values, size_t n_count,
                           long trials, uint64_t seed, char** out_csv, char* err,
                           size_t err_len);

/* ---- verification suites ----------------------------------------------- */

/* suite: "orderings", "mi", "validity", "appendix-h" or "all". Emits one
 * JSON line per check into *out_jsonl and sets *all_passed. Returns
 * GB_ERR_CHECK_FAILED when a check fails (out parameters stay valid).
 * threads <= 1 runs sequentially. inject_mutation deliberately deflates one
 * bound by 0.9 so the validity suite must catch it. */
gb_status gb_verify_run(const char* suite, long trials, uint64_t seed, int inject_mutation,
                        int threads, char** out_jsonl, int* all_passed, char* err,
                        size_t err_len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GENBOUND_H_ */

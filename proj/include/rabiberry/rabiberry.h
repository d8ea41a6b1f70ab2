/*
 * rabiberry.h: C interface to the spin-boson eigen/Berry-phase solvers.
 *
 * Every function returns an rb_status. On failure the thread-local message from
 * rb_last_error() describes the cause. Handles are opaque and must be released
 * with the matching *_destroy function. All functions are safe to call
 * concurrently on distinct or shared const handles.
 */
#ifndef RABIBERRY_H
#define RABIBERRY_H

#include <stddef.h>

#if defined(RB_BUILDING_LIBRARY)
#define RB_API __attribute__((visibility("default")))
#else
#define RB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rb_status {
    RB_OK = 0,
    RB_ERR_INVALID_ARGUMENT = 1,
    RB_ERR_NOT_CONVERGED = 2,
    RB_ERR_PRECISION = 3,
    RB_ERR_PARITY = 4,
    RB_ERR_ALIASING = 5,
    RB_ERR_BUFFER_TOO_SMALL = 6,
    RB_ERR_INTERNAL = 7
} rb_status;

typedef enum rb_parity { RB_PARITY_EVEN = 0, RB_PARITY_ODD = 1 } rb_parity;

typedef enum rb_branch { RB_BRANCH_MINUS = 0, RB_BRANCH_PLUS = 1 } rb_branch;

typedef enum rb_model { RB_MODEL_RWA = 0, RB_MODEL_FULL = 1, RB_MODEL_FULLX = 2 } rb_model;

typedef enum rb_family {
    RB_FAMILY_GROUND_RWA = 0,
    RB_FAMILY_DRESSED_RWA = 1,
    RB_FAMILY_BEYOND_RWA = 2,
    RB_FAMILY_FOCK = 3
} rb_family;

typedef enum rb_variant {
    RB_VARIANT_STANDARD = 0,
    RB_VARIANT_FLIPPED_EVEN_SIGN = 1,
    RB_VARIANT_PRINTED_ETA = 2
} rb_variant;

typedef struct rb_params rb_params;
typedef struct rb_report rb_report;

/* One eigenstate summary. `n`/`branch` are meaningful for dressed RWA levels,
 * `index` counts levels of fixed parity in ascending energy. */
typedef struct rb_level {
    rb_family family;
    rb_parity parity;
    size_t n;
    rb_branch branch;
    size_t index;
    double energy;
    double berry_phase;
    double mean_boson;
    int converged;
} rb_level;

typedef struct rb_first_order {
    rb_parity parity;
    size_t k;
    rb_branch branch;
    double energy;
    double mixing;
    double f_k;
    double f_k1;
    double berry_phase;
} rb_first_order;

typedef struct rb_report_row {
    const char* quantity; /* owned by the report */
    double value_a;
    double value_b;
    double abs_diff;
    double tolerance; /* +inf for informational rows */
    int pass;
} rb_report_row;

typedef struct rb_crosscheck_options {
    size_t n_cut;
    size_t max_index;
    size_t levels_per_parity;
    size_t wilson_steps;
    rb_variant variant;
} rb_crosscheck_options;

RB_API const char* rb_version(void);
RB_API const char* rb_last_error(void);
RB_API const char* rb_status_string(rb_status status);

RB_API rb_status rb_params_create(double omega, double omega0, double g, rb_params** out);
RB_API void rb_params_destroy(rb_params* params);
RB_API rb_status rb_params_get(const rb_params* params, double* omega, double* omega0, double* g,
                               double* delta, double* alpha);

RB_API rb_status rb_log_factorial(size_t n, double* out);
RB_API rb_status rb_dmn(double alpha, size_t m, size_t n, double* out);

/* Closed-form RWA levels for n = 0..n_max (2 n_max + 3 entries), ascending. */
RB_API rb_status rb_rwa_spectrum(const rb_params* params, size_t n_max, rb_level* out,
                                 size_t capacity, size_t* written);
/* family must be RB_FAMILY_GROUND_RWA or RB_FAMILY_DRESSED_RWA. */
RB_API rb_status rb_rwa_berry_phase(const rb_params* params, rb_family family, size_t n,
                                    rb_branch branch, double* out);

/* Lowest `count` levels of one parity block at truncation M. require_converged != 0
 * turns a heavy tail into RB_ERR_NOT_CONVERGED. */
RB_API rb_status rb_solve_displaced(const rb_params* params, rb_parity parity, size_t max_index,
                                    size_t count, int require_converged, rb_level* out);
RB_API rb_status rb_converge_truncation(const rb_params* params, rb_parity parity, size_t count,
                                        double tol, size_t* max_index);
RB_API rb_status rb_first_order_solution(const rb_params* params, rb_parity parity, size_t k,
                                         rb_branch branch, rb_first_order* out);
/* max_index == 0 selects the first-order ground state. */
RB_API rb_status rb_vibp_ground(const rb_params* params, size_t max_index, double* out);

RB_API rb_status rb_oracle_spectrum(const rb_params* params, rb_model model, size_t n_cut,
                                    size_t count, rb_level* out);
RB_API rb_status rb_oracle_wilson(const rb_params* params, rb_model model, size_t n_cut,
                                  size_t level, size_t steps, double* out);

RB_API void rb_crosscheck_options_default(rb_crosscheck_options* options);
RB_API rb_status rb_crosscheck(const rb_params* params, const rb_crosscheck_options* options,
                               rb_report** out);
RB_API void rb_report_destroy(rb_report* report);
RB_API size_t rb_report_size(const rb_report* report);
RB_API rb_status rb_report_row_at(const rb_report* report, size_t i, rb_report_row* out);
RB_API int rb_report_all_pass(const rb_report* report);

#ifdef __cplusplus
}
#endif

#endif /* RABIBERRY_H */

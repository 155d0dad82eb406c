/*
 * uqsd — optimal unambiguous discrimination of 2 or 3 pure quantum states.
 *
 * C interface to the solver library: opaque handles, integer status codes,
 * plain-double getters. All handles are created by uqsd_* constructors and
 * released by the matching *_destroy; handles are immutable after creation
 * and safe to share across threads.
 *
 * Complex data crosses this boundary as interleaved (re, im) double pairs.
 * A list of n states of dimension d is n*d pairs, state-major. An n x n
 * matrix is n*n pairs, row-major. All state indices are 0-based.
 *
 * Every fallible function returns uqsd_status; on failure the thread-local
 * message from uqsd_last_error() names the offending field or quantity.
 */

#ifndef UQSD_H
#define UQSD_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uqsd_status {
    UQSD_OK = 0,
    UQSD_ERR_DIMENSION_MISMATCH = 1,
    UQSD_ERR_UNNORMALIZED_STATE = 2,
    UQSD_ERR_LINEARLY_DEPENDENT = 3,
    UQSD_ERR_BAD_PRIORS = 4,
    UQSD_ERR_NOT_PSD = 5,
    UQSD_ERR_WRONG_ARITY = 6,
    UQSD_ERR_NOT_EQUILATERAL = 7,
    UQSD_ERR_UNSUPPORTED_COMPLEX_CASE = 8,
    UQSD_ERR_DEGENERATE_REDUCTION = 9,
    UQSD_ERR_TRIANGLE_CLOSURE = 10,
    UQSD_ERR_BAD_ARGUMENT = 11,
    UQSD_ERR_INTERNAL = 12
} uqsd_status;

typedef enum uqsd_branch {
    UQSD_BRANCH_ONE_STATE = 0,
    UQSD_BRANCH_TWO_STATE = 1,
    UQSD_BRANCH_THREE_NEG_GAMMA = 2,
    UQSD_BRANCH_THREE_POS_TRIANGLE = 3,
    UQSD_BRANCH_THREE_POS_NO_TRIANGLE = 4,
    UQSD_BRANCH_COMPLEX_EQUILATERAL = 5
} uqsd_branch;

typedef enum uqsd_gamma_class {
    UQSD_GAMMA_NEGATIVE_OR_ZERO = 0,
    UQSD_GAMMA_POSITIVE = 1,
    UQSD_GAMMA_COMPLEX = 2
} uqsd_gamma_class;

typedef struct uqsd_ensemble uqsd_ensemble;
typedef struct uqsd_solution uqsd_solution;
typedef struct uqsd_certificate uqsd_certificate;
typedef struct uqsd_povm uqsd_povm;
typedef struct uqsd_oracle_result uqsd_oracle_result;

typedef struct uqsd_phase_profile {
    double gamma_re;
    double gamma_im;
    double gamma_modulus;
    double theta; /* gamma = |gamma| e^{3 i theta}, theta in [0, 2pi/3) */
    int32_t gamma_class;
    double overlaps[3]; /* |N01|, |N12|, |N20| */
    double alphas[3];   /* valid only when has_alphas != 0 */
    int32_t has_alphas;
} uqsd_phase_profile;

typedef struct uqsd_reduction_record {
    int32_t dropped_index; /* index in the original ensemble */
    int32_t n_kept;
    double scale_factor;
    double reduced_priors[3];
    double reduced_overlaps[3];
    int32_t n_overlaps;
} uqsd_reduction_record;

typedef struct uqsd_certificate_residuals {
    double psd;           /* smallest eigenvalue of Y; pass when >= -1e-9 */
    double diagonal;      /* max |Y_ii - prior_i|; pass when <= 1e-10 */
    double attainability; /* max entry of (N - X^R) Y; pass when <= 1e-9 */
    double gap;           /* |tr(YN) - relaxed optimum|; pass when <= 1e-9 */
} uqsd_certificate_residuals;

typedef struct uqsd_verification_report {
    uqsd_certificate_residuals residuals;
    int32_t certified;
    double primal_dual_gap; /* tr(YN) - p_max; 0 unless a reduction occurred */
} uqsd_verification_report;

typedef struct uqsd_povm_residuals {
    double completeness;
    double no_error;
    double positivity;
} uqsd_povm_residuals;

const char* uqsd_version(void);
const char* uqsd_status_name(uqsd_status s);
const char* uqsd_branch_name(uqsd_branch b);
const char* uqsd_gamma_class_name(uqsd_gamma_class c);

/* Message for the most recent failure on the calling thread. */
const char* uqsd_last_error(void);

/* ---- ensembles ---------------------------------------------------- */

/* states_reim: 2*n_states*dim doubles; priors: n_states doubles, > 0,
 * summing to 1 within 1e-9. States must be unit norm within 1e-9 and
 * linearly independent. n_states in 1..4, dim in 1..4. */
uqsd_status uqsd_ensemble_create(int32_t n_states, int32_t dim,
                                 const double* states_reim, const double* priors,
                                 uqsd_ensemble** out);

/* gram_reim: 2*n*n doubles, row-major, Hermitian with unit diagonal.
 * State vectors reproducing the matrix are synthesized internally. */
uqsd_status uqsd_ensemble_create_from_gram(int32_t n_states, const double* gram_reim,
                                           const double* priors, uqsd_ensemble** out);

void uqsd_ensemble_destroy(uqsd_ensemble* e);
int32_t uqsd_ensemble_size(const uqsd_ensemble* e);
int32_t uqsd_ensemble_dim(const uqsd_ensemble* e);

/* out: 2*n*n doubles. */
uqsd_status uqsd_ensemble_gram(const uqsd_ensemble* e, double* out);

/* Three-state ensembles only. */
uqsd_status uqsd_ensemble_phase_profile(const uqsd_ensemble* e,
                                        uqsd_phase_profile* out);

/* ---- closed-form solver ------------------------------------------- */

/* UQSD_ERR_UNSUPPORTED_COMPLEX_CASE when the phase invariant is complex
 * and the equal-lengths condition fails; use the oracle then. */
uqsd_status uqsd_solve(const uqsd_ensemble* e, uqsd_solution** out);

void uqsd_solution_destroy(uqsd_solution* s);
int32_t uqsd_solution_size(const uqsd_solution* s);
double uqsd_solution_p_max(const uqsd_solution* s);
double uqsd_solution_d_min(const uqsd_solution* s);
uqsd_branch uqsd_solution_branch(const uqsd_solution* s);

/* out must hold uqsd_solution_size(s) doubles. */
uqsd_status uqsd_solution_x(const uqsd_solution* s, double* out, int32_t capacity);
uqsd_status uqsd_solution_x_relaxed(const uqsd_solution* s, double* out,
                                    int32_t capacity);

int32_t uqsd_solution_reduction_count(const uqsd_solution* s);
uqsd_status uqsd_solution_reduction_record(const uqsd_solution* s, int32_t i,
                                           uqsd_reduction_record* out);

/* ---- dual certificate --------------------------------------------- */

uqsd_status uqsd_certificate_build(const uqsd_ensemble* e, const uqsd_solution* s,
                                   uqsd_certificate** out);
void uqsd_certificate_destroy(uqsd_certificate* c);
double uqsd_certificate_d_value(const uqsd_certificate* c);
uqsd_status uqsd_certificate_residuals_get(const uqsd_certificate* c,
                                           uqsd_certificate_residuals* out);

/* out: 2*n*n doubles, the certificate matrix Y. */
uqsd_status uqsd_certificate_y(const uqsd_certificate* c, double* out,
                               int32_t capacity_pairs);

/* Recomputes every residual from scratch and applies the fixed
 * thresholds; failures are reported in the result, not as an error. */
uqsd_status uqsd_verify(const uqsd_ensemble* e, const uqsd_solution* s,
                        const uqsd_certificate* c, uqsd_verification_report* out);

/* ---- numeric oracle ------------------------------------------------ */

/* Derivative-free grid maximizer, independent of the closed forms.
 * target_accuracy >= 1e-8. */
uqsd_status uqsd_oracle(const uqsd_ensemble* e, double target_accuracy,
                        uqsd_oracle_result** out);

void uqsd_oracle_result_destroy(uqsd_oracle_result* r);
int32_t uqsd_oracle_result_size(const uqsd_oracle_result* r);
double uqsd_oracle_result_p(const uqsd_oracle_result* r);
double uqsd_oracle_result_grid_spacing(const uqsd_oracle_result* r);
int32_t uqsd_oracle_result_refinement_rounds(const uqsd_oracle_result* r);
uqsd_status uqsd_oracle_result_x(const uqsd_oracle_result* r, double* out,
                                 int32_t capacity);

/* Upper bound tr(YN) from a dual-feasible Y; sandwiches the oracle's p. */
uqsd_status uqsd_oracle_dual_bound(const uqsd_ensemble* e,
                                   const uqsd_oracle_result* r, double* out);

/* ---- explicit measurement ------------------------------------------ */

uqsd_status uqsd_povm_build(const uqsd_ensemble* e, const uqsd_solution* s,
                            uqsd_povm** out);
void uqsd_povm_destroy(uqsd_povm* p);

/* n_states + 1 elements; index n_states is the inconclusive element. */
int32_t uqsd_povm_element_count(const uqsd_povm* p);
int32_t uqsd_povm_element_dim(const uqsd_povm* p);

/* out: 2*dim*dim doubles, row-major. */
uqsd_status uqsd_povm_element(const uqsd_povm* p, int32_t index, double* out,
                              int32_t capacity_pairs);
uqsd_status uqsd_povm_residuals_get(const uqsd_povm* p, uqsd_povm_residuals* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* UQSD_H */

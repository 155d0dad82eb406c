#include "uqsd.h"

#include "certificate.hpp"
#include "ensemble.hpp"
#include "oracle.hpp"
#include "povm.hpp"
#include "solver.hpp"

#include <cmath>
#include <cstring>
#include <string>

using namespace uqsd;

struct uqsd_ensemble {
    Ensemble value;
};
struct uqsd_solution {
    Solution value;
};
struct uqsd_certificate {
    DualCertificate value;
};
struct uqsd_povm {
    Povm value;
};
struct uqsd_oracle_result {
    OracleResult value;
};

namespace {

thread_local std::string g_last_error;

uqsd_status map_code(Error e) {
    switch (e) {
        case Error::DimensionMismatch: return UQSD_ERR_DIMENSION_MISMATCH;
        case Error::UnnormalizedState: return UQSD_ERR_UNNORMALIZED_STATE;
        case Error::LinearlyDependent: return UQSD_ERR_LINEARLY_DEPENDENT;
        case Error::BadPriors: return UQSD_ERR_BAD_PRIORS;
        case Error::NotPsd: return UQSD_ERR_NOT_PSD;
        case Error::WrongArity: return UQSD_ERR_WRONG_ARITY;
        case Error::NotEquilateral: return UQSD_ERR_NOT_EQUILATERAL;
        case Error::UnsupportedComplexCase: return UQSD_ERR_UNSUPPORTED_COMPLEX_CASE;
        case Error::DegenerateReduction: return UQSD_ERR_DEGENERATE_REDUCTION;
        case Error::TriangleClosureFailure: return UQSD_ERR_TRIANGLE_CLOSURE;
        case Error::BadArgument: return UQSD_ERR_BAD_ARGUMENT;
        case Error::Internal: return UQSD_ERR_INTERNAL;
    }
    return UQSD_ERR_INTERNAL;
}

template <typename Fn>
uqsd_status guarded(Fn&& fn) {
    try {
        fn();
        return UQSD_OK;
    } catch (const UqsdError& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return UQSD_ERR_INTERNAL;
    }
}

uqsd_status require(bool ok, const char* message) {
    if (ok) return UQSD_OK;
    g_last_error = message;
    return UQSD_ERR_BAD_ARGUMENT;
}

void write_matrix(const HermitianMatrix& m, double* out) {
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) {
            out[2 * (i * m.dim() + j)] = m(i, j).real();
            out[2 * (i * m.dim() + j) + 1] = m(i, j).imag();
        }
}

} // namespace

extern "C" {

const char* uqsd_version(void) { return "1.0.0"; }

const char* uqsd_status_name(uqsd_status s) {
    switch (s) {
        case UQSD_OK: return "OK";
        case UQSD_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
        case UQSD_ERR_UNNORMALIZED_STATE: return "UnnormalizedState";
        case UQSD_ERR_LINEARLY_DEPENDENT: return "LinearlyDependent";
        case UQSD_ERR_BAD_PRIORS: return "BadPriors";
        case UQSD_ERR_NOT_PSD: return "NotPSD";
        case UQSD_ERR_WRONG_ARITY: return "WrongArity";
        case UQSD_ERR_NOT_EQUILATERAL: return "NotEquilateral";
        case UQSD_ERR_UNSUPPORTED_COMPLEX_CASE: return "UnsupportedComplexCase";
        case UQSD_ERR_DEGENERATE_REDUCTION: return "DegenerateReduction";
        case UQSD_ERR_TRIANGLE_CLOSURE: return "TriangleClosureFailure";
        case UQSD_ERR_BAD_ARGUMENT: return "BadArgument";
        case UQSD_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char* uqsd_branch_name(uqsd_branch b) {
    return branch_name(static_cast<Branch>(b));
}

const char* uqsd_gamma_class_name(uqsd_gamma_class c) {
    return gamma_class_name(static_cast<GammaClass>(c));
}

const char* uqsd_last_error(void) { return g_last_error.c_str(); }

uqsd_status uqsd_ensemble_create(int32_t n_states, int32_t dim,
                                 const double* states_reim, const double* priors,
                                 uqsd_ensemble** out) {
    if (auto s = require(out && states_reim && priors, "null pointer argument")) return s;
    if (auto s = require(n_states >= 1 && n_states <= 4, "n_states must be in 1..4"))
        return s;
    if (auto s = require(dim >= 1 && dim <= 4, "dim must be in 1..4")) return s;
    return guarded([&] {
        std::vector<ComplexVector> states;
        for (int i = 0; i < n_states; ++i) {
            ComplexVector v(dim);
            for (int k = 0; k < dim; ++k) {
                const double re = states_reim[2 * (i * dim + k)];
                const double im = states_reim[2 * (i * dim + k) + 1];
                v[k] = Complex(re, im);
            }
            states.push_back(v);
        }
        std::vector<double> pr(priors, priors + n_states);
        *out = new uqsd_ensemble{Ensemble::from_states(std::move(states), std::move(pr))};
    });
}

uqsd_status uqsd_ensemble_create_from_gram(int32_t n_states, const double* gram_reim,
                                           const double* priors, uqsd_ensemble** out) {
    if (auto s = require(out && gram_reim && priors, "null pointer argument")) return s;
    if (auto s = require(n_states >= 1 && n_states <= 4, "n_states must be in 1..4"))
        return s;
    return guarded([&] {
        HermitianMatrix g(n_states);
        for (int i = 0; i < n_states; ++i)
            for (int j = i; j < n_states; ++j) {
                const double re = gram_reim[2 * (i * n_states + j)];
                const double im = gram_reim[2 * (i * n_states + j) + 1];
                const double re_t = gram_reim[2 * (j * n_states + i)];
                const double im_t = gram_reim[2 * (j * n_states + i) + 1];
                if (std::abs(re - re_t) > 1e-12 || std::abs(im + im_t) > 1e-12)
                    fail(Error::BadArgument, "gram matrix is not Hermitian");
                g.set(i, j, Complex(re, im));
            }
        std::vector<double> pr(priors, priors + n_states);
        *out = new uqsd_ensemble{Ensemble::from_gram(g, std::move(pr))};
    });
}

void uqsd_ensemble_destroy(uqsd_ensemble* e) { delete e; }

int32_t uqsd_ensemble_size(const uqsd_ensemble* e) { return e ? e->value.size() : 0; }

int32_t uqsd_ensemble_dim(const uqsd_ensemble* e) { return e ? e->value.dim() : 0; }

uqsd_status uqsd_ensemble_gram(const uqsd_ensemble* e, double* out) {
    if (auto s = require(e && out, "null pointer argument")) return s;
    write_matrix(e->value.gram_matrix(), out);
    return UQSD_OK;
}

uqsd_status uqsd_ensemble_phase_profile(const uqsd_ensemble* e,
                                        uqsd_phase_profile* out) {
    if (auto s = require(e && out, "null pointer argument")) return s;
    return guarded([&] {
        const PhaseProfile p = phase_profile(e->value);
        out->gamma_re = p.gamma.real();
        out->gamma_im = p.gamma.imag();
        out->gamma_modulus = p.gamma_modulus;
        out->theta = p.theta;
        out->gamma_class = static_cast<int32_t>(p.gamma_class);
        for (int i = 0; i < 3; ++i) {
            out->overlaps[i] = p.overlaps[i];
            out->alphas[i] = p.has_alphas ? p.alphas[i] : 0.0;
        }
        out->has_alphas = p.has_alphas ? 1 : 0;
    });
}

uqsd_status uqsd_solve(const uqsd_ensemble* e, uqsd_solution** out) {
    if (auto s = require(e && out, "null pointer argument")) return s;
    return guarded([&] { *out = new uqsd_solution{solve(e->value)}; });
}

void uqsd_solution_destroy(uqsd_solution* s) { delete s; }

int32_t uqsd_solution_size(const uqsd_solution* s) {
    return s ? static_cast<int32_t>(s->value.x.size()) : 0;
}

double uqsd_solution_p_max(const uqsd_solution* s) { return s ? s->value.p_max : 0; }

double uqsd_solution_d_min(const uqsd_solution* s) { return s ? s->value.d_min : 0; }

uqsd_branch uqsd_solution_branch(const uqsd_solution* s) {
    return s ? static_cast<uqsd_branch>(s->value.branch) : UQSD_BRANCH_ONE_STATE;
}

static uqsd_status copy_doubles(const std::vector<double>& v, double* out,
                                int32_t capacity) {
    if (auto s = require(out != nullptr, "null pointer argument")) return s;
    if (auto s = require(capacity >= static_cast<int32_t>(v.size()),
                         "output buffer too small"))
        return s;
    std::memcpy(out, v.data(), v.size() * sizeof(double));
    return UQSD_OK;
}

uqsd_status uqsd_solution_x(const uqsd_solution* s, double* out, int32_t capacity) {
    if (auto st = require(s != nullptr, "null solution")) return st;
    return copy_doubles(s->value.x, out, capacity);
}

uqsd_status uqsd_solution_x_relaxed(const uqsd_solution* s, double* out,
                                    int32_t capacity) {
    if (auto st = require(s != nullptr, "null solution")) return st;
    return copy_doubles(s->value.x_relaxed, out, capacity);
}

int32_t uqsd_solution_reduction_count(const uqsd_solution* s) {
    return s ? static_cast<int32_t>(s->value.reduction_trace.size()) : 0;
}

uqsd_status uqsd_solution_reduction_record(const uqsd_solution* s, int32_t i,
                                           uqsd_reduction_record* out) {
    if (auto st = require(s && out, "null pointer argument")) return st;
    if (auto st = require(i >= 0 && i < uqsd_solution_reduction_count(s),
                          "reduction record index out of range"))
        return st;
    const ReductionRecord& rec = s->value.reduction_trace[i];
    out->dropped_index = rec.dropped_index;
    out->n_kept = static_cast<int32_t>(rec.reduced_priors.size());
    out->scale_factor = rec.scale_factor;
    for (int k = 0; k < 3; ++k) {
        out->reduced_priors[k] =
            k < static_cast<int>(rec.reduced_priors.size()) ? rec.reduced_priors[k] : 0;
        out->reduced_overlaps[k] =
            k < static_cast<int>(rec.reduced_overlaps.size()) ? rec.reduced_overlaps[k]
                                                              : 0;
    }
    out->n_overlaps = static_cast<int32_t>(rec.reduced_overlaps.size());
    return UQSD_OK;
}

uqsd_status uqsd_certificate_build(const uqsd_ensemble* e, const uqsd_solution* s,
                                   uqsd_certificate** out) {
    if (auto st = require(e && s && out, "null pointer argument")) return st;
    return guarded([&] {
        *out = new uqsd_certificate{
            build_certificate(e->value, s->value.branch, s->value.x_relaxed)};
    });
}

void uqsd_certificate_destroy(uqsd_certificate* c) { delete c; }

double uqsd_certificate_d_value(const uqsd_certificate* c) {
    return c ? c->value.d_value : 0;
}

uqsd_status uqsd_certificate_residuals_get(const uqsd_certificate* c,
                                           uqsd_certificate_residuals* out) {
    if (auto st = require(c && out, "null pointer argument")) return st;
    out->psd = c->value.residuals.psd;
    out->diagonal = c->value.residuals.diagonal;
    out->attainability = c->value.residuals.attainability;
    out->gap = c->value.residuals.gap;
    return UQSD_OK;
}

uqsd_status uqsd_certificate_y(const uqsd_certificate* c, double* out,
                               int32_t capacity_pairs) {
    if (auto st = require(c && out, "null pointer argument")) return st;
    const int n = c->value.y.dim();
    if (auto st = require(capacity_pairs >= n * n, "output buffer too small")) return st;
    write_matrix(c->value.y, out);
    return UQSD_OK;
}

uqsd_status uqsd_verify(const uqsd_ensemble* e, const uqsd_solution* s,
                        const uqsd_certificate* c, uqsd_verification_report* out) {
    if (auto st = require(e && s && c && out, "null pointer argument")) return st;
    return guarded([&] {
        const VerificationReport rep = verify(e->value, s->value, c->value);
        out->residuals.psd = rep.residuals.psd;
        out->residuals.diagonal = rep.residuals.diagonal;
        out->residuals.attainability = rep.residuals.attainability;
        out->residuals.gap = rep.residuals.gap;
        out->certified = rep.certified ? 1 : 0;
        out->primal_dual_gap = rep.primal_dual_gap;
    });
}

uqsd_status uqsd_oracle(const uqsd_ensemble* e, double target_accuracy,
                        uqsd_oracle_result** out) {
    if (auto st = require(e && out, "null pointer argument")) return st;
    return guarded(
        [&] { *out = new uqsd_oracle_result{brute_force(e->value, target_accuracy)}; });
}

void uqsd_oracle_result_destroy(uqsd_oracle_result* r) { delete r; }

int32_t uqsd_oracle_result_size(const uqsd_oracle_result* r) {
    return r ? static_cast<int32_t>(r->value.x.size()) : 0;
}

double uqsd_oracle_result_p(const uqsd_oracle_result* r) { return r ? r->value.p : 0; }

double uqsd_oracle_result_grid_spacing(const uqsd_oracle_result* r) {
    return r ? r->value.grid_spacing : 0;
}

int32_t uqsd_oracle_result_refinement_rounds(const uqsd_oracle_result* r) {
    return r ? r->value.refinement_rounds : 0;
}

uqsd_status uqsd_oracle_result_x(const uqsd_oracle_result* r, double* out,
                                 int32_t capacity) {
    if (auto st = require(r != nullptr, "null oracle result")) return st;
    return copy_doubles(r->value.x, out, capacity);
}

uqsd_status uqsd_oracle_dual_bound(const uqsd_ensemble* e, const uqsd_oracle_result* r,
                                   double* out) {
    if (auto st = require(e && r && out, "null pointer argument")) return st;
    return guarded([&] { *out = certify_with_duality(e->value, r->value); });
}

uqsd_status uqsd_povm_build(const uqsd_ensemble* e, const uqsd_solution* s,
                            uqsd_povm** out) {
    if (auto st = require(e && s && out, "null pointer argument")) return st;
    return guarded([&] { *out = new uqsd_povm{build_povm(e->value, s->value)}; });
}

void uqsd_povm_destroy(uqsd_povm* p) { delete p; }

int32_t uqsd_povm_element_count(const uqsd_povm* p) {
    return p ? static_cast<int32_t>(p->value.elements.size()) + 1 : 0;
}

int32_t uqsd_povm_element_dim(const uqsd_povm* p) {
    return p ? p->value.inconclusive.dim() : 0;
}

uqsd_status uqsd_povm_element(const uqsd_povm* p, int32_t index, double* out,
                              int32_t capacity_pairs) {
    if (auto st = require(p && out, "null pointer argument")) return st;
    const int count = uqsd_povm_element_count(p);
    if (auto st = require(index >= 0 && index < count, "POVM element index out of range"))
        return st;
    const int d = p->value.inconclusive.dim();
    if (auto st = require(capacity_pairs >= d * d, "output buffer too small")) return st;
    const HermitianMatrix& m = (index == count - 1)
                                   ? p->value.inconclusive
                                   : p->value.elements[index];
    write_matrix(m, out);
    return UQSD_OK;
}

uqsd_status uqsd_povm_residuals_get(const uqsd_povm* p, uqsd_povm_residuals* out) {
    if (auto st = require(p && out, "null pointer argument")) return st;
    out->completeness = p->value.residuals.completeness;
    out->no_error = p->value.residuals.no_error;
    out->positivity = p->value.residuals.positivity;
    return UQSD_OK;
}

} // extern "C"

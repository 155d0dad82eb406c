#pragma once

#include "linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace uqsd {

/// Which closed-form branch produced a solution.
enum class Branch {
    OneState,
    TwoState,
    ThreeNegGamma,
    ThreePosTriangle,
    ThreePosNoTriangle,
    ComplexEquilateral,
};

const char* branch_name(Branch b);

/// Optimum of the relaxed problem (nonnegativity of the per-state success
/// coefficients dropped). Components may be negative; a negative component
/// forces the state-count reduction.
struct RelaxedSolution {
    std::vector<double> x_relaxed;
    double d_min = 0;
    Branch branch = Branch::OneState;
};

/// One level of the reduction recursion. Indices are 0-based positions in
/// the ensemble that was reduced at that level; for nested records the
/// dropped index has been mapped back to the original ensemble.
struct ReductionRecord {
    int dropped_index = -1;
    std::vector<double> reduced_priors;
    std::vector<double> reduced_overlaps; // |N'_ij| for kept pairs i < j
    double scale_factor = 0;
};

/// Rank-one dual-feasible certificate for the relaxed optimum: Y is PSD
/// with Y_ii equal to the priors, (N - diag(x_relaxed)) Y vanishes, and
/// tr(YN) matches the relaxed optimum value. d_value upper-bounds the full
/// problem's success probability for any feasible Y (weak duality).
struct DualCertificate {
    HermitianMatrix y;
    double d_value = 0;

    struct Residuals {
        double psd = 0;          // smallest eigenvalue of Y (should be >= -1e-9)
        double diagonal = 0;     // max |Y_ii - prior_i|
        double attainability = 0; // max entry of (N - diag(x_relaxed)) Y
        double gap = 0;          // |tr(YN) - sum_i prior_i x_relaxed_i|
    } residuals;
};

struct Solution {
    std::vector<double> x;   // componentwise >= 0
    double p_max = 0;        // sum_i prior_i x_i
    Branch branch = Branch::OneState;
    std::vector<double> x_relaxed;
    double d_min = 0;
    std::vector<ReductionRecord> reduction_trace;
    std::optional<DualCertificate> certificate; // attached by the public solvers
};

struct VerificationReport {
    DualCertificate::Residuals residuals;
    bool certified = false;
    std::vector<std::string> failures;
    /// d_value - p_max: zero when no reduction occurred, else the positive
    /// slack between the relaxed bound and the constrained optimum.
    double primal_dual_gap = 0;
};

} // namespace uqsd

#pragma once

#include "ensemble.hpp"

#include <vector>

namespace uqsd {

struct OracleResult {
    std::vector<double> x;
    double p = 0;
    double grid_spacing = 0;
    int refinement_rounds = 0;
    /// Incumbent probability after the coarse pass and after each
    /// refinement round; never decreases.
    std::vector<double> incumbent_history;
};

/// Derivative-free maximizer of the primal problem, independent of the
/// closed-form path (shares only the smallest-eigenvalue feasibility test).
/// Coarse grid over [0,1]^n at spacing 1/40, then a shrinking box around
/// the incumbent with the spacing divided by 4 per round until it reaches
/// target_accuracy. The objective's gradient is the priors, so the result
/// is within n * grid_spacing of the true optimum.
OracleResult brute_force(const Ensemble& e, double target_accuracy);

/// Dual upper bound tr(YN) sandwiching the oracle's probability from
/// above; tight on ensembles with an analytic branch, reported as a
/// diagnostic gap elsewhere.
double certify_with_duality(const Ensemble& e, const OracleResult& r);

} // namespace uqsd

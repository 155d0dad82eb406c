#pragma once

#include "ensemble.hpp"
#include "solution.hpp"

namespace uqsd {

/// Optimal measurement for two states, selecting among the three prior
/// regimes by comparing sqrt(eta2/eta1) against the overlap modulus and its
/// reciprocal. Attaches a dual certificate.
Solution solve_two_state(const Ensemble& e);

/// Relaxed optimum for three states whose phase invariant is real and <= 0.
/// Valid with vanishing overlaps (terms drop out).
RelaxedSolution relaxed_three_neg(const Ensemble& e);

/// Relaxed optimum for three states with positive real phase invariant.
/// Chooses between the triangle-condition closed form and the no-triangle
/// closed form; in the latter case indices are permuted internally so the
/// largest alpha_i*sqrt(eta_i) plays the distinguished role and un-permuted
/// before returning.
RelaxedSolution relaxed_three_pos(const Ensemble& e);

/// Relaxed optimum for the complex phase invariant when all three lengths
/// alpha_i*sqrt(eta_i) agree to 1e-9 relative. Throws NotEquilateral
/// otherwise; no closed form exists for the general complex case.
RelaxedSolution relaxed_complex_equilateral(const Ensemble& e);

/// Dispatches to the relaxed solver for the ensemble's branch.
/// n == 1 and n == 2 use the one- and two-state relaxed forms.
RelaxedSolution relaxed_solution(const Ensemble& e);

/// An (n-1)-state problem equivalent to the n-state problem with the
/// success coefficient of drop_index pinned to zero, built purely from the
/// Gram matrix, plus the data needed to map its solution back.
struct ReducedProblem {
    Ensemble ensemble;
    int dropped = -1;
    std::vector<int> kept;     // original indices, ascending
    std::vector<double> q;     // <phi_i|Q|phi_i> per kept index
    double scale_factor = 0;   // sum_i eta_i q_i; p_n = scale * p_{n-1}
    ReductionRecord record() const;
};

ReducedProblem reduce_problem(const Ensemble& e, int drop_index);

/// Full solution pipeline for 1 to 3 states: relaxed closed form, then, if
/// any relaxed component is negative, the reduction recursion over every
/// negative index with the best back-mapped candidate winning. Attaches a
/// dual certificate for the relaxed optimum. Throws UnsupportedComplexCase
/// for complex-invariant ensembles without the equilateral property.
Solution solve(const Ensemble& e);

} // namespace uqsd

#pragma once

#include "linalg.hpp"

#include <array>
#include <span>
#include <vector>

namespace uqsd {

/// Classification of the phase invariant of a three-state ensemble: the
/// triple product of the mutual inner products, which is unchanged by any
/// per-state phase rotation.
enum class GammaClass { NegativeOrZero, Positive, Complex };

const char* gamma_class_name(GammaClass c);

struct PhaseProfile {
    Complex gamma;
    double gamma_modulus;
    /// gamma = |gamma| e^{3 i theta} with theta in [0, 2pi/3). Snapped to
    /// exactly 0 (Positive) or pi/3 (NegativeOrZero) on the real branches.
    double theta;
    GammaClass gamma_class;
    std::array<double, 3> overlaps; // |N01|, |N12|, |N20|
    /// Pairwise factorization of the overlap moduli, alphas[i]*alphas[j] ==
    /// overlap(i,j). Defined only when all three overlaps are nonzero.
    std::array<double, 3> alphas;
    bool has_alphas;
};

/// A discrimination problem instance: unit-norm, linearly independent pure
/// states with strictly positive prior probabilities summing to 1.
/// Immutable after construction.
class Ensemble {
public:
    /// Validates and builds from explicit state vectors. States within 1e-9
    /// of unit norm are renormalized; anything further off is rejected.
    static Ensemble from_states(std::vector<ComplexVector> states,
                                std::vector<double> priors);

    /// Builds from a unit-diagonal Gram matrix, synthesizing state vectors
    /// that reproduce it. Used by the state-count reduction, which works at
    /// the Gram level.
    static Ensemble from_gram(const HermitianMatrix& gram, std::vector<double> priors);

    int size() const { return static_cast<int>(states_.size()); }
    int dim() const { return states_.empty() ? 0 : states_[0].dim(); }
    const std::vector<ComplexVector>& states() const { return states_; }
    const std::vector<double>& priors() const { return priors_; }
    const HermitianMatrix& gram_matrix() const { return gram_; }

private:
    Ensemble() = default;

    std::vector<ComplexVector> states_;
    std::vector<double> priors_;
    HermitianMatrix gram_;
};

/// Phase-normalized parameters of a three-state ensemble. Throws WrongArity
/// unless n == 3.
PhaseProfile phase_profile(const Ensemble& e);

/// True iff the three lengths alphas[i]*sqrt(priors[i]) can form a
/// (possibly degenerate) triangle: each one at most the sum of the other
/// two, with equality allowed.
bool triangle_condition(std::span<const double> alphas, std::span<const double> priors);

} // namespace uqsd

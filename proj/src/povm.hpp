#pragma once

#include "ensemble.hpp"
#include "solution.hpp"

namespace uqsd {

/// Explicit measurement operators: one confident element per state built on
/// the reciprocal basis, plus the inconclusive element absorbing the rest
/// of the identity.
struct Povm {
    std::vector<HermitianMatrix> elements; // E_0 .. E_{n-1}
    HermitianMatrix inconclusive;          // E_? = I - sum E_i

    struct Residuals {
        double completeness = 0; // max entry of E_? + sum E_i - I
        double no_error = 0;     // max_{i != j} <phi_j|E_i|phi_j>
        double positivity = 0;   // max(0, -smallest eigenvalue over all elements)
    } residuals;
};

Povm build_povm(const Ensemble& e, const Solution& s);

} // namespace uqsd

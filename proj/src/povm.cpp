#include "povm.hpp"

#include <algorithm>
#include <cmath>

namespace uqsd {

Povm build_povm(const Ensemble& e, const Solution& s) {
    const int n = e.size();
    const int d = e.dim();
    if (static_cast<int>(s.x.size()) != n)
        fail(Error::BadArgument, "solution length does not match ensemble size");

    const std::vector<ComplexVector> recip = reciprocal_states(e.states());

    Povm p;
    p.elements.reserve(n);
    for (int i = 0; i < n; ++i) {
        HermitianMatrix el(d);
        for (int j = 0; j < d; ++j) {
            el.set(j, j, s.x[i] * std::norm(recip[i][j]));
            for (int k = j + 1; k < d; ++k)
                el.set(j, k, s.x[i] * recip[i][j] * std::conj(recip[i][k]));
        }
        p.elements.push_back(el);
    }

    p.inconclusive = HermitianMatrix::identity(d);
    for (int j = 0; j < d; ++j)
        for (int k = j; k < d; ++k) {
            Complex sum = 0;
            for (const auto& el : p.elements) sum += el(j, k);
            p.inconclusive.set(j, k, p.inconclusive(j, k) - sum);
        }

    // completeness is zero by construction; recompute it anyway.
    p.residuals.completeness = 0;
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            Complex sum = p.inconclusive(j, k);
            for (const auto& el : p.elements) sum += el(j, k);
            if (j == k) sum -= 1.0;
            p.residuals.completeness = std::max(p.residuals.completeness, std::abs(sum));
        }

    p.residuals.no_error = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const double leak = s.x[i] * std::norm(inner(recip[i], e.states()[j]));
            p.residuals.no_error = std::max(p.residuals.no_error, leak);
        }

    double min_eig = min_eigenvalue(p.inconclusive);
    for (const auto& el : p.elements) min_eig = std::min(min_eig, min_eigenvalue(el));
    p.residuals.positivity = std::max(0.0, -min_eig);
    return p;
}

} // namespace uqsd

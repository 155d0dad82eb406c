#include "ensemble.hpp"

#include <cmath>

namespace uqsd {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroOverlap = 1e-12;

std::vector<double> validate_priors(std::vector<double> priors, int n) {
    if (static_cast<int>(priors.size()) != n)
        fail(Error::BadPriors, "expected " + std::to_string(n) + " priors, got " +
                                   std::to_string(priors.size()));
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(priors[i]) || priors[i] <= 0)
            fail(Error::BadPriors, "prior " + std::to_string(i) + " must be > 0");
        sum += priors[i];
    }
    if (std::abs(sum - 1.0) > 1e-9)
        fail(Error::BadPriors, "priors sum to " + std::to_string(sum) + ", expected 1");
    for (double& p : priors) p /= sum;
    return priors;
}

void check_independent(const HermitianMatrix& g) {
    if (g.dim() >= 2 && min_eigenvalue(g) <= kIndependenceThreshold)
        fail(Error::LinearlyDependent, "states are not linearly independent");
}

} // namespace

const char* gamma_class_name(GammaClass c) {
    switch (c) {
        case GammaClass::NegativeOrZero: return "NEGATIVE_OR_ZERO";
        case GammaClass::Positive: return "POSITIVE";
        case GammaClass::Complex: return "COMPLEX";
    }
    return "UNKNOWN";
}

Ensemble Ensemble::from_states(std::vector<ComplexVector> states,
                               std::vector<double> priors) {
    const int n = static_cast<int>(states.size());
    if (n < 1 || n > kMaxDim)
        fail(Error::DimensionMismatch,
             "expected between 1 and 4 states, got " + std::to_string(n));
    Ensemble e;
    e.gram_ = gram(states); // validates dims, finiteness, norms
    check_independent(e.gram_);
    e.priors_ = validate_priors(std::move(priors), n);
    for (auto& s : states) s = s.normalized();
    e.states_ = std::move(states);
    return e;
}

Ensemble Ensemble::from_gram(const HermitianMatrix& g, std::vector<double> priors) {
    const int n = g.dim();
    check_independent(g);
    Ensemble e;
    e.states_ = states_from_gram(g);
    e.gram_ = g; // keep the given matrix exactly; synthesis only feeds POVM output
    e.priors_ = validate_priors(std::move(priors), n);
    return e;
}

PhaseProfile phase_profile(const Ensemble& e) {
    if (e.size() != 3)
        fail(Error::WrongArity,
             "phase profile requires 3 states, got " + std::to_string(e.size()));
    const HermitianMatrix& n = e.gram_matrix();

    PhaseProfile p{};
    p.gamma = n(0, 1) * n(1, 2) * n(2, 0);
    p.gamma_modulus = std::abs(p.gamma);
    p.overlaps = {std::abs(n(0, 1)), std::abs(n(1, 2)), std::abs(n(2, 0))};

    // Analytically-real inputs must not be routed to the complex branch by
    // float noise in the phases.
    const bool is_real =
        std::abs(p.gamma.imag()) <= 1e-10 * std::max(p.gamma_modulus, 1e-30);
    if (is_real && p.gamma.real() > 0) {
        p.gamma_class = GammaClass::Positive;
        p.theta = 0.0;
    } else if (is_real) {
        p.gamma_class = GammaClass::NegativeOrZero;
        p.theta = kPi / 3.0;
    } else {
        p.gamma_class = GammaClass::Complex;
        double arg = std::arg(p.gamma);
        if (arg < 0) arg += 2 * kPi;
        p.theta = arg / 3.0; // in [0, 2pi/3)
    }

    p.has_alphas = p.overlaps[0] > kZeroOverlap && p.overlaps[1] > kZeroOverlap &&
                   p.overlaps[2] > kZeroOverlap;
    if (p.has_alphas) {
        const double m01 = p.overlaps[0], m12 = p.overlaps[1], m20 = p.overlaps[2];
        p.alphas = {std::sqrt(m01 * m20 / m12), std::sqrt(m01 * m12 / m20),
                    std::sqrt(m12 * m20 / m01)};
    }
    return p;
}

bool triangle_condition(std::span<const double> alphas, std::span<const double> priors) {
    if (alphas.size() != 3 || priors.size() != 3)
        fail(Error::WrongArity, "triangle condition requires 3 lengths");
    const double l0 = alphas[0] * std::sqrt(priors[0]);
    const double l1 = alphas[1] * std::sqrt(priors[1]);
    const double l2 = alphas[2] * std::sqrt(priors[2]);
    return l0 <= l1 + l2 && l1 <= l0 + l2 && l2 <= l0 + l1;
}

} // namespace uqsd

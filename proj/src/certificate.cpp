#include "certificate.hpp"

#include "solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace uqsd {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Per-state phases delta such that every nonzero Gram entry satisfies
// arg(N_ij) - delta_i + delta_j == target(i, j) (mod 2pi). The targets must
// be antisymmetric, target(j, i) == -target(i, j), because N is Hermitian.
// Solvable whenever they are consistent with the arg of the phase
// invariant, which each branch's classification guarantees; entries below
// 1e-12 impose nothing.
template <typename TargetFn>
std::array<double, kMaxDim> transport_phases(const HermitianMatrix& n, TargetFn target) {
    const int d = n.dim();
    std::array<double, kMaxDim> delta{};
    std::array<bool, kMaxDim> have{};
    have[0] = true;
    for (int pass = 0; pass < d; ++pass)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (i == j || std::abs(n(i, j)) <= 1e-12) continue;
                if (have[i] && !have[j]) {
                    delta[j] = target(i, j) - std::arg(n(i, j)) + delta[i];
                    have[j] = true;
                }
            }
    return delta;
}

// The canonical frames of the real branches give every inner product a
// common phase of 0 or pi, which is orientation-free. The complex frame
// puts phase theta on the cyclic entries (0,1), (1,2), (2,0), so the
// reversed orientation carries -theta.
auto constant_target(double t) {
    return [t](int, int) { return t; };
}

auto cyclic_target(double theta) {
    return [theta](int i, int j) { return j == (i + 1) % 3 ? theta : -theta; };
}

// Canonical-frame y vectors per branch, before phase transport.
std::vector<Complex> canonical_y(const Ensemble& e, Branch branch) {
    const auto& eta = e.priors();
    const int n = e.size();
    std::vector<Complex> y(n);

    switch (branch) {
        case Branch::OneState:
            y[0] = 1.0;
            return y;
        case Branch::TwoState:
        case Branch::ThreeNegGamma:
            for (int i = 0; i < n; ++i) y[i] = std::sqrt(eta[i]);
            return y;
        case Branch::ThreePosNoTriangle: {
            const PhaseProfile p = phase_profile(e);
            std::array<double, 3> len{};
            int big = 0;
            for (int i = 0; i < 3; ++i) {
                len[i] = p.alphas[i] * std::sqrt(eta[i]);
                if (len[i] > len[big]) big = i;
            }
            for (int i = 0; i < 3; ++i)
                y[i] = (i == big) ? std::sqrt(eta[i]) : -std::sqrt(eta[i]);
            return y;
        }
        case Branch::ThreePosTriangle: {
            // Close the triangle of side lengths alpha_i sqrt(eta_i): put
            // the first side on the positive real axis, get the second
            // side's angle from the law of cosines, and let the third side
            // be exactly the closing vector.
            const PhaseProfile p = phase_profile(e);
            std::array<double, 3> len{};
            for (int i = 0; i < 3; ++i) len[i] = p.alphas[i] * std::sqrt(eta[i]);
            const double cos_psi = std::clamp(
                (len[2] * len[2] - len[0] * len[0] - len[1] * len[1]) /
                    (2 * len[0] * len[1]),
                -1.0, 1.0);
            const double psi = std::acos(cos_psi);
            const Complex z0 = len[0];
            const Complex z1 = std::polar(len[1], psi);
            const Complex z2 = -(z0 + z1);
            if (std::abs(z0 + z1 + z2) >
                1e-10 * std::max({len[0], len[1], len[2]}))
                fail(Error::TriangleClosureFailure,
                     "no phase assignment closes the length triangle");
            y[0] = z0 / p.alphas[0];
            y[1] = z1 / p.alphas[1];
            y[2] = z2 / p.alphas[2];
            return y;
        }
        case Branch::ComplexEquilateral: {
            const Complex omega = std::polar(1.0, 2.0 * kPi / 3.0);
            y[0] = std::sqrt(eta[0]);
            y[1] = std::sqrt(eta[1]) * omega * omega;
            y[2] = std::sqrt(eta[2]) * omega;
            return y;
        }
    }
    fail(Error::Internal, "unreachable");
}

std::array<double, kMaxDim> branch_transport(const Ensemble& e, Branch branch) {
    const HermitianMatrix& n = e.gram_matrix();
    switch (branch) {
        case Branch::OneState:
            return transport_phases(n, constant_target(0.0));
        case Branch::TwoState:
        case Branch::ThreeNegGamma:
            return transport_phases(n, constant_target(kPi));
        case Branch::ThreePosTriangle:
        case Branch::ThreePosNoTriangle:
            return transport_phases(n, constant_target(0.0));
        case Branch::ComplexEquilateral:
            return transport_phases(n, cyclic_target(phase_profile(e).theta));
    }
    fail(Error::Internal, "unreachable");
}

HermitianMatrix rank_one_y(std::span<const Complex> y) {
    const int n = static_cast<int>(y.size());
    HermitianMatrix m(n);
    for (int i = 0; i < n; ++i) {
        m.set(i, i, std::norm(y[i]));
        for (int j = i + 1; j < n; ++j) m.set(i, j, std::conj(y[i]) * y[j]);
    }
    return m;
}

double trace_product(const HermitianMatrix& y, const HermitianMatrix& n) {
    Complex t = 0;
    for (int i = 0; i < n.dim(); ++i)
        for (int j = 0; j < n.dim(); ++j) t += y(i, j) * n(j, i);
    return t.real();
}

DualCertificate::Residuals compute_residuals(const Ensemble& e,
                                             std::span<const double> x_relaxed,
                                             const HermitianMatrix& y,
                                             double d_value) {
    const int n = e.size();
    DualCertificate::Residuals r;
    r.psd = min_eigenvalue(y);

    r.diagonal = 0;
    for (int i = 0; i < n; ++i)
        r.diagonal = std::max(r.diagonal, std::abs(y(i, i).real() - e.priors()[i]));

    // Attainability (N - X^R) Y = 0, measured as the max absolute entry;
    // scale-free because N has unit diagonal.
    const HermitianMatrix m = shift_diagonal(e.gram_matrix(), x_relaxed);
    r.attainability = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex s = 0;
            for (int k = 0; k < n; ++k) s += m(i, k) * y(k, j);
            r.attainability = std::max(r.attainability, std::abs(s));
        }

    double p_relaxed = 0;
    for (int i = 0; i < n; ++i) p_relaxed += e.priors()[i] * x_relaxed[i];
    r.gap = std::abs(d_value - p_relaxed);
    return r;
}

} // namespace

DualCertificate build_certificate(const Ensemble& e, Branch branch,
                                  std::span<const double> x_relaxed) {
    if (static_cast<int>(x_relaxed.size()) != e.size())
        fail(Error::BadArgument, "x_relaxed length does not match ensemble size");

    std::vector<Complex> y = canonical_y(e, branch);
    const auto delta = branch_transport(e, branch);
    for (int i = 0; i < e.size(); ++i) y[i] *= std::polar(1.0, -delta[i]);

    DualCertificate c;
    c.y = rank_one_y(y);
    c.d_value = trace_product(c.y, e.gram_matrix());
    c.residuals = compute_residuals(e, x_relaxed, c.y, c.d_value);
    return c;
}

VerificationReport verify(const Ensemble& e, const Solution& s,
                          const DualCertificate& c) {
    if (c.y.dim() != e.size() || static_cast<int>(s.x_relaxed.size()) != e.size())
        fail(Error::BadArgument, "certificate/solution dimensions do not match ensemble");

    VerificationReport rep;
    const double d = trace_product(c.y, e.gram_matrix());
    rep.residuals = compute_residuals(e, s.x_relaxed, c.y, d);
    rep.primal_dual_gap = d - s.p_max;

    if (rep.residuals.psd < -1e-9)
        rep.failures.push_back("Y is not positive semidefinite");
    if (rep.residuals.diagonal > 1e-10)
        rep.failures.push_back("diagonal of Y does not match the priors");
    if (rep.residuals.attainability > 1e-9)
        rep.failures.push_back("(N - X^R) Y does not vanish");
    if (rep.residuals.gap > 1e-9)
        rep.failures.push_back("tr(YN) does not match the relaxed optimum");
    rep.certified = rep.failures.empty();
    return rep;
}

double default_dual_bound(const Ensemble& e) {
    try {
        const RelaxedSolution rs = relaxed_solution(e);
        return build_certificate(e, rs.branch, rs.x_relaxed).d_value;
    } catch (const UqsdError& err) {
        if (err.code() != Error::NotEquilateral && err.code() != Error::WrongArity)
            throw;
    }

    // No analytic branch: any y with |y_i| = sqrt(eta_i) is dual feasible.
    // The cube-root-of-unity phases are exact in the equilateral limit and
    // a reasonable default elsewhere.
    const int n = e.size();
    std::vector<Complex> y(n);
    for (int i = 0; i < n; ++i)
        y[i] = std::sqrt(e.priors()[i]) * std::polar(1.0, -2.0 * kPi / 3.0 * i);
    const auto delta =
        (n == 3) ? transport_phases(e.gram_matrix(), cyclic_target(phase_profile(e).theta))
                 : transport_phases(e.gram_matrix(), constant_target(kPi));
    for (int i = 0; i < n; ++i) y[i] *= std::polar(1.0, -delta[i]);
    return trace_product(rank_one_y(y), e.gram_matrix());
}

} // namespace uqsd

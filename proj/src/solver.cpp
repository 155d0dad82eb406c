#include "solver.hpp"

#include "certificate.hpp"

#include <algorithm>
#include <cmath>

namespace uqsd {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Relaxed components in [-kNegativeClamp, 0) are analytic zeros rounded
// down; they must not trigger a spurious reduction.
constexpr double kNegativeClamp = 1e-12;

RelaxedSolution relaxed_one_state(const Ensemble&) {
    RelaxedSolution r;
    r.x_relaxed = {1.0};
    r.d_min = 1.0;
    r.branch = Branch::OneState;
    return r;
}

RelaxedSolution relaxed_two_state(const Ensemble& e) {
    const double s = std::abs(e.gram_matrix()(0, 1));
    const double e0 = e.priors()[0], e1 = e.priors()[1];
    RelaxedSolution r;
    r.x_relaxed = {1.0 - std::sqrt(e1 / e0) * s, 1.0 - std::sqrt(e0 / e1) * s};
    r.d_min = 1.0 - 2.0 * std::sqrt(e0 * e1) * s;
    r.branch = Branch::TwoState;
    return r;
}

double resum(const Ensemble& e, std::span<const double> x) {
    double p = 0;
    for (int i = 0; i < e.size(); ++i) p += e.priors()[i] * x[i];
    return p;
}

void cross_assert_probability(double p, double p_resummed) {
    if (std::abs(p - p_resummed) > 1e-12 * std::max(1.0, std::abs(p)))
        fail(Error::Internal, "success probability disagrees with its re-summed value");
}

Solution solve_bare(const Ensemble& e);

struct Candidate {
    Solution solution;
    int dropped;
};

Candidate reduced_candidate(const Ensemble& e, const RelaxedSolution& rs, int drop) {
    const ReducedProblem red = reduce_problem(e, drop);
    const Solution sub = solve_bare(red.ensemble);

    Solution s;
    s.x.assign(e.size(), 0.0);
    for (size_t j = 0; j < red.kept.size(); ++j)
        s.x[red.kept[j]] = red.q[j] * sub.x[j];
    s.p_max = red.scale_factor * sub.p_max;
    cross_assert_probability(s.p_max, resum(e, s.x));
    s.branch = rs.branch;
    s.x_relaxed = rs.x_relaxed;
    s.d_min = rs.d_min;
    s.reduction_trace.push_back(red.record());
    for (ReductionRecord rec : sub.reduction_trace) {
        rec.dropped_index = red.kept[rec.dropped_index];
        s.reduction_trace.push_back(rec);
    }
    return {std::move(s), drop};
}

Solution solve_bare(const Ensemble& e) {
    const int n = e.size();
    if (n < 1 || n > 3)
        fail(Error::WrongArity,
             "analytic solver supports 1 to 3 states, got " + std::to_string(n));
    if (n == 1) {
        Solution s;
        s.x = {1.0};
        s.p_max = 1.0;
        s.branch = Branch::OneState;
        s.x_relaxed = {1.0};
        s.d_min = 1.0;
        return s;
    }

    const RelaxedSolution rs = relaxed_solution(e);
    const double most_negative =
        *std::min_element(rs.x_relaxed.begin(), rs.x_relaxed.end());

    if (most_negative >= -kNegativeClamp) {
        Solution s;
        s.x = rs.x_relaxed;
        for (double& v : s.x) v = std::max(v, 0.0);
        s.p_max = rs.d_min;
        cross_assert_probability(s.p_max, resum(e, s.x));
        s.branch = rs.branch;
        s.x_relaxed = rs.x_relaxed;
        s.d_min = rs.d_min;
        return s;
    }

    // Some relaxed component is negative: the optimum has x_i = 0 for at
    // least one negative index. Solve the reduced problem for each of them
    // and keep the candidate with the largest probability; ties (which the
    // uniqueness of the optimum forces to coincide) break toward the
    // smallest dropped index.
    std::optional<Candidate> best;
    for (int i = 0; i < n; ++i) {
        if (rs.x_relaxed[i] >= -kNegativeClamp) continue;
        Candidate cand = reduced_candidate(e, rs, i);
        if (!best) {
            best = std::move(cand);
            continue;
        }
        const double dp = cand.solution.p_max - best->solution.p_max;
        if (dp > 1e-12) {
            best = std::move(cand);
        } else if (dp >= -1e-12) {
            for (int k = 0; k < n; ++k)
                if (std::abs(cand.solution.x[k] - best->solution.x[k]) > 1e-8)
                    fail(Error::Internal,
                         "tied reduction candidates produced different optima");
        }
    }
    return std::move(best->solution);
}

Solution with_certificate(const Ensemble& e, Solution s) {
    s.certificate = build_certificate(e, s.branch, s.x_relaxed);
    return s;
}

} // namespace

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::OneState: return "ONE_STATE";
        case Branch::TwoState: return "TWO_STATE";
        case Branch::ThreeNegGamma: return "THREE_NEG_GAMMA";
        case Branch::ThreePosTriangle: return "THREE_POS_TRIANGLE";
        case Branch::ThreePosNoTriangle: return "THREE_POS_NO_TRIANGLE";
        case Branch::ComplexEquilateral: return "COMPLEX_EQUILATERAL";
    }
    return "UNKNOWN";
}

RelaxedSolution relaxed_three_neg(const Ensemble& e) {
    if (e.size() != 3) fail(Error::WrongArity, "relaxed_three_neg requires 3 states");
    const PhaseProfile p = phase_profile(e);
    const double m01 = p.overlaps[0], m12 = p.overlaps[1], m20 = p.overlaps[2];
    const double s0 = std::sqrt(e.priors()[0]);
    const double s1 = std::sqrt(e.priors()[1]);
    const double s2 = std::sqrt(e.priors()[2]);

    RelaxedSolution r;
    r.x_relaxed = {1.0 - (s1 * m01 + s2 * m20) / s0,
                   1.0 - (s0 * m01 + s2 * m12) / s1,
                   1.0 - (s0 * m20 + s1 * m12) / s2};
    r.d_min = 1.0 - 2 * s0 * s1 * m01 - 2 * s1 * s2 * m12 - 2 * s2 * s0 * m20;
    r.branch = Branch::ThreeNegGamma;
    return r;
}

RelaxedSolution relaxed_three_pos(const Ensemble& e) {
    if (e.size() != 3) fail(Error::WrongArity, "relaxed_three_pos requires 3 states");
    const PhaseProfile p = phase_profile(e);
    if (!p.has_alphas)
        fail(Error::Internal, "positive-invariant branch requires nonzero overlaps");
    const auto& eta = e.priors();
    const auto& a = p.alphas;

    RelaxedSolution r;
    if (triangle_condition(a, eta)) {
        r.x_relaxed = {1.0 - a[0] * a[0], 1.0 - a[1] * a[1], 1.0 - a[2] * a[2]};
        r.d_min = 1.0 - (eta[0] * a[0] * a[0] + eta[1] * a[1] * a[1] +
                         eta[2] * a[2] * a[2]);
        r.branch = Branch::ThreePosTriangle;
        return r;
    }

    const std::array<double, 3> len = {a[0] * std::sqrt(eta[0]),
                                       a[1] * std::sqrt(eta[1]),
                                       a[2] * std::sqrt(eta[2])};
    int big = 0;
    for (int i = 1; i < 3; ++i)
        if (len[i] > len[big]) big = i;
    const int ob = (big + 1) % 3, oc = (big + 2) % 3;

    r.x_relaxed.assign(3, 0.0);
    r.x_relaxed[big] = 1.0 - a[big] / std::sqrt(eta[big]) * (len[ob] + len[oc]);
    r.x_relaxed[ob] = 1.0 - a[ob] / std::sqrt(eta[ob]) * (len[big] - len[oc]);
    r.x_relaxed[oc] = 1.0 - a[oc] / std::sqrt(eta[oc]) * (len[big] - len[ob]);
    r.d_min = 1.0 - 2 * len[big] * len[ob] + 2 * len[ob] * len[oc] -
              2 * len[oc] * len[big];
    r.branch = Branch::ThreePosNoTriangle;
    return r;
}

RelaxedSolution relaxed_complex_equilateral(const Ensemble& e) {
    if (e.size() != 3)
        fail(Error::WrongArity, "relaxed_complex_equilateral requires 3 states");
    const PhaseProfile p = phase_profile(e);
    if (!p.has_alphas)
        fail(Error::NotEquilateral, "zero overlap: lengths alpha_i sqrt(eta_i) undefined");
    const auto& eta = e.priors();
    const std::array<double, 3> len = {p.alphas[0] * std::sqrt(eta[0]),
                                       p.alphas[1] * std::sqrt(eta[1]),
                                       p.alphas[2] * std::sqrt(eta[2])};
    const double lmax = std::max({len[0], len[1], len[2]});
    const double lmin = std::min({len[0], len[1], len[2]});
    if (lmax - lmin > 1e-9 * lmax)
        fail(Error::NotEquilateral,
             "lengths alpha_i sqrt(eta_i) are not all equal; no closed form applies");

    const double c = std::cos(p.theta + 2.0 * kPi / 3.0);
    RelaxedSolution r;
    r.x_relaxed = {1.0 + 2 * p.alphas[0] * p.alphas[0] * c,
                   1.0 + 2 * p.alphas[1] * p.alphas[1] * c,
                   1.0 + 2 * p.alphas[2] * p.alphas[2] * c};
    r.d_min = 1.0 + 2 * c *
                        (eta[0] * p.alphas[0] * p.alphas[0] +
                         eta[1] * p.alphas[1] * p.alphas[1] +
                         eta[2] * p.alphas[2] * p.alphas[2]);
    r.branch = Branch::ComplexEquilateral;
    return r;
}

RelaxedSolution relaxed_solution(const Ensemble& e) {
    switch (e.size()) {
        case 1: return relaxed_one_state(e);
        case 2: return relaxed_two_state(e);
        case 3: break;
        default:
            fail(Error::WrongArity, "analytic solver supports 1 to 3 states, got " +
                                        std::to_string(e.size()));
    }
    switch (phase_profile(e).gamma_class) {
        case GammaClass::NegativeOrZero: return relaxed_three_neg(e);
        case GammaClass::Positive: return relaxed_three_pos(e);
        case GammaClass::Complex: return relaxed_complex_equilateral(e);
    }
    fail(Error::Internal, "unreachable");
}

ReductionRecord ReducedProblem::record() const {
    ReductionRecord rec;
    rec.dropped_index = dropped;
    rec.reduced_priors = ensemble.priors();
    const HermitianMatrix& g = ensemble.gram_matrix();
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i + 1; j < g.dim(); ++j)
            rec.reduced_overlaps.push_back(std::abs(g(i, j)));
    rec.scale_factor = scale_factor;
    return rec;
}

ReducedProblem reduce_problem(const Ensemble& e, int drop_index) {
    const int n = e.size();
    if (n < 2) fail(Error::WrongArity, "cannot reduce a problem with fewer than 2 states");
    if (drop_index < 0 || drop_index >= n)
        fail(Error::BadArgument, "drop index out of range");

    const HermitianMatrix& g = e.gram_matrix();
    std::vector<int> kept;
    for (int i = 0; i < n; ++i)
        if (i != drop_index) kept.push_back(i);

    // <phi_i|Q|phi_j> = N_ij - N_ik N_kj with Q the projector cutting out
    // the dropped state; everything below is Gram-level only.
    std::vector<double> q;
    for (int i : kept) {
        const double qi = 1.0 - std::norm(g(i, drop_index));
        if (qi <= 1e-12)
            fail(Error::DegenerateReduction,
                 "state " + std::to_string(i) + " coincides with the dropped state");
        q.push_back(qi);
    }

    const int m = n - 1;
    HermitianMatrix reduced(m);
    for (int a = 0; a < m; ++a) {
        reduced.set(a, a, 1.0);
        for (int b = a + 1; b < m; ++b) {
            const int i = kept[a], j = kept[b];
            const Complex num = g(i, j) - g(i, drop_index) * g(drop_index, j);
            reduced.set(a, b, num / std::sqrt(q[a] * q[b]));
        }
    }

    double scale = 0;
    for (int a = 0; a < m; ++a) scale += e.priors()[kept[a]] * q[a];
    std::vector<double> priors(m);
    for (int a = 0; a < m; ++a) priors[a] = e.priors()[kept[a]] * q[a] / scale;

    return ReducedProblem{Ensemble::from_gram(reduced, std::move(priors)), drop_index,
                          std::move(kept), std::move(q), scale};
}

Solution solve_two_state(const Ensemble& e) {
    if (e.size() != 2)
        fail(Error::WrongArity,
             "solve_two_state requires 2 states, got " + std::to_string(e.size()));
    return with_certificate(e, solve_bare(e));
}

Solution solve(const Ensemble& e) {
    try {
        return with_certificate(e, solve_bare(e));
    } catch (const UqsdError& err) {
        if (err.code() == Error::NotEquilateral)
            fail(Error::UnsupportedComplexCase,
                 std::string("no closed form for this complex-invariant ensemble (") +
                     err.what() + "); use the numeric oracle");
        throw;
    }
}

} // namespace uqsd

#include "oracle.hpp"

#include "certificate.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace uqsd {

namespace {

constexpr double kCoarseSpacing = 1.0 / 40.0;
constexpr double kFeasibilityTolerance = 1e-9;

bool feasible_point(const HermitianMatrix& gram, const std::array<double, kMaxDim>& x,
                    int n) {
    return min_eigenvalue_shifted(gram, std::span(x.data(), n)) >=
           -kFeasibilityTolerance;
}

struct GridSearch {
    const HermitianMatrix& gram;
    std::span<const double> eta;
    int n;
    std::array<std::vector<double>, kMaxDim> axes;

    std::array<double, kMaxDim> point{};
    std::array<double, kMaxDim> best{};
    double best_p = 0;
    double best_margin = 0;

    double margin() const {
        return min_eigenvalue_shifted(gram, std::span(point.data(), n));
    }

    // Depth-first ascending scan. Infeasibility is monotone (a point
    // infeasible stays infeasible when any coordinate grows), so a failed
    // prefix prunes the rest of its axis, and on the innermost axis points
    // that cannot beat the incumbent are skipped without testing.
    //
    // Probability ties (exact on equal priors, where a +h/-h step pair
    // leaves p unchanged) break toward the larger feasibility margin,
    // sliding the incumbent along the level set toward its interior.
    void scan(int depth) {
        if (depth == n - 1) {
            double base = 0;
            for (int i = 0; i < depth; ++i) base += eta[i] * point[i];
            const double tie = 4e-16 * std::max(1.0, best_p);
            for (double v : axes[depth]) {
                const double p = base + eta[depth] * v;
                point[depth] = v;
                if (p <= best_p - tie) continue;
                const double m = margin();
                if (m < -kFeasibilityTolerance) break;
                if (p > best_p + tie) {
                    best_p = p;
                    best = point;
                    best_margin = m;
                } else if (m > best_margin + 1e-12) {
                    best_p = std::max(best_p, p);
                    best = point;
                    best_margin = m;
                }
            }
            return;
        }
        for (double v : axes[depth]) {
            point[depth] = v;
            for (int j = depth + 1; j < n; ++j) point[j] = axes[j].front();
            if (margin() < -kFeasibilityTolerance) break;
            scan(depth + 1);
        }
    }
};

// Largest t in [0, 1] keeping N - diag(x with x[k] = t) feasible, or a
// negative value when even t = 0 is infeasible. min_eigenvalue is
// nonincreasing in t, so bisection applies.
double max_last_coordinate(const HermitianMatrix& gram, std::array<double, kMaxDim>& x,
                           int n, int k) {
    x[k] = 0;
    if (!feasible_point(gram, x, n)) return -1;
    x[k] = 1;
    if (feasible_point(gram, x, n)) return 1;
    double lo = 0, hi = 1;
    for (int it = 0; it < 44; ++it) {
        const double mid = 0.5 * (lo + hi);
        x[k] = mid;
        (feasible_point(gram, x, n) ? lo : hi) = mid;
    }
    x[k] = lo;
    return lo;
}

// Nested exact maximization of p with the trailing coordinates eliminated:
// the innermost coordinate is pushed to its feasibility boundary (exact),
// every outer one is maximized by golden section. Each partial
// maximization of a concave function is concave, hence unimodal, so the
// section search is safe; the grid phase cannot do this, because near a
// curved-boundary tangency the improving direction needs coordinate steps
// in ratios no small grid stencil contains.
template <typename F>
std::pair<double, double> golden_max(double a, double b, int iters, F&& f) {
    constexpr double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters; ++i) {
        if (fc >= fd) { // ties keep the left half: the feasible set is an
            b = d;      // interval anchored at 0
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

constexpr double kMinusInf = -1e300;

double polish_level(const HermitianMatrix& gram, std::span<const double> eta, int n,
                    int depth, int iters, std::array<double, kMaxDim>& x) {
    if (depth == n - 1) {
        const double t = max_last_coordinate(gram, x, n, depth);
        return t < 0 ? kMinusInf : eta[depth] * t;
    }
    auto objective = [&](double v) {
        x[depth] = v;
        std::array<double, kMaxDim> scratch = x;
        const double inner = polish_level(gram, eta, n, depth + 1, iters, scratch);
        return inner <= kMinusInf ? kMinusInf : eta[depth] * v + inner;
    };
    const auto [arg, value] = golden_max(0.0, 1.0, iters, objective);
    x[depth] = arg;
    if (value <= kMinusInf) return kMinusInf;
    polish_level(gram, eta, n, depth + 1, iters, x); // fill trailing coordinates
    return value;
}

} // namespace

OracleResult brute_force(const Ensemble& e, double target_accuracy) {
    if (!(target_accuracy >= 1e-8))
        fail(Error::BadArgument, "oracle target accuracy must be >= 1e-8");
    const int n = e.size();

    GridSearch g{e.gram_matrix(), e.priors(), n, {}, {}, {}, 0.0, 0.0};
    g.best_margin = min_eigenvalue(e.gram_matrix()); // x = 0 is always feasible
    double h = kCoarseSpacing;
    for (int i = 0; i < n; ++i) {
        auto& ax = g.axes[i];
        for (int k = 0; k * h <= 1.0 + 1e-12; ++k) ax.push_back(std::min(k * h, 1.0));
    }
    g.scan(0);

    OracleResult r;
    r.incumbent_history.push_back(g.best_p);
    r.refinement_rounds = 0;
    while (h > target_accuracy) {
        const double hn = h / 4;
        for (int i = 0; i < n; ++i) {
            auto& ax = g.axes[i];
            ax.clear();
            for (int k = -10; k <= 10; ++k) {
                const double v = std::clamp(g.best[i] + k * hn, 0.0, 1.0);
                if (ax.empty() || v > ax.back()) ax.push_back(v);
            }
        }
        g.scan(0);
        h = hn;
        ++r.refinement_rounds;
        r.incumbent_history.push_back(g.best_p);
    }

    // Section-search iterations sized so the final argument interval is
    // around 0.01 * sqrt(target): the objective is flat to second order at
    // the optimum, so the value error is quadratic in the interval.
    const int iters = static_cast<int>(
        std::ceil(std::log(100.0 / std::sqrt(target_accuracy)) / 0.4812)) + 2;
    std::array<double, kMaxDim> px{};
    const double polished = polish_level(e.gram_matrix(), e.priors(), n, 0, iters, px);
    if (polished > g.best_p && feasible_point(e.gram_matrix(), px, n)) {
        double p = 0;
        for (int i = 0; i < n; ++i) p += e.priors()[i] * px[i];
        if (p > g.best_p) {
            g.best = px;
            g.best_p = p;
        }
    }
    r.incumbent_history.push_back(g.best_p);

    r.x.assign(g.best.begin(), g.best.begin() + n);
    r.p = g.best_p;
    r.grid_spacing = h;
    return r;
}

double certify_with_duality(const Ensemble& e, const OracleResult& r) {
    const double bound = default_dual_bound(e);
    // Weak duality holds for any dual-feasible Y; a violation beyond grid
    // noise means a bug, not a bad instance.
    if (bound < r.p - 1e-6)
        fail(Error::Internal, "dual bound fell below the oracle's probability");
    return bound;
}

} // namespace uqsd

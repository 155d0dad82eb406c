#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace uqsd {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_dim(int dim) {
    if (dim < 1 || dim > kMaxDim)
        fail(Error::DimensionMismatch,
             "dimension " + std::to_string(dim) + " outside 1.." + std::to_string(kMaxDim));
}

} // namespace

const char* error_name(Error e) {
    switch (e) {
        case Error::DimensionMismatch: return "DimensionMismatch";
        case Error::UnnormalizedState: return "UnnormalizedState";
        case Error::LinearlyDependent: return "LinearlyDependent";
        case Error::BadPriors: return "BadPriors";
        case Error::NotPsd: return "NotPSD";
        case Error::WrongArity: return "WrongArity";
        case Error::NotEquilateral: return "NotEquilateral";
        case Error::UnsupportedComplexCase: return "UnsupportedComplexCase";
        case Error::DegenerateReduction: return "DegenerateReduction";
        case Error::TriangleClosureFailure: return "TriangleClosureFailure";
        case Error::BadArgument: return "BadArgument";
        case Error::Internal: return "Internal";
    }
    return "Unknown";
}

bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

ComplexVector::ComplexVector(int dim) : dim_(dim) {
    check_dim(dim);
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : dim_(static_cast<int>(entries.size())) {
    check_dim(dim_);
    int i = 0;
    for (Complex z : entries) e_[i++] = z;
}

double ComplexVector::norm() const {
    double s = 0;
    for (int i = 0; i < dim_; ++i) s += std::norm(e_[i]);
    return std::sqrt(s);
}

ComplexVector ComplexVector::normalized() const {
    ComplexVector v = *this;
    double n = norm();
    if (n == 0) fail(Error::UnnormalizedState, "cannot normalize the zero vector");
    for (int i = 0; i < dim_; ++i) v.e_[i] /= n;
    return v;
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
    if (a.dim() != b.dim())
        fail(Error::DimensionMismatch, "inner product of vectors with different dimensions");
    Complex s = 0;
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

HermitianMatrix::HermitianMatrix(int dim) : dim_(dim) {
    check_dim(dim);
}

HermitianMatrix HermitianMatrix::identity(int dim) {
    HermitianMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
    return m;
}

void HermitianMatrix::set(int i, int j, Complex v) {
    if (i == j) {
        a_[i * kMaxDim + i] = Complex(v.real(), 0.0);
    } else {
        a_[i * kMaxDim + j] = v;
        a_[j * kMaxDim + i] = std::conj(v);
    }
}

double HermitianMatrix::frobenius_norm() const {
    double s = 0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) s += std::norm((*this)(i, j));
    return std::sqrt(s);
}

double HermitianMatrix::max_abs() const {
    double m = 0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

HermitianMatrix gram(std::span<const ComplexVector> states) {
    const int n = static_cast<int>(states.size());
    check_dim(n);
    const int d = states[0].dim();
    std::vector<ComplexVector> unit(states.begin(), states.end());
    for (int i = 0; i < n; ++i) {
        if (states[i].dim() != d)
            fail(Error::DimensionMismatch, "state " + std::to_string(i) + " has dimension " +
                                               std::to_string(states[i].dim()) + ", expected " +
                                               std::to_string(d));
        for (int k = 0; k < d; ++k)
            if (!is_finite(states[i][k]))
                fail(Error::UnnormalizedState,
                     "state " + std::to_string(i) + " has a non-finite component");
        const double nrm = states[i].norm();
        if (std::abs(nrm - 1.0) > 1e-9)
            fail(Error::UnnormalizedState, "state " + std::to_string(i) + " has norm " +
                                               std::to_string(nrm) + ", expected 1");
        unit[i] = states[i].normalized();
    }
    HermitianMatrix m(n);
    for (int i = 0; i < n; ++i) {
        m.set(i, i, 1.0);
        for (int j = i + 1; j < n; ++j) m.set(i, j, inner(unit[i], unit[j]));
    }
    return m;
}

namespace {

// Full-matrix complex working copy for the Jacobi sweep.
struct Work {
    int n;
    Complex a[kMaxDim][kMaxDim];
    Complex v[kMaxDim][kMaxDim]; // accumulated unitary, columns = eigenvectors

    explicit Work(const HermitianMatrix& m) : n(m.dim()) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a[i][j] = m(i, j);
                v[i][j] = (i == j) ? 1.0 : 0.0;
            }
    }

    double off_norm() const {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += std::norm(a[i][j]);
        return std::sqrt(s);
    }

    // One Hermitian Jacobi rotation annihilating a[p][q]. The 2x2 block is
    // phase-reduced to a real symmetric block first, then rotated.
    void rotate(int p, int q) {
        const Complex apq = a[p][q];
        const double r = std::abs(apq);
        if (r == 0) return;
        const Complex u = apq / r; // apq = r * u, |u| = 1
        const double app = a[p][p].real();
        const double aqq = a[q][q].real();
        // Annihilation of the phase-reduced block [[app, r], [r, aqq]]
        // under [[c, -s], [s, c]] requires t^2 - 2*tau*t - 1 = 0; take the
        // smaller-magnitude root for stability.
        const double tau = (aqq - app) / (2 * r);
        const double t = (tau >= 0) ? -1.0 / (tau + std::sqrt(1 + tau * tau))
                                    : 1.0 / (-tau + std::sqrt(1 + tau * tau));
        const double c = 1.0 / std::sqrt(1 + t * t);
        const double s = t * c;

        // G is the identity except for the (p,q) block
        //   [ c        -s      ]
        //   [ s*conj(u) c*conj(u) ].
        const Complex gpp = c, gpq = -s;
        const Complex gqp = s * std::conj(u), gqq = c * std::conj(u);

        for (int k = 0; k < n; ++k) { // A <- A G
            const Complex akp = a[k][p], akq = a[k][q];
            a[k][p] = akp * gpp + akq * gqp;
            a[k][q] = akp * gpq + akq * gqq;
        }
        for (int k = 0; k < n; ++k) { // A <- G^dagger A
            const Complex apk = a[p][k], aqk = a[q][k];
            a[p][k] = std::conj(gpp) * apk + std::conj(gqp) * aqk;
            a[q][k] = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        for (int k = 0; k < n; ++k) { // V <- V G
            const Complex vkp = v[k][p], vkq = v[k][q];
            v[k][p] = vkp * gpp + vkq * gqp;
            v[k][q] = vkp * gpq + vkq * gqq;
        }
        a[p][q] = 0;
        a[q][p] = 0;
        a[p][p] = Complex(a[p][p].real(), 0);
        a[q][q] = Complex(a[q][q].real(), 0);
    }
};

EigenDecomposition eigen_dim1(const HermitianMatrix& m) {
    EigenDecomposition d;
    d.eigenvalues = {m(0, 0).real()};
    d.eigenvectors = {ComplexVector{1.0}};
    return d;
}

EigenDecomposition eigen_dim2(const HermitianMatrix& m) {
    const double a = m(0, 0).real(), b = m(1, 1).real();
    const Complex w = m(0, 1);
    const double r = std::abs(w);
    const double mid = 0.5 * (a + b);
    const double h = std::hypot(0.5 * (a - b), r);
    const double lo = mid - h, hi = mid + h;

    EigenDecomposition d;
    d.eigenvalues = {lo, hi};
    if (r == 0) {
        ComplexVector e0{1.0, 0.0}, e1{0.0, 1.0};
        d.eigenvectors = (a <= b) ? std::vector<ComplexVector>{e0, e1}
                                  : std::vector<ComplexVector>{e1, e0};
        return d;
    }
    auto vector_for = [&](double lam) {
        // (a - lam) v0 + w v1 = 0; pick the better-conditioned kernel form.
        ComplexVector v(2);
        if (std::abs(lam - a) >= std::abs(lam - b)) {
            v[0] = w;
            v[1] = lam - a;
        } else {
            v[0] = lam - b;
            v[1] = std::conj(w);
        }
        return v.normalized();
    };
    d.eigenvectors = {vector_for(lo), vector_for(hi)};
    return d;
}

} // namespace

EigenDecomposition eigen(const HermitianMatrix& m) {
    const int n = m.dim();
    check_dim(n);
    if (n == 1) return eigen_dim1(m);
    if (n == 2) return eigen_dim2(m);

    Work w(m);
    const double stop = 1e-14 * std::max(m.frobenius_norm(), 1e-300);
    for (int sweep = 0; sweep < 60 && w.off_norm() > stop; ++sweep)
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) w.rotate(p, q);

    std::array<int, kMaxDim> order{};
    std::iota(order.begin(), order.begin() + n, 0);
    std::sort(order.begin(), order.begin() + n,
              [&](int i, int j) { return w.a[i][i].real() < w.a[j][j].real(); });

    EigenDecomposition d;
    for (int k = 0; k < n; ++k) {
        const int c = order[k];
        d.eigenvalues.push_back(w.a[c][c].real());
        ComplexVector vec(n);
        for (int i = 0; i < n; ++i) vec[i] = w.v[i][c];
        d.eigenvectors.push_back(vec.normalized());
    }
    return d;
}

namespace {

// Characteristic polynomial of N - diag(shift) - lambda*I evaluated as
// P(lambda) = det(...), with coefficients P(l) = -l^3 + c2 l^2 - c1 l + c0
// for dim 3 (and the analogous lower-degree forms below).
struct CharPoly3 {
    double c2, c1, c0;

    double eval(double l) const { return ((-l + c2) * l - c1) * l + c0; }
    double deriv(double l) const { return (-3 * l + 2 * c2) * l - c1; }
};

std::optional<double> min_eig_dim3(const HermitianMatrix& n,
                                   std::span<const double> shift) {
    const double d0 = n(0, 0).real() - (shift.empty() ? 0.0 : shift[0]);
    const double d1 = n(1, 1).real() - (shift.empty() ? 0.0 : shift[1]);
    const double d2 = n(2, 2).real() - (shift.empty() ? 0.0 : shift[2]);
    const Complex a01 = n(0, 1), a02 = n(0, 2), a12 = n(1, 2);
    const double m01 = std::norm(a01), m02 = std::norm(a02), m12 = std::norm(a12);
    const double p1 = m01 + m02 + m12;
    if (p1 == 0) return std::min({d0, d1, d2});

    const double tr = d0 + d1 + d2;
    const double mean = tr / 3.0;
    const double p2 = (d0 - mean) * (d0 - mean) + (d1 - mean) * (d1 - mean) +
                      (d2 - mean) * (d2 - mean) + 2 * p1;
    const double p = std::sqrt(p2 / 6.0);
    if (p == 0) return mean;

    const double det = d0 * d1 * d2 + 2 * (a01 * a12 * std::conj(a02)).real() -
                       d0 * m12 - d1 * m02 - d2 * m01;
    // det((A - mean I)/p) / 2, clamped into acos range. With c1 the sum of
    // principal 2x2 minors, det(A - mean I) = 2 mean^3 - c1 mean + det(A).
    const double c1 = d0 * d1 + d0 * d2 + d1 * d2 - p1;
    const double detB =
        (det - mean * c1 + 2 * mean * mean * mean) / (p * p * p);
    const double r = std::clamp(detB / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    double lo = mean + 2 * p * std::cos(phi + 2.0 * kPi / 3.0);

    // Two Newton steps on the characteristic polynomial sharpen the
    // closed-form root. |P'(lo)| is the product of the gaps to the other
    // two roots; when it is small the smallest root is nearly multiple,
    // the trigonometric form loses ~sqrt(eps) accuracy, and the Jacobi
    // path must take over.
    CharPoly3 cp;
    cp.c2 = tr;
    cp.c1 = c1;
    cp.c0 = det;
    const double scale = std::abs(mean) + 2 * p;
    if (std::abs(cp.deriv(lo)) < 1e-3 * scale * scale)
        return std::nullopt; // clustered roots; caller falls back to eigen()
    for (int it = 0; it < 2; ++it) {
        const double f = cp.eval(lo), fp = cp.deriv(lo);
        if (std::abs(fp) == 0) break;
        const double step = f / fp;
        if (!std::isfinite(step) || std::abs(step) > p) break;
        lo -= step;
    }
    return lo;
}

} // namespace

double min_eigenvalue_shifted(const HermitianMatrix& n, std::span<const double> shift) {
    if (!shift.empty() && static_cast<int>(shift.size()) != n.dim())
        fail(Error::DimensionMismatch, "shift length does not match matrix dimension");
    switch (n.dim()) {
        case 1:
            return n(0, 0).real() - (shift.empty() ? 0.0 : shift[0]);
        case 2: {
            const double a = n(0, 0).real() - (shift.empty() ? 0.0 : shift[0]);
            const double b = n(1, 1).real() - (shift.empty() ? 0.0 : shift[1]);
            return 0.5 * (a + b) - std::hypot(0.5 * (a - b), std::abs(n(0, 1)));
        }
        case 3:
            if (const auto fast = min_eig_dim3(n, shift)) return *fast;
            [[fallthrough]];
        default:
            return eigen(shift.empty() ? n : shift_diagonal(n, shift)).eigenvalues.front();
    }
}

double min_eigenvalue(const HermitianMatrix& a) {
    return min_eigenvalue_shifted(a, {});
}

HermitianMatrix shift_diagonal(const HermitianMatrix& n, std::span<const double> shift) {
    if (static_cast<int>(shift.size()) != n.dim())
        fail(Error::DimensionMismatch, "shift length does not match matrix dimension");
    HermitianMatrix m = n;
    for (int i = 0; i < n.dim(); ++i) m.set(i, i, n(i, i).real() - shift[i]);
    return m;
}

double determinant_shifted(const HermitianMatrix& n, std::span<const double> shift) {
    const HermitianMatrix m = shift.empty() ? n : shift_diagonal(n, shift);
    const int d = m.dim();
    if (d == 1) return m(0, 0).real();
    if (d == 2) return m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1));
    if (d == 3)
        return m(0, 0).real() * m(1, 1).real() * m(2, 2).real() +
               2 * (m(0, 1) * m(1, 2) * std::conj(m(0, 2))).real() -
               m(0, 0).real() * std::norm(m(1, 2)) - m(1, 1).real() * std::norm(m(0, 2)) -
               m(2, 2).real() * std::norm(m(0, 1));

    // dim 4: LU with partial pivoting, determinant = product of pivots.
    Complex a[kMaxDim][kMaxDim];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a[i][j] = m(i, j);
    Complex det = 1.0;
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (piv != col) {
            for (int j = 0; j < d; ++j) std::swap(a[col][j], a[piv][j]);
            det = -det;
        }
        if (a[col][col] == Complex(0.0)) return 0.0;
        det *= a[col][col];
        for (int r = col + 1; r < d; ++r) {
            const Complex f = a[r][col] / a[col][col];
            for (int j = col; j < d; ++j) a[r][j] -= f * a[col][j];
        }
    }
    return det.real();
}

double determinant(const HermitianMatrix& a) {
    return determinant_shifted(a, {});
}

HermitianMatrix inverse(const HermitianMatrix& m) {
    const int d = m.dim();
    // Gauss-Jordan with partial pivoting on [A | I].
    Complex a[kMaxDim][2 * kMaxDim];
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            a[i][j] = m(i, j);
            a[i][d + j] = (i == j) ? 1.0 : 0.0;
        }
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300)
            fail(Error::LinearlyDependent, "matrix is numerically singular");
        if (piv != col)
            for (int j = 0; j < 2 * d; ++j) std::swap(a[col][j], a[piv][j]);
        const Complex inv = 1.0 / a[col][col];
        for (int j = 0; j < 2 * d; ++j) a[col][j] *= inv;
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            const Complex f = a[r][col];
            if (f == Complex(0.0)) continue;
            for (int j = 0; j < 2 * d; ++j) a[r][j] -= f * a[col][j];
        }
    }
    HermitianMatrix out(d);
    for (int i = 0; i < d; ++i) {
        out.set(i, i, a[i][d + i].real());
        for (int j = i + 1; j < d; ++j) {
            // Symmetrize: the exact inverse of a Hermitian matrix is
            // Hermitian; averaging removes elimination roundoff skew.
            const Complex v = 0.5 * (a[i][d + j] + std::conj(a[j][d + i]));
            out.set(i, j, v);
        }
    }
    return out;
}

std::vector<ComplexVector> reciprocal_states(std::span<const ComplexVector> states) {
    const int n = static_cast<int>(states.size());
    const HermitianMatrix g = gram(states);
    if (min_eigenvalue(g) <= kIndependenceThreshold)
        fail(Error::LinearlyDependent,
             "states are not linearly independent (Gram matrix nearly singular)");
    const HermitianMatrix ginv = inverse(g);
    std::vector<ComplexVector> out;
    out.reserve(n);
    const int d = states[0].dim();
    for (int i = 0; i < n; ++i) {
        ComplexVector t(d);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < d; ++k) t[k] += ginv(j, i) * states[j][k];
        out.push_back(t);
    }
    return out;
}

std::vector<ComplexVector> states_from_gram(const HermitianMatrix& n) {
    const int d = n.dim();
    for (int i = 0; i < d; ++i)
        if (std::abs(n(i, i).real() - 1.0) > 1e-9)
            fail(Error::NotPsd, "Gram matrix diagonal entry " + std::to_string(i) +
                                    " is not 1");
    if (min_eigenvalue(n) < -kPsdTolerance * std::max(1.0, n.frobenius_norm()))
        fail(Error::NotPsd, "matrix is not positive semidefinite");

    // Lower-triangular factorization N = L L^dagger; pivots below 1e-12
    // truncate (rank-deficient input).
    Complex l[kMaxDim][kMaxDim] = {};
    for (int j = 0; j < d; ++j) {
        double diag = n(j, j).real();
        for (int k = 0; k < j; ++k) diag -= std::norm(l[j][k]);
        if (diag < 1e-12) continue; // column stays zero
        l[j][j] = std::sqrt(diag);
        for (int i = j + 1; i < d; ++i) {
            Complex s = n(i, j);
            for (int k = 0; k < j; ++k) s -= l[i][k] * std::conj(l[j][k]);
            l[i][j] = s / l[j][j].real();
        }
    }
    std::vector<ComplexVector> out;
    out.reserve(d);
    for (int i = 0; i < d; ++i) {
        ComplexVector v(d);
        for (int k = 0; k < d; ++k) v[k] = std::conj(l[i][k]);
        out.push_back(v);
    }
    return out;
}

} // namespace uqsd

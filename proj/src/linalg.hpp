#pragma once

#include "errors.hpp"

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace uqsd {

using Complex = std::complex<double>;

/// All linear algebra in this library is hard-capped at dimension 4.
inline constexpr int kMaxDim = 4;

/// Gram matrices below this smallest eigenvalue are rejected as linearly
/// dependent input rather than regularized.
inline constexpr double kIndependenceThreshold = 1e-10;

/// A matrix is accepted as positive semidefinite when its smallest
/// eigenvalue is >= -kPsdTolerance * max(1, ||A||_F). Closed-form optima
/// sit exactly on the PSD boundary, so exact zeros that round slightly
/// negative must pass.
inline constexpr double kPsdTolerance = 1e-9;

bool is_finite(Complex z);

/// Dense complex column vector of dimension 1..4, value semantics.
class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(int dim);
    ComplexVector(std::initializer_list<Complex> entries);

    int dim() const { return dim_; }
    Complex operator[](int i) const { return e_[i]; }
    Complex& operator[](int i) { return e_[i]; }

    double norm() const;
    ComplexVector normalized() const;

private:
    int dim_ = 0;
    std::array<Complex, kMaxDim> e_{};
};

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const ComplexVector& a, const ComplexVector& b);

/// Hermitian matrix of dimension 1..4. Exact Hermitian symmetry
/// (entries[i][j] == conj(entries[j][i]), real diagonal) is maintained by
/// construction: set() writes both triangles at once and discards the
/// imaginary part of diagonal entries.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(int dim);
    static HermitianMatrix identity(int dim);

    int dim() const { return dim_; }
    Complex operator()(int i, int j) const { return a_[i * kMaxDim + j]; }
    void set(int i, int j, Complex v);

    double frobenius_norm() const;
    double max_abs() const;

private:
    int dim_ = 0;
    std::array<Complex, kMaxDim * kMaxDim> a_{};
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;          // ascending
    std::vector<ComplexVector> eigenvectors;  // orthonormal, same order
};

/// Gram matrix N_ij = <states_i|states_j> of unit-norm states. States whose
/// norm is within 1e-9 of 1 are renormalized; the diagonal is exactly 1.
HermitianMatrix gram(std::span<const ComplexVector> states);

/// Full eigendecomposition. Closed forms for dim <= 2; cyclic Jacobi
/// rotations for dim 3 and 4, iterated until the off-diagonal norm drops
/// below 1e-14 * ||A||_F.
EigenDecomposition eigen(const HermitianMatrix& a);

/// Smallest eigenvalue of N - diag(shift). shift may be empty (no shift)
/// or have length dim(). Closed-form characteristic-polynomial roots with
/// Newton polishing for dim <= 3; falls back to eigen() for dim 4.
double min_eigenvalue_shifted(const HermitianMatrix& n, std::span<const double> shift);

double min_eigenvalue(const HermitianMatrix& a);

/// det(A), real by Hermitian symmetry.
double determinant(const HermitianMatrix& a);

/// det(N - diag(shift)).
double determinant_shifted(const HermitianMatrix& n, std::span<const double> shift);

HermitianMatrix inverse(const HermitianMatrix& a);

/// N - diag(shift) as a HermitianMatrix.
HermitianMatrix shift_diagonal(const HermitianMatrix& n, std::span<const double> shift);

/// Reciprocal (dual) states satisfying <tilde_i|phi_j> = delta_ij.
/// Throws LinearlyDependent when the Gram matrix's smallest eigenvalue is
/// at or below kIndependenceThreshold.
std::vector<ComplexVector> reciprocal_states(std::span<const ComplexVector> states);

/// Synthesizes unit vectors whose Gram matrix reproduces a PSD,
/// unit-diagonal N entrywise (lower-triangular factorization, no pivoting;
/// pivots below 1e-12 truncate to a rank-sized subspace).
std::vector<ComplexVector> states_from_gram(const HermitianMatrix& n);

} // namespace uqsd

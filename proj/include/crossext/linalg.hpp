#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "crossext/error.hpp"

namespace crossext::linalg {

using cplx = std::complex<double>;

/// Thresholds for all rank and clustering decisions. Every numerical gate in
/// the library routes through one of these three knobs.
struct Tolerance {
    double pivot_eps = 1e-9;   // relative pivot acceptance threshold
    double round_eps = 1e-6;   // integrality gate for multiplicities
    double cluster_eps = 1e-7; // eigenvalue cluster separation

    void validate() const;
};

/// Dense complex matrix, row-major. Entries must stay finite; operations are
/// pure and deterministic.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}
    CMatrix(int rows, int cols, std::vector<cplx> entries);

    static CMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    cplx& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }
    const std::vector<cplx>& data() const { return a_; }

    void check_finite() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
CMatrix add(const CMatrix& a, const CMatrix& b);
CMatrix sub(const CMatrix& a, const CMatrix& b);
CMatrix scale(const CMatrix& a, cplx s);
cplx trace(const CMatrix& a);
double max_abs(const CMatrix& a);
double inf_norm(const CMatrix& a);
bool approx_equal(const CMatrix& a, const CMatrix& b, double tol);

/// Kronecker product; entry ((i*p+k),(j*q+l)) = A(i,j)*B(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Columns spanning ker(M), found by scaled partial-pivot Gaussian
/// elimination with relative threshold pivot_eps. Throws NumericalError when
/// the gap between accepted and rejected pivot magnitudes is too small to
/// decide the rank.
std::vector<CMatrix> nullspace(const CMatrix& m, const Tolerance& tol = {});

/// Same kernel packed as one matrix (n x k); empty kernel gives 0 columns.
CMatrix nullspace_matrix(const CMatrix& m, const Tolerance& tol = {});

int numerical_rank(const CMatrix& m, const Tolerance& tol = {});

/// Orthonormalize the columns (modified Gram-Schmidt); drops nothing, throws
/// NumericalError if a column is numerically dependent.
CMatrix orthonormalize(const CMatrix& cols, const Tolerance& tol = {});

struct EigenCluster {
    cplx value;     // cluster mean
    CMatrix basis;  // n x m orthonormal basis of the generalized eigenspace
};

/// Splits a square matrix into generalized eigenspaces for eigenvalue
/// clusters separated by more than cluster_eps. Deterministic; throws
/// UnsplittableError when distinct clusters sit too close to separate.
/// The seed is accepted for interface stability; the computation itself
/// draws no randomness.
std::vector<EigenCluster> gen_eigensplit(const CMatrix& m, const Tolerance& tol = {},
                                         std::uint64_t seed = 0);

/// Eigenvalues of a square complex matrix (Schur diagonal), unsorted.
std::vector<cplx> eigenvalues(const CMatrix& m);

/// Generalized kernel of (m - lambda I) of the given dimension, built by the
/// ascending kernel chain ker B, ker of B into ker B, ... (no matrix powers).
CMatrix generalized_kernel(const CMatrix& m, cplx lambda, int dim, const Tolerance& tol);

/// Q^H A Q for an orthonormal basis Q of an A-invariant subspace.
CMatrix restrict_to_subspace(const CMatrix& a, const CMatrix& q);

} // namespace crossext::linalg

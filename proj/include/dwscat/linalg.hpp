// linalg.hpp — dense numeric kernels: symmetric tridiagonal eigensolver and
// complex linear solves with partial pivoting. All storage row-major, all
// arithmetic in 64-bit doubles, all routines deterministic for fixed input.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dwscat::linalg {

using cplx = std::complex<double>;

// ----------------------------- matrix storage --------------------------------

struct RealMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> a;  // row-major

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static RealMatrix identity(std::size_t n);
};

struct ComplexMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> a;  // row-major

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c, cplx fill = {})
        : rows(r), cols(c), a(r * c, fill) {}

    cplx& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    cplx operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static ComplexMatrix identity(std::size_t n);
};

using ComplexVector = std::vector<cplx>;

// ------------------------------ tridiagonal ----------------------------------

// Symmetric tridiagonal matrix: diag has length dim, offdiag length dim-1.
struct SymTriMatrix {
    std::vector<double> diag;
    std::vector<double> offdiag;

    std::size_t dim() const { return diag.size(); }
    double frobenius_norm() const;
    void validate() const;  // throws std::invalid_argument
};

// Eigenvalues ascending; column j of `vectors` is the eigenvector of values[j].
// Sign convention: in each column the entry of largest magnitude is positive
// (ties broken by lowest index), which pins the basis for downstream matrices.
struct EigenDecomposition {
    std::vector<double> values;
    RealMatrix vectors;
};

// Implicit-shift QL iteration for a symmetric tridiagonal matrix.
// Throws std::runtime_error naming the failing index if an eigenvalue has not
// converged after 50 iterations.
EigenDecomposition eig_sym_tridiagonal(const SymTriMatrix& m);

// ------------------------------ linear solve ---------------------------------

// Solve a*x = b by LU with partial pivoting; b may hold multiple columns.
// Throws std::runtime_error carrying the pivot index and magnitude when a is
// singular to working precision.
ComplexMatrix solve_complex(const ComplexMatrix& a, const ComplexMatrix& b);

// ------------------------------- helpers -------------------------------------

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix to_complex(const RealMatrix& a);

double max_abs(const RealMatrix& a);
double max_abs(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);

}  // namespace dwscat::linalg

// linalg.cpp — implicit-shift QL eigensolver (EISPACK tql2 lineage) and
// complex LU with partial pivoting.

#include "dwscat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dwscat::linalg {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Iteration cap per eigenvalue; exceeding it indicates corrupted input.
constexpr int kMaxQlIterations = 50;

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double SymTriMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double d : diag) s += d * d;
    for (double e : offdiag) s += 2.0 * e * e;
    return std::sqrt(s);
}

void SymTriMatrix::validate() const {
    if (diag.empty()) throw std::invalid_argument("SymTriMatrix: dim must be >= 1");
    if (offdiag.size() + 1 != diag.size())
        throw std::invalid_argument("SymTriMatrix: offdiag length must be dim-1");
    if (!all_finite(diag) || !all_finite(offdiag))
        throw std::invalid_argument("SymTriMatrix: entries must be finite");
}

// ------------------------------ eigensolver ----------------------------------

EigenDecomposition eig_sym_tridiagonal(const SymTriMatrix& m) {
    m.validate();
    const std::size_t n = m.dim();

    std::vector<double> d = m.diag;
    std::vector<double> e(n, 0.0);  // e[i] couples rows i and i+1, e[n-1] spare
    std::copy(m.offdiag.begin(), m.offdiag.end(), e.begin());

    RealMatrix v = RealMatrix::identity(n);

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t mm;
        do {
            // Look for a negligible subdiagonal element to split the problem.
            for (mm = l; mm + 1 < n; ++mm) {
                const double dd = std::abs(d[mm]) + std::abs(d[mm + 1]);
                if (std::abs(e[mm]) <= kEps * dd) break;
            }
            if (mm != l) {
                if (iter++ == kMaxQlIterations) {
                    std::ostringstream msg;
                    msg << "eig_sym_tridiagonal: eigenvalue " << l
                        << " failed to converge after " << kMaxQlIterations
                        << " QL iterations";
                    throw std::runtime_error(msg.str());
                }
                // Implicit shift from the leading 2x2 block.
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (std::size_t i = mm; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        // Rotation annihilated prematurely; restart the sweep.
                        d[i + 1] -= p;
                        e[mm] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = v(k, i + 1);
                        v(k, i + 1) = s * v(k, i) + c * f;
                        v(k, i) = c * v(k, i) - s * f;
                    }
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[mm] = 0.0;
            }
        } while (mm != l);
    }

    // Sort ascending, permuting eigenvector columns along.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&d](std::size_t i, std::size_t j) { return d[i] < d[j]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = RealMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.values[j] = d[src];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, src);
    }

    // Sign convention: largest-magnitude entry of each column positive,
    // ties resolved by the lowest index.
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t imax = 0;
        double amax = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double ai = std::abs(out.vectors(i, j));
            if (ai > amax) {
                amax = ai;
                imax = i;
            }
        }
        if (out.vectors(imax, j) < 0.0)
            for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = -out.vectors(i, j);
    }
    return out;
}

// ------------------------------ linear solve ---------------------------------

ComplexMatrix solve_complex(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows != a.cols) throw std::invalid_argument("solve_complex: matrix must be square");
    if (b.rows != a.rows)
        throw std::invalid_argument("solve_complex: rhs row count must match matrix dimension");
    const std::size_t n = a.rows;

    ComplexMatrix lu = a;
    std::vector<std::size_t> piv(n);
    std::iota(piv.begin(), piv.end(), std::size_t{0});

    double norm_a = 0.0;
    for (const cplx& z : a.a) norm_a = std::max(norm_a, std::abs(z));
    const double singular_tol = static_cast<double>(n) * kEps * norm_a;

    for (std::size_t k = 0; k < n; ++k) {
        // Partial pivot: largest magnitude in column k at or below the diagonal.
        std::size_t p = k;
        double best = std::norm(lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double cand = std::norm(lu(i, k));
            if (cand > best) {
                best = cand;
                p = i;
            }
        }
        const double pivot_mag = std::sqrt(best);
        if (pivot_mag <= singular_tol) {
            std::ostringstream msg;
            msg << "solve_complex: singular pivot at column " << k << " (magnitude "
                << pivot_mag << ")";
            throw std::runtime_error(msg.str());
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(piv[k], piv[p]);
        }
        const cplx pivot = lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = lu(i, k) / pivot;
            lu(i, k) = f;
            const cplx* row_k = &lu.a[k * n];
            cplx* row_i = &lu.a[i * n];
            for (std::size_t j = k + 1; j < n; ++j) row_i[j] -= f * row_k[j];
        }
    }

    const std::size_t nrhs = b.cols;
    ComplexMatrix x(n, nrhs);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < nrhs; ++j) x(i, j) = b(piv[i], j);

    // Forward substitution (unit lower triangle).
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k) {
            const cplx f = lu(i, k);
            if (f == cplx{}) continue;
            for (std::size_t j = 0; j < nrhs; ++j) x(i, j) -= f * x(k, j);
        }
    // Back substitution.
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) {
            const cplx f = lu(i, k);
            if (f == cplx{}) continue;
            for (std::size_t j = 0; j < nrhs; ++j) x(i, j) -= f * x(k, j);
        }
        const cplx d = lu(i, i);
        for (std::size_t j = 0; j < nrhs; ++j) x(i, j) /= d;
    }
    return x;
}

// ------------------------------- helpers -------------------------------------

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions must match");
    RealMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double f = a(i, k);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += f * b(k, j);
        }
    return c;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: inner dimensions must match");
    ComplexMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            const cplx f = a(i, k);
            if (f == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += f * b(k, j);
        }
    return c;
}

ComplexMatrix to_complex(const RealMatrix& a) {
    ComplexMatrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.a.size(); ++i) c.a[i] = a.a[i];
    return c;
}

double max_abs(const RealMatrix& a) {
    double m = 0.0;
    for (double x : a.a) m = std::max(m, std::abs(x));
    return m;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const cplx& z : a.a) m = std::max(m, std::abs(z));
    return m;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const cplx& z : a.a) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace dwscat::linalg

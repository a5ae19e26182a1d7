#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "dwscat/linalg.hpp"

using namespace dwscat::linalg;

namespace {

SymTriMatrix random_tridiagonal(std::mt19937& rng, std::size_t dim) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SymTriMatrix m;
    m.diag.resize(dim);
    m.offdiag.resize(dim - 1);
    for (auto& d : m.diag) d = 10.0 * u(rng);
    for (auto& e : m.offdiag) e = 10.0 * u(rng);
    return m;
}

double residual_norm(const SymTriMatrix& m, const EigenDecomposition& ed, std::size_t j) {
    const std::size_t n = m.dim();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double hv = m.diag[i] * ed.vectors(i, j);
        if (i > 0) hv += m.offdiag[i - 1] * ed.vectors(i - 1, j);
        if (i + 1 < n) hv += m.offdiag[i] * ed.vectors(i + 1, j);
        const double r = hv - ed.values[j] * ed.vectors(i, j);
        s += r * r;
    }
    return std::sqrt(s);
}

double orthonormality_defect(const EigenDecomposition& ed) {
    const std::size_t n = ed.values.size();
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += ed.vectors(i, a) * ed.vectors(i, b);
            worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("2x2 hopping matrix") {
    SymTriMatrix m{{0.0, 0.0}, {-1.0}};
    const auto ed = eig_sym_tridiagonal(m);
    CHECK(ed.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ed.values[1] == doctest::Approx(1.0).epsilon(1e-14));
    // Sign convention: equal-magnitude entries, so the first one is positive.
    CHECK(ed.vectors(0, 0) > 0.0);
    CHECK(ed.vectors(0, 1) > 0.0);
    CHECK(ed.vectors(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(ed.vectors(1, 1) == doctest::Approx(-1.0 / std::sqrt(2.0)));
}

TEST_CASE("diagonal input yields identity eigenvectors") {
    const double c = 3.25;
    SymTriMatrix m{{c, c, c}, {0.0, 0.0}};
    const auto ed = eig_sym_tridiagonal(m);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(ed.values[j] == doctest::Approx(c));
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(ed.vectors(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
    }
}

TEST_CASE("analytic 3x3 spectrum (parity block split)") {
    // Dimer with N=2, U=2, k=1: even block gives 1 +- sqrt(5), odd block gives 2.
    const double r2 = std::sqrt(2.0);
    SymTriMatrix m{{2.0, 0.0, 2.0}, {-r2, -r2}};
    const auto ed = eig_sym_tridiagonal(m);
    const double s5 = std::sqrt(5.0);
    CHECK(std::abs(ed.values[0] - (1.0 - s5)) < 1e-12);
    CHECK(std::abs(ed.values[1] - 2.0) < 1e-12);
    CHECK(std::abs(ed.values[2] - (1.0 + s5)) < 1e-12);
}

TEST_CASE("dim 1") {
    SymTriMatrix m{{-4.5}, {}};
    const auto ed = eig_sym_tridiagonal(m);
    CHECK(ed.values[0] == doctest::Approx(-4.5));
    CHECK(ed.vectors(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("invalid input rejected") {
    CHECK_THROWS_AS(eig_sym_tridiagonal(SymTriMatrix{{}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(eig_sym_tridiagonal(SymTriMatrix{{1.0, 2.0}, {}}), std::invalid_argument);
    CHECK_THROWS_AS(eig_sym_tridiagonal(SymTriMatrix{{1.0, std::nan("")}, {0.0}}),
                    std::invalid_argument);
}

TEST_CASE("random tridiagonal matrices satisfy the accuracy contract") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::size_t> dim_dist(2, 201);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = dim_dist(rng);
        const auto m = random_tridiagonal(rng, n);
        const auto ed = eig_sym_tridiagonal(m);
        const double hf = m.frobenius_norm();

        for (std::size_t j = 1; j < n; ++j) CHECK(ed.values[j] >= ed.values[j - 1]);
        CHECK(orthonormality_defect(ed) < 1e-12);
        for (std::size_t j = 0; j < n; ++j) CHECK(residual_norm(m, ed, j) <= 1e-10 * hf);

        // Sign convention: largest-magnitude entry positive.
        for (std::size_t j = 0; j < n; ++j) {
            double amax = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                amax = std::max(amax, std::abs(ed.vectors(i, j)));
            bool positive_at_max = false;
            for (std::size_t i = 0; i < n; ++i)
                if (std::abs(ed.vectors(i, j)) == amax) {
                    positive_at_max = ed.vectors(i, j) > 0.0;
                    break;
                }
            CHECK(positive_at_max);
        }
    }
}

TEST_CASE("round-trip reconstruction") {
    std::mt19937 rng(11);
    for (std::size_t n : {5u, 37u, 120u}) {
        const auto m = random_tridiagonal(rng, n);
        const auto ed = eig_sym_tridiagonal(m);
        const double hf = m.frobenius_norm();
        // V diag(lambda) V^T compared entrywise against the tridiagonal input.
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    s += ed.vectors(i, k) * ed.values[k] * ed.vectors(j, k);
                double href = 0.0;
                if (i == j) href = m.diag[i];
                else if (i + 1 == j) href = m.offdiag[i];
                else if (j + 1 == i) href = m.offdiag[j];
                worst = std::max(worst, std::abs(s - href));
            }
        CHECK(worst <= 1e-10 * hf);
    }
}

TEST_CASE("eigensolver is deterministic") {
    std::mt19937 rng(3);
    const auto m = random_tridiagonal(rng, 83);
    const auto e1 = eig_sym_tridiagonal(m);
    const auto e2 = eig_sym_tridiagonal(m);
    CHECK(std::memcmp(e1.values.data(), e2.values.data(), e1.values.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(e1.vectors.a.data(), e2.vectors.a.data(),
                      e1.vectors.a.size() * sizeof(double)) == 0);
}

TEST_CASE("solve: identity and diagonal systems") {
    ComplexMatrix id = ComplexMatrix::identity(4);
    ComplexMatrix b(4, 2);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j) b(i, j) = cplx(1.0 + double(i), -double(j));
    auto x = solve_complex(id, b);
    for (std::size_t i = 0; i < x.a.size(); ++i) CHECK(std::abs(x.a[i] - b.a[i]) < 1e-15);

    ComplexMatrix d(3, 3);
    d(0, 0) = {2.0, 0.0};
    d(1, 1) = {0.0, 4.0};
    d(2, 2) = {-1.0, 1.0};
    ComplexMatrix e1(3, 1);
    e1(1, 0) = 1.0;
    auto xd = solve_complex(d, e1);
    CHECK(std::abs(xd(1, 0) - cplx(1.0) / cplx(0.0, 4.0)) < 1e-15);
    CHECK(std::abs(xd(0, 0)) < 1e-15);
    CHECK(std::abs(xd(2, 0)) < 1e-15);
}

TEST_CASE("solve: recovers a known solution on a well-conditioned 50x50 system") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 50;
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = cplx(u(rng), u(rng));
        a(i, i) += cplx(double(n), double(n));  // diagonally dominant
    }
    ComplexMatrix x0(n, 1);
    for (std::size_t i = 0; i < n; ++i) x0(i, 0) = cplx(u(rng), u(rng));
    const auto b = matmul(a, x0);
    const auto x = solve_complex(a, b);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(x(i, 0) - x0(i, 0)));
        scale = std::max(scale, std::abs(x0(i, 0)));
    }
    CHECK(worst <= 1e-10 * scale);

    // Backward error bound.
    const auto r = matmul(a, x);
    double rmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) rmax = std::max(rmax, std::abs(r(i, 0) - b(i, 0)));
    CHECK(rmax <= 1e-10 * max_abs(a) * max_abs(x));
}

TEST_CASE("solve: columns of identity give a verified inverse") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 24;
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = cplx(u(rng), u(rng));
        a(i, i) += cplx(4.0, -4.0);
    }
    const auto inv = solve_complex(a, ComplexMatrix::identity(n));
    const auto prod = matmul(a, inv);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(prod(i, j) - (i == j ? cplx(1.0) : cplx{})));
    CHECK(worst < 1e-9);
}

TEST_CASE("solve: singular matrix reports pivot index and magnitude") {
    ComplexMatrix a(3, 3);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 4.0;  // row 1 = 2 * row 0, third column/row zero
    ComplexMatrix b(3, 1);
    b(0, 0) = 1.0;
    try {
        solve_complex(a, b);
        FAIL("expected singular-pivot error");
    } catch (const std::runtime_error& err) {
        const std::string what = err.what();
        CHECK(what.find("singular pivot") != std::string::npos);
        CHECK(what.find("column") != std::string::npos);
        CHECK(what.find("magnitude") != std::string::npos);
    }
}

TEST_CASE("solve: shape mismatches rejected") {
    CHECK_THROWS_AS(solve_complex(ComplexMatrix(2, 3), ComplexMatrix(2, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_complex(ComplexMatrix::identity(3), ComplexMatrix(2, 1)),
                    std::invalid_argument);
}

}  // TEST_SUITE

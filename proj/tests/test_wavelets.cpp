#include <doctest.h>

#include <cmath>

#include "csl/wavelets.hpp"
#include "test_util.hpp"

using namespace csl;

TEST_CASE("haar forward/inverse basics") {
    HaarBasisSpec spec(4);
    Signal v(4);
    v << 1, 1, 1, 1;
    Signal c = haar_forward(v, spec);
    CHECK(std::abs(c[0] - Complex(2, 0)) < 1e-14);
    CHECK(c.tail(3).norm() < 1e-14);

    Signal e2 = Signal::Zero(4);
    e2[1] = 1.0;  // coarsest wavelet
    Signal w = haar_inverse(e2, spec);
    Signal expected(4);
    expected << 0.5, 0.5, -0.5, -0.5;
    CHECK((w - expected).norm() < 1e-14);

    CHECK_THROWS(haar_forward(Signal::Zero(6), HaarBasisSpec(4)));
    CHECK_THROWS(HaarBasisSpec(6));
}

TEST_CASE("haar round trip and Parseval") {
    Rng rng(21);
    HaarBasisSpec spec(64);
    for (int t = 0; t < 100; ++t) {
        Signal v = testutil::random_complex_signal(64, rng);
        Signal c = haar_forward(v, spec);
        CHECK(c.norm() == doctest::Approx(v.norm()).epsilon(1e-12));
        CHECK((haar_inverse(c, spec) - v).norm() < 1e-12 * v.norm());
    }
}

TEST_CASE("haar transform matrix is orthonormal") {
    const int n = 16;
    HaarBasisSpec spec(n);
    DenseMatrix w(n, n);
    for (int j = 0; j < n; ++j) {
        Signal e = Signal::Zero(n);
        e[j] = 1.0;
        w.col(j) = haar_forward(e, spec);
    }
    CHECK((w.adjoint() * w - DenseMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("piecewise test function values") {
    CHECK(eval_piecewise_f(1.0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(eval_piecewise_f(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS(eval_piecewise_f(-0.1));
    CHECK_THROWS(eval_piecewise_f(1.1));

    // jumps at 1.3^(i-9) for i=1..8 have magnitude 2 * b^(i mod 3); the i=9
    // breakpoint sits at the domain edge where sign(0) = 0 halves the jump
    const double eps = 1e-9;
    for (int i = 1; i <= 8; ++i) {
        const double b = std::pow(1.3, i - 9);
        const double lo = eval_piecewise_f(b - eps);
        const double hi = eval_piecewise_f(b + eps);
        CHECK(std::abs(hi - lo) == doctest::Approx(2.0 * std::pow(b, i % 3)).epsilon(1e-6));
    }
    CHECK(std::abs(eval_piecewise_f(1.0) - eval_piecewise_f(1.0 - eps)) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("haar coefficients of constant function") {
    const int n = 16;
    Signal c(haar_coefficients_of_f(HaarBasisSpec(n), 4));
    // substitute f by 1: do it via the same pipeline on a constant grid
    // instead: check the known shape for the real f is finite, plus the exact
    // constant-function identity computed directly
    CHECK(c.size() == n);
    CHECK(c.allFinite());

    // constant function: single nonzero scaling coefficient sqrt(N)
    const int grid = 8 * n;
    Signal ones = Signal::Constant(grid, Complex(1.0, 0.0));
    Signal fine = haar_forward(ones, HaarBasisSpec(grid));
    Signal coeffs = std::sqrt(static_cast<double>(n) / grid) * fine.head(n);
    CHECK(std::abs(coeffs[0] - Complex(std::sqrt(static_cast<double>(n)), 0.0)) < 1e-12);
    CHECK(coeffs.tail(n - 1).norm() < 1e-12);
}

TEST_CASE("haar coefficients: self convergence in oversampling") {
    const int n = 1 << 10;
    Signal c8 = haar_coefficients_of_f(HaarBasisSpec(n), 8);
    Signal c16 = haar_coefficients_of_f(HaarBasisSpec(n), 16);
    Signal c32 = haar_coefficients_of_f(HaarBasisSpec(n), 32);
    const double d1 = (c8 - c16).norm() / c16.norm();
    const double d2 = (c16 - c32).norm() / c32.norm();
    CHECK(d1 < 5e-3);
    CHECK(d2 < d1);
}

TEST_CASE("haar coefficients of f decay across scales") {
    const int n = 1 << 10;
    Signal c = haar_coefficients_of_f(HaarBasisSpec(n), 8);
    // per-scale l2 norms trend down; jump clustering at coarse scales allows
    // limited local wiggle
    std::vector<double> norms;
    for (int j = 0; (1 << (j + 1)) <= n; ++j) norms.push_back(c.segment(1 << j, 1 << j).norm());
    for (std::size_t j = 0; j + 1 < norms.size(); ++j) CHECK(norms[j + 1] <= 1.5 * norms[j]);
    CHECK(norms.back() < 0.05 * norms.front());
    CHECK(norms[norms.size() - 2] < 0.5 * norms.front());
}

TEST_CASE("fourier of haar: closed form vs quadrature") {
    HaarBasisSpec spec(16);
    std::vector<long> freqs{0, 1, -1, 3, -7, 12};
    auto op = fourier_of_haar_matrix(freqs, spec);
    const auto dense = op->to_dense();

    // k = 0: scaling function integrates to 1, wavelets to 0
    CHECK(std::abs(dense(0, 0) - Complex(1, 0)) < 1e-12);
    for (int n = 1; n < 16; ++n) CHECK(std::abs(dense(0, n)) < 1e-12);

    // quadrature oracle at 2^18 midpoints
    const int grid = 1 << 18;
    for (int col : {0, 1, 5, 13}) {
        Signal e = Signal::Zero(16);
        e[col] = 1.0;
        Signal phi = haar_inverse(e, spec);  // piecewise-constant on 16 cells
        for (std::size_t fi = 0; fi < freqs.size(); ++fi) {
            const double w = 2.0 * M_PI * freqs[fi];
            Complex integral(0.0, 0.0);
            for (int g = 0; g < grid; ++g) {
                const double t = (g + 0.5) / grid;
                // continuum Haar function value: sqrt(16) * discrete value
                const Complex val = phi[static_cast<int>(t * 16)] * std::sqrt(16.0);
                integral += val * std::exp(Complex(0.0, -w * t)) / static_cast<double>(grid);
            }
            CHECK(std::abs(dense(fi, col) - integral) < 1e-6);
        }
    }

    // column entries bounded by the L1 norm of the basis function
    for (int col = 0; col < 16; ++col) {
        Signal e = Signal::Zero(16);
        e[col] = 1.0;
        const double l1 = haar_inverse(e, spec).lpNorm<1>() * std::sqrt(16.0) / 16.0;
        for (std::size_t fi = 0; fi < freqs.size(); ++fi)
            CHECK(std::abs(dense(fi, col)) <= l1 + 1e-12);
    }
}

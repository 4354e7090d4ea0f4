#include "csl/wavelets.hpp"

#include <cmath>

namespace csl {

Signal haar_forward(const Signal& v, const HaarBasisSpec& spec) {
    if (v.size() != spec.n)
        throw std::invalid_argument("haar_forward: length mismatch");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Signal work = v;
    Signal tmp(spec.n);
    for (int len = spec.n; len > 1; len /= 2) {
        const int half = len / 2;
        for (int i = 0; i < half; ++i) {
            tmp[i] = (work[2 * i] + work[2 * i + 1]) * inv_sqrt2;
            tmp[half + i] = (work[2 * i] - work[2 * i + 1]) * inv_sqrt2;
        }
        work.head(len) = tmp.head(len);
    }
    return work;
}

Signal haar_inverse(const Signal& c, const HaarBasisSpec& spec) {
    if (c.size() != spec.n)
        throw std::invalid_argument("haar_inverse: length mismatch");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Signal work = c;
    Signal tmp(spec.n);
    for (int len = 2; len <= spec.n; len *= 2) {
        const int half = len / 2;
        for (int i = 0; i < half; ++i) {
            tmp[2 * i] = (work[i] + work[half + i]) * inv_sqrt2;
            tmp[2 * i + 1] = (work[i] - work[half + i]) * inv_sqrt2;
        }
        work.head(len) = tmp.head(len);
    }
    return work;
}

double eval_piecewise_f(double x) {
    if (x < 0.0 || x > 1.0)
        throw std::domain_error("eval_piecewise_f: x outside [0,1]");
    double sum = 0.0;
    for (int i = 1; i <= 10; ++i) {
        const double sgn_arg = x - std::pow(1.3, i - 9);
        const double sgn = (sgn_arg > 0.0) ? 1.0 : (sgn_arg < 0.0 ? -1.0 : 0.0);
        const double parity = (i % 5) % 2 == 0 ? 1.0 : -1.0;  // (-1)^(i mod 5)
        const int p = i % 3;
        const double poly = (p == 0) ? 1.0 : std::pow(x, p);
        sum += parity * poly * sgn;
    }
    return sum;
}

Signal sample_f_midpoints(int grid_size) {
    Signal v(grid_size);
    for (int i = 0; i < grid_size; ++i)
        v[i] = Complex(eval_piecewise_f((i + 0.5) / grid_size), 0.0);
    return v;
}

Signal haar_coefficients_of_f(const HaarBasisSpec& spec, int oversample) {
    if (oversample < 2 || (oversample & (oversample - 1)) != 0)
        throw std::invalid_argument("haar_coefficients_of_f: oversample must be a power of two >= 2");
    const int grid = oversample * spec.n;
    Signal fine = haar_forward(sample_f_midpoints(grid), HaarBasisSpec(grid));
    const double rescale = std::sqrt(static_cast<double>(spec.n) / grid);
    return rescale * fine.head(spec.n);
}

namespace {

// \int_a^b e^{-i w t} dt
Complex segment_integral(double a, double b, double w) {
    if (w == 0.0) return Complex(b - a, 0.0);
    const Complex iw(0.0, w);
    return (std::exp(-iw * a) - std::exp(-iw * b)) / iw;
}

// Continuous Fourier transform of the n-th (0-based) Haar basis function on
// [0,1] at angular frequency w.
Complex haar_fourier(int n, double w) {
    if (n == 0) return segment_integral(0.0, 1.0, w);
    // wavelet: 1-based index n+1 in (2^j, 2^(j+1)] at scale j
    int j = 0;
    while ((1 << (j + 1)) < n + 1) ++j;
    const int p = n - (1 << j);
    const double width = 1.0 / (1 << j);
    const double a = p * width, mid = a + width / 2.0, b = a + width;
    const double height = std::pow(2.0, j / 2.0);
    return height * (segment_integral(a, mid, w) - segment_integral(mid, b, w));
}

}  // namespace

OperatorPtr fourier_of_haar_matrix(const std::vector<long>& frequencies, const HaarBasisSpec& spec) {
    DenseMatrix a(frequencies.size(), spec.n);
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        const double w = 2.0 * M_PI * static_cast<double>(frequencies[i]);
        for (int n = 0; n < spec.n; ++n) a(i, n) = haar_fourier(n, w);
    }
    return std::make_shared<DenseOperator>(std::move(a));
}

}  // namespace csl

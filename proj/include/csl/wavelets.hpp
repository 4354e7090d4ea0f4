#pragma once

#include "csl/operators.hpp"
#include "csl/types.hpp"

namespace csl {

// Orthonormal discrete Haar basis of size N = 2^J: scaling vector first, then
// wavelets by increasing scale, within a scale by position.
struct HaarBasisSpec {
    int n;
    explicit HaarBasisSpec(int n_) : n(n_) {
        if (n < 1 || (n & (n - 1)) != 0)
            throw std::invalid_argument("HaarBasisSpec: N must be a power of two");
    }
    int num_scales() const {
        int j = 0;
        while ((1 << j) < n) ++j;
        return j;
    }
};

Signal haar_forward(const Signal& v, const HaarBasisSpec& spec);
Signal haar_inverse(const Signal& c, const HaarBasisSpec& spec);

// Piecewise smooth test function on [0,1] with jumps at 1.3^(i-9), i = 1..9.
double eval_piecewise_f(double x);

// Coefficients sqrt(N) * <f, phi_n> of the test function against the first N
// continuum Haar functions, via midpoint sampling on an (oversample * N) grid.
Signal haar_coefficients_of_f(const HaarBasisSpec& spec, int oversample);

// Fine-grid samples of f (midpoints of an (oversample * N) uniform grid) and
// their full discrete Haar coefficients; used for L2 error evaluation.
Signal sample_f_midpoints(int grid_size);

// Closed-form continuous Fourier transforms of the Haar basis functions at
// angular frequencies 2*pi*k: entry (i, n) = \hat{phi_n}(2 pi k_i).
OperatorPtr fourier_of_haar_matrix(const std::vector<long>& frequencies, const HaarBasisSpec& spec);

}  // namespace csl

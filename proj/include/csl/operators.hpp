#pragma once

#include <memory>

#include "csl/sampling.hpp"
#include "csl/types.hpp"

namespace csl {

class LinearOperator {
public:
    virtual ~LinearOperator() = default;

    virtual int rows() const = 0;
    virtual int cols() const = 0;
    virtual Signal apply(const Signal& v) const = 0;
    virtual Signal apply_adjoint(const Signal& u) const = 0;

    // j-th column (0-based); default is a forward apply of a unit vector.
    virtual Signal column(int j) const;

    Signal operator*(const Signal& v) const { return apply(v); }

    DenseMatrix to_dense() const;
};

using OperatorPtr = std::shared_ptr<const LinearOperator>;

class DenseOperator final : public LinearOperator {
public:
    explicit DenseOperator(DenseMatrix a) : a_(std::move(a)) {}

    int rows() const override { return static_cast<int>(a_.rows()); }
    int cols() const override { return static_cast<int>(a_.cols()); }
    Signal apply(const Signal& v) const override { return a_ * v; }
    Signal apply_adjoint(const Signal& u) const override { return a_.adjoint() * u; }
    Signal column(int j) const override { return a_.col(j); }

    const DenseMatrix& matrix() const { return a_; }

private:
    DenseMatrix a_;
};

// m x N real Gaussian matrix, entries i.i.d. N(0, 1/m). Entries drawn in
// column-major order.
OperatorPtr gaussian_operator(int m, int n, Rng& rng);

// Rows of the unitary N-point DFT selected by the scheme, each row scaled by
// sqrt((N_k - N_{k-1}) / m_k) for its sampling level. Matrix-free via FFT.
OperatorPtr subsampled_dft_operator(const SamplingScheme& scheme, int n);

OperatorPtr compose(OperatorPtr outer, OperatorPtr inner);
OperatorPtr scale(OperatorPtr op, Complex c);
OperatorPtr identity_operator(int n);

// Least-squares solve restricted to support U; minimum-norm on rank
// deficiency. U is 0-based.
Signal restricted_least_squares(const LinearOperator& a, const Signal& y, const SupportSet& u);

}  // namespace csl

#include "csl/operators.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace csl {

Signal LinearOperator::column(int j) const {
    Signal e = Signal::Zero(cols());
    e[j] = Complex(1.0, 0.0);
    return apply(e);
}

DenseMatrix LinearOperator::to_dense() const {
    DenseMatrix a(rows(), cols());
    for (int j = 0; j < cols(); ++j) a.col(j) = column(j);
    return a;
}

OperatorPtr gaussian_operator(int m, int n, Rng& rng) {
    if (m < 1 || n < 1)
        throw std::invalid_argument("gaussian_operator: dimensions must be positive");
    const double sigma = 1.0 / std::sqrt(static_cast<double>(m));
    DenseMatrix a(m, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i)
            a(i, j) = Complex(sigma * rng.normal(), 0.0);
    return std::make_shared<DenseOperator>(std::move(a));
}

namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex g_fftw_plan_mutex;

// Unitary DFT of length n (sign -1 forward, +1 inverse; both scaled 1/sqrt(n)).
Signal unitary_dft(const Signal& v, int sign) {
    const int n = static_cast<int>(v.size());
    Signal out(n);
    {
        std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
        fftw_plan plan = fftw_plan_dft_1d(
            n, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(v.data())),
            reinterpret_cast<fftw_complex*>(out.data()),
            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    out /= std::sqrt(static_cast<double>(n));
    return out;
}

class SubsampledDftOperator final : public LinearOperator {
public:
    SubsampledDftOperator(SamplingScheme scheme, int n)
        : scheme_(std::move(scheme)), n_(n) {
        if (scheme_.total_measurements() == 0)
            throw std::invalid_argument("subsampled_dft_operator: empty sampling set");
        for (const auto& e : scheme_.entries()) {
            if (e.row < 0 || e.row >= n)
                throw std::invalid_argument("subsampled_dft_operator: row index out of range");
            scales_.push_back(scheme_.level_scale(e.level));
        }
    }

    int rows() const override { return scheme_.total_measurements(); }
    int cols() const override { return n_; }

    Signal apply(const Signal& v) const override {
        if (v.size() != n_) throw std::invalid_argument("subsampled_dft_operator: bad input length");
        Signal full = unitary_dft(v, -1);
        Signal out(rows());
        const auto& entries = scheme_.entries();
        for (int i = 0; i < rows(); ++i) out[i] = scales_[i] * full[entries[i].row];
        return out;
    }

    Signal apply_adjoint(const Signal& u) const override {
        if (u.size() != rows()) throw std::invalid_argument("subsampled_dft_operator: bad input length");
        Signal full = Signal::Zero(n_);
        const auto& entries = scheme_.entries();
        for (int i = 0; i < rows(); ++i) full[entries[i].row] += scales_[i] * u[i];
        return unitary_dft(full, +1);
    }

private:
    SamplingScheme scheme_;
    int n_;
    std::vector<double> scales_;
};

class ComposedOperator final : public LinearOperator {
public:
    ComposedOperator(OperatorPtr outer, OperatorPtr inner)
        : outer_(std::move(outer)), inner_(std::move(inner)) {
        if (outer_->cols() != inner_->rows())
            throw std::invalid_argument("compose: dimension mismatch");
    }

    int rows() const override { return outer_->rows(); }
    int cols() const override { return inner_->cols(); }
    Signal apply(const Signal& v) const override { return outer_->apply(inner_->apply(v)); }
    Signal apply_adjoint(const Signal& u) const override {
        return inner_->apply_adjoint(outer_->apply_adjoint(u));
    }
    Signal column(int j) const override { return outer_->apply(inner_->column(j)); }

private:
    OperatorPtr outer_;
    OperatorPtr inner_;
};

class ScaledOperator final : public LinearOperator {
public:
    ScaledOperator(OperatorPtr op, Complex c) : op_(std::move(op)), c_(c) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("scale: non-finite factor");
    }

    int rows() const override { return op_->rows(); }
    int cols() const override { return op_->cols(); }
    Signal apply(const Signal& v) const override { return c_ * op_->apply(v); }
    Signal apply_adjoint(const Signal& u) const override {
        return std::conj(c_) * op_->apply_adjoint(u);
    }
    Signal column(int j) const override { return c_ * op_->column(j); }

private:
    OperatorPtr op_;
    Complex c_;
};

class IdentityOperator final : public LinearOperator {
public:
    explicit IdentityOperator(int n) : n_(n) {}
    int rows() const override { return n_; }
    int cols() const override { return n_; }
    Signal apply(const Signal& v) const override { return v; }
    Signal apply_adjoint(const Signal& u) const override { return u; }

private:
    int n_;
};

}  // namespace

OperatorPtr subsampled_dft_operator(const SamplingScheme& scheme, int n) {
    return std::make_shared<SubsampledDftOperator>(scheme, n);
}

OperatorPtr compose(OperatorPtr outer, OperatorPtr inner) {
    return std::make_shared<ComposedOperator>(std::move(outer), std::move(inner));
}

OperatorPtr scale(OperatorPtr op, Complex c) {
    return std::make_shared<ScaledOperator>(std::move(op), c);
}

OperatorPtr identity_operator(int n) { return std::make_shared<IdentityOperator>(n); }

Signal restricted_least_squares(const LinearOperator& a, const Signal& y, const SupportSet& u) {
    Signal z = Signal::Zero(a.cols());
    if (u.empty()) return z;
    DenseMatrix sub(a.rows(), u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (u[j] < 0 || u[j] >= a.cols())
            throw std::invalid_argument("restricted_least_squares: index out of range");
        sub.col(j) = a.column(u[j]);
    }
    // complete orthogonal decomposition gives the minimum-norm solution on
    // rank deficiency
    Eigen::VectorXcd w = sub.completeOrthogonalDecomposition().solve(y);
    for (std::size_t j = 0; j < u.size(); ++j) z[u[j]] = w[j];
    return z;
}

}  // namespace csl

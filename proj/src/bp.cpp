#include "csl/bp.hpp"

#include <cmath>

namespace csl {

namespace {

// complex soft thresholding: shrink magnitude, keep phase
Signal shrink(const Signal& v, double t) {
    Signal out(v.size());
    for (int i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        out[i] = (mag <= t) ? Complex(0.0, 0.0) : v[i] * ((mag - t) / mag);
    }
    return out;
}

double operator_norm_estimate(const LinearOperator& a, int iterations = 50) {
    Rng rng(0x9e3779b9u);
    Signal v(a.cols());
    for (int i = 0; i < v.size(); ++i) v[i] = Complex(rng.normal(), 0.0);
    v /= v.norm();
    double norm = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Signal w = a.apply_adjoint(a.apply(v));
        norm = std::sqrt(w.norm());
        if (w.norm() == 0.0) return 0.0;
        v = w / w.norm();
    }
    return norm;
}

}  // namespace

BpResult basis_pursuit(const LinearOperator& a, const Signal& y, double tol, long max_iterations) {
    if (a.rows() > a.cols())
        throw std::invalid_argument("basis_pursuit: overdetermined system");
    if (tol <= 0.0)
        throw std::invalid_argument("basis_pursuit: tol must be positive");

    BpResult result;
    const double y_norm = y.norm();
    if (y_norm == 0.0) {
        result.estimate = Signal::Zero(a.cols());
        result.converged = true;
        return result;
    }
    // solve with y normalized to unit norm so the iteration is scale
    // equivariant, rescale the solution at the end
    const Signal yn = y / y_norm;

    const double op_norm = operator_norm_estimate(a);
    const double step = 0.95 / std::max(op_norm, 1e-300);
    const double tau = step, sigma = step;

    Signal z = Signal::Zero(a.cols());
    Signal z_bar = z;
    Signal w = Signal::Zero(a.rows());

    const int check_every = 50;
    for (long n = 1; n <= max_iterations; ++n) {
        w += sigma * (a.apply(z_bar) - yn);
        Signal z_next = shrink(z - tau * a.apply_adjoint(w), tau);
        z_bar = 2.0 * z_next - z;
        z = std::move(z_next);
        result.iterations_used = static_cast<int>(n);

        if (n % check_every == 0 || n == max_iterations) {
            const double feas = (a.apply(z) - yn).norm();
            // rescale the dual variable into the feasible set ||A* w||_inf <= 1
            Signal atw = a.apply_adjoint(w);
            double inf_norm = 0.0;
            for (int i = 0; i < atw.size(); ++i) inf_norm = std::max(inf_norm, std::abs(atw[i]));
            // at optimality -A*w is a subgradient of the l1 norm, so the
            // dual candidate is -w rescaled into ||A* w||_inf <= 1
            const double dual_value = -yn.dot(w).real() / std::max(1.0, inf_norm);
            const double obj = z.lpNorm<1>();
            const double gap = obj - dual_value;
            result.feasibility = feas;
            result.duality_gap = gap;
            if (feas <= tol && gap <= tol * std::max(1.0, obj)) {
                result.converged = true;
                break;
            }
        }
    }
    result.estimate = y_norm * z;
    return result;
}

}  // namespace csl

#pragma once

#include "csl/operators.hpp"
#include "csl/types.hpp"

namespace csl {

struct BpResult {
    Signal estimate;
    int iterations_used = 0;
    bool converged = false;
    double feasibility = 0.0;   // ||A z - y|| / ||y||
    double duality_gap = 0.0;   // ||z||_1 - <y, w> with w dual-feasible
};

// Equality-constrained basis pursuit: min ||z||_1 s.t. Az = y, solved with a
// primal-dual splitting iteration. Convergence is certified by feasibility
// and the duality gap of the rescaled dual variable.
BpResult basis_pursuit(const LinearOperator& a, const Signal& y, double tol = 1e-6,
                       long max_iterations = 1000000);

}  // namespace csl

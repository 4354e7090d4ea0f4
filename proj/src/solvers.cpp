#include "csl/solvers.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include "csl/model.hpp"
#include "csl/thresholding.hpp"

namespace csl {

namespace {

constexpr double kStopDenominatorFloor = 1e-14;

void check_dims(const LinearOperator& a, const Signal& y) {
    if (y.size() != a.rows())
        throw std::invalid_argument("solver: y length does not match operator rows");
}

SupportSet merge_supports(const SupportSet& a, const SupportSet& b) {
    SupportSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Shared iteration driver: step maps the current iterate to the next one.
SolverResult run_iteration(const LinearOperator& a, const Signal& y, const SolverConfig& cfg,
                           const std::function<Signal(const Signal&)>& step) {
    SolverResult result;
    Signal x = Signal::Zero(a.cols());
    for (int n = 0; n < cfg.max_iterations; ++n) {
        Signal next = step(x);
        const double increment = (next - x).norm();
        const double denom = std::max(x.norm(), kStopDenominatorFloor);
        x = std::move(next);
        result.iterations_used = n + 1;
        if (cfg.record_history) {
            double err = cfg.truth ? (x - *cfg.truth).norm() : -1.0;
            result.history.push_back({n + 1, (y - a.apply(x)).norm(), increment, err});
        }
        if (increment / denom < cfg.increment_tolerance) {
            result.stop_reason = StopReason::converged;
            result.estimate = std::move(x);
            return result;
        }
    }
    result.stop_reason = StopReason::max_iterations;
    result.estimate = std::move(x);
    return result;
}

}  // namespace

SolverResult iht(const LinearOperator& a, const Signal& y, int s, const SolverConfig& cfg) {
    check_dims(a, y);
    if (s < 1 || s > a.cols())
        throw std::invalid_argument("iht: sparsity out of range");
    return run_iteration(a, y, cfg, [&](const Signal& x) {
        return hard_threshold(x + a.apply_adjoint(y - a.apply(x)), s);
    });
}

SolverResult ihtl(const LinearOperator& a, const Signal& y, const LocalSparsities& s,
                  const LevelStructure& levels, const SolverConfig& cfg) {
    check_dims(a, y);
    if (levels.dimension() != a.cols())
        throw std::invalid_argument("ihtl: M_r does not match operator columns");
    s.validate_against(levels);
    return run_iteration(a, y, cfg, [&](const Signal& x) {
        return hard_threshold_levels(x + a.apply_adjoint(y - a.apply(x)), s, levels);
    });
}

SolverResult cosamp(const LinearOperator& a, const Signal& y, int s, const SolverConfig& cfg) {
    check_dims(a, y);
    if (s < 1 || s > a.cols())
        throw std::invalid_argument("cosamp: sparsity out of range");
    const int n = a.cols();
    return run_iteration(a, y, cfg, [&, n](const Signal& x) {
        Signal corr = a.apply_adjoint(y - a.apply(x));
        SupportSet u = merge_supports(support(x), largest_indices(corr, std::min(2 * s, n)));
        Signal ls = restricted_least_squares(a, y, u);
        return hard_threshold(ls, s);
    });
}

SolverResult cosampl(const LinearOperator& a, const Signal& y, const LocalSparsities& s,
                     const LevelStructure& levels, const SolverConfig& cfg) {
    check_dims(a, y);
    if (levels.dimension() != a.cols())
        throw std::invalid_argument("cosampl: M_r does not match operator columns");
    s.validate_against(levels);
    // 2s_k, clipped to the level size
    std::vector<int> doubled(levels.num_levels());
    for (int k = 0; k < levels.num_levels(); ++k)
        doubled[k] = std::min(2 * s.count(k), levels.level_size(k));
    LocalSparsities s2{doubled};
    return run_iteration(a, y, cfg, [&, s2](const Signal& x) {
        Signal corr = a.apply_adjoint(y - a.apply(x));
        SupportSet u = merge_supports(support(x), largest_indices_levels(corr, s2, levels));
        Signal ls = restricted_least_squares(a, y, u);
        return hard_threshold_levels(ls, s, levels);
    });
}

void write_history_csv(const SolverResult& result, std::ostream& os) {
    os << "iteration,residual_norm,increment_norm,error_vs_truth\n";
    for (const auto& rec : result.history) {
        os << rec.iteration << "," << rec.residual_norm << "," << rec.increment_norm << ",";
        if (rec.error_vs_truth >= 0.0) os << rec.error_vs_truth;
        os << "\n";
    }
}

}  // namespace csl

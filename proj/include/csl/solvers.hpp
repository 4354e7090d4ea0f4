#pragma once

#include <iosfwd>
#include <optional>

#include "csl/operators.hpp"
#include "csl/types.hpp"

namespace csl {

struct SolverConfig {
    int max_iterations = 1000;
    double increment_tolerance = 1e-4;
    bool record_history = false;
    // ground truth for the error column of the history; not used by the
    // iteration itself
    std::optional<Signal> truth;
};

enum class StopReason { converged, max_iterations };

struct IterationRecord {
    int iteration;
    double residual_norm;
    double increment_norm;
    double error_vs_truth;  // -1 when no truth given
};

struct SolverResult {
    Signal estimate;
    int iterations_used = 0;
    StopReason stop_reason = StopReason::converged;
    std::vector<IterationRecord> history;
};

SolverResult iht(const LinearOperator& a, const Signal& y, int s, const SolverConfig& cfg);
SolverResult ihtl(const LinearOperator& a, const Signal& y, const LocalSparsities& s,
                  const LevelStructure& levels, const SolverConfig& cfg);
SolverResult cosamp(const LinearOperator& a, const Signal& y, int s, const SolverConfig& cfg);
SolverResult cosampl(const LinearOperator& a, const Signal& y, const LocalSparsities& s,
                     const LevelStructure& levels, const SolverConfig& cfg);

void write_history_csv(const SolverResult& result, std::ostream& os);

}  // namespace csl

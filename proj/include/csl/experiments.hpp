#pragma once

#include <cstdint>
#include <string>

#include "csl/solvers.hpp"
#include "csl/types.hpp"

namespace csl {

enum class SolverKind { iht, cosamp, ihtl, cosampl };
enum class EncoderKind { gaussian, fourier };
enum class DecoderKind { bp, iht, cosamp, ihtl, cosampl };

std::string to_string(SolverKind k);
std::string to_string(EncoderKind k);
std::string to_string(DecoderKind k);
SolverKind solver_kind_from_string(const std::string& name);
EncoderKind encoder_kind_from_string(const std::string& name);
DecoderKind decoder_kind_from_string(const std::string& name);

// Signal model for one experiment cell: the truth is always drawn sparse in
// levels; unstructured solvers run at the total sparsity.
struct ModelSpec {
    LocalSparsities local;
    LevelStructure levels;
};

struct TrialOutcome {
    double relative_error = 0.0;
    bool success = false;
    int iterations = 0;
    std::uint64_t seed = 0;
};

struct PhaseCell {
    SolverKind solver;
    int m = 0;
    int total_sparsity = 0;
    ModelSpec model;
    int trials = 0;
    int successes = 0;
    double probability = 0.0;
    double mean_error = 0.0;
};

struct PhaseTransitionResult {
    int n = 0;
    std::uint64_t master_seed = 0;
    double success_threshold = 1e-2;
    std::vector<PhaseCell> cells;
};

struct ApproxCell {
    EncoderKind encoder;
    DecoderKind decoder;
    double c = 0.0;
    int m = 0;
    int runs = 0;
    double mean_rel_l2 = 0.0;
    double median_rel_l2 = 0.0;
};

struct ApproximationSweepResult {
    int n = 0;
    std::uint64_t master_seed = 0;
    std::vector<ApproxCell> cells;
};

// One noiseless recovery trial: Gaussian A, (s,M)-sparse truth, solver run
// with the phase-transition stopping rule. The trial seed fixes (A, x)
// independently of the solver, so paired comparisons see identical data.
TrialOutcome run_trial(SolverKind solver, int m, const ModelSpec& model, int n,
                       std::uint64_t trial_seed, const SolverConfig& cfg,
                       double success_threshold = 1e-2, double noise_sigma = 0.0);

PhaseTransitionResult phase_transition_line(const std::vector<SolverKind>& solvers,
                                            const std::vector<ModelSpec>& models, int n,
                                            const std::vector<int>& m_grid, int trials,
                                            std::uint64_t master_seed, int jobs = 1,
                                            double noise_sigma = 0.0);

PhaseTransitionResult phase_transition_grid(const std::vector<SolverKind>& solvers,
                                            const std::vector<ModelSpec>& models, int n,
                                            const std::vector<int>& m_grid, int trials,
                                            std::uint64_t master_seed, int jobs = 1,
                                            double noise_sigma = 0.0);

ApproximationSweepResult function_approx_sweep(const std::vector<EncoderKind>& encoders,
                                               const std::vector<DecoderKind>& decoders,
                                               const std::vector<int>& m_list,
                                               const std::vector<double>& c_list, int n, int runs,
                                               std::uint64_t master_seed, int jobs = 1,
                                               long bp_max_iterations = 1000000);

// Saturated family: M = (a*s, N), local sparsities (a*s, (1-a)*s).
ModelSpec saturated_two_level_model(int s, double a, int n);

// Equal-size level split with per-level fractions of the total sparsity.
ModelSpec fractional_model(int s, const std::vector<double>& fractions, int n);

}  // namespace csl

#include "csl/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "csl/bp.hpp"
#include "csl/model.hpp"
#include "csl/operators.hpp"
#include "csl/sampling.hpp"
#include "csl/wavelets.hpp"

namespace csl {

std::string to_string(SolverKind k) {
    switch (k) {
        case SolverKind::iht: return "iht";
        case SolverKind::cosamp: return "cosamp";
        case SolverKind::ihtl: return "ihtl";
        case SolverKind::cosampl: return "cosampl";
    }
    return "?";
}

std::string to_string(EncoderKind k) {
    return k == EncoderKind::gaussian ? "gaussian" : "fourier";
}

std::string to_string(DecoderKind k) {
    switch (k) {
        case DecoderKind::bp: return "bp";
        case DecoderKind::iht: return "iht";
        case DecoderKind::cosamp: return "cosamp";
        case DecoderKind::ihtl: return "ihtl";
        case DecoderKind::cosampl: return "cosampl";
    }
    return "?";
}

SolverKind solver_kind_from_string(const std::string& name) {
    if (name == "iht") return SolverKind::iht;
    if (name == "cosamp") return SolverKind::cosamp;
    if (name == "ihtl") return SolverKind::ihtl;
    if (name == "cosampl") return SolverKind::cosampl;
    throw std::invalid_argument("unknown solver: " + name);
}

EncoderKind encoder_kind_from_string(const std::string& name) {
    if (name == "gaussian") return EncoderKind::gaussian;
    if (name == "fourier") return EncoderKind::fourier;
    throw std::invalid_argument("unknown encoder: " + name);
}

DecoderKind decoder_kind_from_string(const std::string& name) {
    if (name == "bp") return DecoderKind::bp;
    return static_cast<DecoderKind>(static_cast<int>(solver_kind_from_string(name)) + 1);
}

namespace {

// Deterministic parallel map: worker threads pull indices from a counter and
// write results into preallocated slots, so the output is independent of the
// schedule.
void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
}

SolverResult dispatch_solver(SolverKind kind, const LinearOperator& a, const Signal& y,
                             const ModelSpec& model, const SolverConfig& cfg) {
    switch (kind) {
        case SolverKind::iht: return iht(a, y, model.local.total(), cfg);
        case SolverKind::cosamp: return cosamp(a, y, model.local.total(), cfg);
        case SolverKind::ihtl: return ihtl(a, y, model.local, model.levels, cfg);
        case SolverKind::cosampl: return cosampl(a, y, model.local, model.levels, cfg);
    }
    throw std::logic_error("dispatch_solver: bad kind");
}

bool uses_landweber_rescaling(SolverKind kind) {
    return kind == SolverKind::iht || kind == SolverKind::ihtl;
}

}  // namespace

TrialOutcome run_trial(SolverKind solver, int m, const ModelSpec& model, int n,
                       std::uint64_t trial_seed, const SolverConfig& cfg,
                       double success_threshold, double noise_sigma) {
    if (model.levels.dimension() != n)
        throw std::invalid_argument("run_trial: model dimension does not match N");
    Rng rng(trial_seed);
    OperatorPtr a = gaussian_operator(m, n, rng);
    Signal x = random_sparse_in_levels(model.local, model.levels, rng);
    Signal y = a->apply(x);
    if (noise_sigma > 0.0)
        for (int i = 0; i < y.size(); ++i) y[i] += Complex(noise_sigma * rng.normal(), 0.0);

    OperatorPtr a_used = a;
    Signal y_used = y;
    if (uses_landweber_rescaling(solver)) {
        const double factor = std::sqrt(static_cast<double>(m) / n);
        a_used = scale(a, factor);
        y_used = factor * y;
    }
    SolverResult res = dispatch_solver(solver, *a_used, y_used, model, cfg);

    TrialOutcome out;
    out.seed = trial_seed;
    out.iterations = res.iterations_used;
    const double x_norm = x.norm();
    out.relative_error = x_norm > 0.0 ? (x - res.estimate).norm() / x_norm : res.estimate.norm();
    out.success = out.relative_error < success_threshold;
    return out;
}

namespace {

PhaseTransitionResult run_phase_cells(const std::vector<SolverKind>& solvers,
                                      const std::vector<ModelSpec>& models, int n,
                                      const std::vector<int>& m_grid, int trials,
                                      std::uint64_t master_seed, int jobs, double noise_sigma) {
    if (trials < 1) throw std::invalid_argument("phase transition: trials must be >= 1");
    PhaseTransitionResult result;
    result.n = n;
    result.master_seed = master_seed;

    struct Task {
        std::size_t cell;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (std::size_t si = 0; si < models.size(); ++si) {
        for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
            // data seed cell: model x m only, shared by all solvers
            const std::uint64_t data_cell = si * 100003ULL + mi;
            for (SolverKind solver : solvers) {
                PhaseCell cell{solver, m_grid[mi], models[si].local.total(), models[si],
                               trials, 0, 0.0, 0.0};
                const std::size_t cell_index = result.cells.size();
                result.cells.push_back(cell);
                for (int t = 0; t < trials; ++t)
                    tasks.push_back({cell_index, derive_seed(master_seed, data_cell, t)});
            }
        }
    }

    std::vector<TrialOutcome> outcomes(tasks.size());
    SolverConfig cfg;
    cfg.max_iterations = 1000;
    cfg.increment_tolerance = 1e-4;
    parallel_for(static_cast<int>(tasks.size()), jobs, [&](int i) {
        const Task& task = tasks[i];
        const PhaseCell& cell = result.cells[task.cell];
        outcomes[i] = run_trial(cell.solver, cell.m, cell.model, n, task.seed, cfg,
                                result.success_threshold, noise_sigma);
    });

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        PhaseCell& cell = result.cells[tasks[i].cell];
        if (outcomes[i].success) cell.successes++;
        cell.mean_error += outcomes[i].relative_error / trials;
    }
    for (PhaseCell& cell : result.cells)
        cell.probability = static_cast<double>(cell.successes) / cell.trials;
    return result;
}

}  // namespace

PhaseTransitionResult phase_transition_line(const std::vector<SolverKind>& solvers,
                                            const std::vector<ModelSpec>& models, int n,
                                            const std::vector<int>& m_grid, int trials,
                                            std::uint64_t master_seed, int jobs,
                                            double noise_sigma) {
    return run_phase_cells(solvers, models, n, m_grid, trials, master_seed, jobs, noise_sigma);
}

PhaseTransitionResult phase_transition_grid(const std::vector<SolverKind>& solvers,
                                            const std::vector<ModelSpec>& models, int n,
                                            const std::vector<int>& m_grid, int trials,
                                            std::uint64_t master_seed, int jobs,
                                            double noise_sigma) {
    // the grid is the same cell product; models carry the s axis
    return run_phase_cells(solvers, models, n, m_grid, trials, master_seed, jobs, noise_sigma);
}

ModelSpec saturated_two_level_model(int s, double a, int n) {
    const int s1 = static_cast<int>(std::lround(a * s));
    if (s1 < 1 || s1 >= s || s > n)
        throw std::invalid_argument("saturated_two_level_model: infeasible (s, a)");
    return {LocalSparsities({s1, s - s1}), LevelStructure({s1, n})};
}

ModelSpec fractional_model(int s, const std::vector<double>& fractions, int n) {
    const int r = static_cast<int>(fractions.size());
    if (r < 1 || n % r != 0)
        throw std::invalid_argument("fractional_model: N must split into equal levels");
    std::vector<int> boundaries(r), counts(r);
    int assigned = 0;
    for (int k = 0; k < r; ++k) {
        boundaries[k] = (k + 1) * (n / r);
        counts[k] = static_cast<int>(std::lround(fractions[k] * s));
        assigned += counts[k];
    }
    if (assigned != s)
        counts[r - 1] += s - assigned;  // rounding remainder goes to the last level
    return {LocalSparsities(counts), LevelStructure(boundaries)};
}

namespace {

struct ApproxProblem {
    // fixed per N: truth coefficients and the fine-grid Haar expansion used
    // for L2 errors
    Signal truth;       // sqrt(N) <f, phi_n>, n < N
    Signal fine_coeffs; // full Haar coefficients of f on the oversampled grid
    int n;
    int grid;
};

ApproxProblem make_problem(int n, int oversample = 8) {
    ApproxProblem p;
    p.n = n;
    p.grid = oversample * n;
    p.fine_coeffs = haar_forward(sample_f_midpoints(p.grid), HaarBasisSpec(p.grid));
    p.truth = std::sqrt(static_cast<double>(n) / p.grid) * p.fine_coeffs.head(n);
    return p;
}

// relative L2 error of the reconstruction on the oversampled grid, Haar
// truncation tail included
double relative_l2_error(const ApproxProblem& p, const Signal& estimate) {
    const double lift = std::sqrt(static_cast<double>(p.grid) / p.n);
    double err2 = (lift * (p.truth - estimate)).squaredNorm();
    err2 += p.fine_coeffs.tail(p.grid - p.n).squaredNorm();
    return std::sqrt(err2) / p.fine_coeffs.norm();
}

OperatorPtr build_encoder(EncoderKind kind, int m, int n, Rng& rng) {
    if (kind == EncoderKind::gaussian) return gaussian_operator(m, n, rng);
    // Fourier encoder: multilevel frequency draw, closed-form Fourier-Haar
    // rows, level rescaling, 1/sqrt(N) to act on sqrt(N)<f,phi_n>
    int r = 0;
    while ((1 << (r + 1)) <= n) ++r;
    SamplingScheme scheme = fourier_multilevel_scheme(m, r, rng);
    std::vector<long> freqs;
    for (const auto& e : scheme.entries()) freqs.push_back(e.frequency);
    OperatorPtr phi = fourier_of_haar_matrix(freqs, HaarBasisSpec(n));
    DenseMatrix a = std::static_pointer_cast<const DenseOperator>(phi)->matrix();
    const auto& entries = scheme.entries();
    for (int i = 0; i < a.rows(); ++i)
        a.row(i) *= scheme.level_scale(entries[i].level) / std::sqrt(static_cast<double>(n));
    return std::make_shared<DenseOperator>(std::move(a));
}

Signal run_decoder(DecoderKind decoder, const LinearOperator& a, const Signal& y, int s, int n,
                   long bp_max_iterations) {
    if (decoder == DecoderKind::bp)
        return basis_pursuit(a, y, 1e-6, bp_max_iterations).estimate;

    SolverConfig cfg;
    cfg.max_iterations = 1000;
    cfg.increment_tolerance = 1e-8;

    const int s1 = s / 2;
    if ((decoder == DecoderKind::ihtl || decoder == DecoderKind::cosampl) && s1 < 1)
        throw std::invalid_argument("function approx: sparsity too small for the two-level decoder");
    ModelSpec two_level{LocalSparsities({s1, s - s1}), LevelStructure({std::max(s1, 1), n})};

    const SolverKind kind = static_cast<SolverKind>(static_cast<int>(decoder) - 1);
    OperatorPtr scaled_a;
    const LinearOperator* a_used = &a;
    Signal y_used = y;
    if (uses_landweber_rescaling(kind)) {
        const double factor = std::sqrt(static_cast<double>(a.rows()) / a.cols());
        scaled_a = scale(std::make_shared<DenseOperator>(a.to_dense()), factor);
        a_used = scaled_a.get();
        y_used = factor * y;
    }
    switch (kind) {
        case SolverKind::iht: return iht(*a_used, y_used, s, cfg).estimate;
        case SolverKind::cosamp: return cosamp(*a_used, y_used, s, cfg).estimate;
        case SolverKind::ihtl: return ihtl(*a_used, y_used, two_level.local, two_level.levels, cfg).estimate;
        case SolverKind::cosampl:
            return cosampl(*a_used, y_used, two_level.local, two_level.levels, cfg).estimate;
    }
    throw std::logic_error("run_decoder: bad kind");
}

}  // namespace

ApproximationSweepResult function_approx_sweep(const std::vector<EncoderKind>& encoders,
                                               const std::vector<DecoderKind>& decoders,
                                               const std::vector<int>& m_list,
                                               const std::vector<double>& c_list, int n, int runs,
                                               std::uint64_t master_seed, int jobs,
                                               long bp_max_iterations) {
    if (runs < 1) throw std::invalid_argument("function_approx_sweep: runs must be >= 1");
    const ApproxProblem problem = make_problem(n);

    ApproximationSweepResult result;
    result.n = n;
    result.master_seed = master_seed;

    struct Task {
        std::size_t cell;
        std::uint64_t seed;
        EncoderKind encoder;
        DecoderKind decoder;
        int m;
        int s;
    };
    std::vector<Task> tasks;
    for (std::size_t ei = 0; ei < encoders.size(); ++ei) {
        for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
            // encoder seed cell: (encoder, m, run); shared across decoders and C
            const std::uint64_t data_cell = 7000003ULL * ei + mi;
            for (double c : c_list) {
                const int s = std::max(1, static_cast<int>(std::lround(m_list[mi] / c)));
                for (DecoderKind decoder : decoders) {
                    ApproxCell cell;
                    cell.encoder = encoders[ei];
                    cell.decoder = decoder;
                    cell.c = c;
                    cell.m = m_list[mi];
                    cell.runs = runs;
                    const std::size_t cell_index = result.cells.size();
                    result.cells.push_back(cell);
                    for (int run = 0; run < runs; ++run)
                        tasks.push_back({cell_index, derive_seed(master_seed, data_cell, run),
                                         encoders[ei], decoder, m_list[mi], s});
                }
            }
        }
    }

    std::vector<double> errors(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), jobs, [&](int i) {
        const Task& task = tasks[i];
        Rng rng(task.seed);
        OperatorPtr a = build_encoder(task.encoder, task.m, n, rng);
        Signal y = a->apply(problem.truth);
        Signal estimate = run_decoder(task.decoder, *a, y, task.s, n, bp_max_iterations);
        errors[i] = relative_l2_error(problem, estimate);
    });

    std::vector<std::vector<double>> per_cell(result.cells.size());
    for (std::size_t i = 0; i < tasks.size(); ++i)
        per_cell[tasks[i].cell].push_back(errors[i]);
    for (std::size_t c = 0; c < result.cells.size(); ++c) {
        auto& v = per_cell[c];
        std::sort(v.begin(), v.end());
        double mean = 0.0;
        for (double e : v) mean += e / v.size();
        result.cells[c].mean_rel_l2 = mean;
        const std::size_t mid = v.size() / 2;
        result.cells[c].median_rel_l2 =
            v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
    }
    return result;
}

}  // namespace csl

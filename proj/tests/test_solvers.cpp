#include <doctest.h>

#include <cmath>

#include "csl/model.hpp"
#include "csl/operators.hpp"
#include "csl/solvers.hpp"
#include "csl/thresholding.hpp"
#include "csl/verification.hpp"
#include "test_util.hpp"

using namespace csl;

namespace {

SolverConfig tight_config() {
    SolverConfig cfg;
    cfg.max_iterations = 1000;
    cfg.increment_tolerance = 1e-4;
    return cfg;
}

struct Instance {
    OperatorPtr a;
    Signal x;
    Signal y;
};

Instance gaussian_instance(int m, int n, const LocalSparsities& s, const LevelStructure& levels,
                           std::uint64_t seed) {
    Rng rng(seed);
    Instance inst;
    inst.a = gaussian_operator(m, n, rng);
    inst.x = random_sparse_in_levels(s, levels, rng);
    inst.y = inst.a->apply(inst.x);
    return inst;
}

}  // namespace

TEST_CASE("identity operator: exact recovery in one iteration") {
    Rng rng(31);
    const int n = 16;
    auto id = identity_operator(n);
    LevelStructure levels({8, 16});
    LocalSparsities s({1, 1});
    Signal x = random_sparse_in_levels(s, levels, rng);

    SolverConfig cfg = tight_config();
    for (auto run : {iht(*id, x, 2, cfg), cosamp(*id, x, 2, cfg)}) {
        CHECK((run.estimate - x).norm() < 1e-12);
        CHECK(run.stop_reason == StopReason::converged);
    }
    for (auto run : {ihtl(*id, x, s, levels, cfg), cosampl(*id, x, s, levels, cfg)}) {
        CHECK((run.estimate - x).norm() < 1e-12);
        CHECK(run.stop_reason == StopReason::converged);
    }
}

TEST_CASE("zero measurements give the zero estimate at iteration 1") {
    Rng rng(32);
    auto a = gaussian_operator(8, 12, rng);
    SolverConfig cfg = tight_config();
    SolverResult r = iht(*a, Signal::Zero(8), 3, cfg);
    CHECK(r.estimate.norm() == 0.0);
    CHECK(r.iterations_used == 1);
    CHECK(cosamp(*a, Signal::Zero(8), 3, cfg).estimate.norm() == 0.0);
}

TEST_CASE("dimension and sparsity validation") {
    Rng rng(33);
    auto a = gaussian_operator(8, 12, rng);
    SolverConfig cfg = tight_config();
    CHECK_THROWS(iht(*a, Signal::Zero(7), 3, cfg));
    CHECK_THROWS(iht(*a, Signal::Zero(8), 0, cfg));
    CHECK_THROWS(iht(*a, Signal::Zero(8), 13, cfg));
    CHECK_THROWS(ihtl(*a, Signal::Zero(8), LocalSparsities({1, 1}), LevelStructure({4, 8}), cfg));
}

TEST_CASE("r=1 levels solvers match their classical counterparts element-wise") {
    const int n = 32, m = 24, s = 4;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Instance inst = gaussian_instance(m, n, LocalSparsities({s}), LevelStructure::single(n), seed);
        SolverConfig cfg = tight_config();
        cfg.record_history = true;

        // the gradient pair runs on the rescaled system it is used with
        const double factor = std::sqrt(static_cast<double>(m) / n);
        auto scaled = scale(inst.a, factor);
        Signal ys = factor * inst.y;
        SolverResult classical = iht(*scaled, ys, s, cfg);
        SolverResult levels = ihtl(*scaled, ys, LocalSparsities({s}), LevelStructure::single(n), cfg);
        CHECK((classical.estimate - levels.estimate).norm() == 0.0);
        REQUIRE(classical.history.size() == levels.history.size());
        for (std::size_t i = 0; i < classical.history.size(); ++i) {
            CHECK(classical.history[i].increment_norm == levels.history[i].increment_norm);
            CHECK(classical.history[i].residual_norm == levels.history[i].residual_norm);
        }

        SolverResult cs = cosamp(*inst.a, inst.y, s, cfg);
        SolverResult csl_r = cosampl(*inst.a, inst.y, LocalSparsities({s}), LevelStructure::single(n), cfg);
        CHECK((cs.estimate - csl_r.estimate).norm() == 0.0);
        REQUIRE(cs.history.size() == csl_r.history.size());
        for (std::size_t i = 0; i < cs.history.size(); ++i)
            CHECK(cs.history[i].increment_norm == csl_r.history[i].increment_norm);
    }
}

TEST_CASE("seeded instances agree with the exhaustive-support oracle") {
    const int n = 16, m = 12, s = 2;
    int cosamp_hits = 0;
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        Instance inst = gaussian_instance(m, n, LocalSparsities({s}), LevelStructure::single(n), seed);
        const DenseMatrix dense = inst.a->to_dense();
        Signal oracle = exhaustive_decoder(dense, inst.y, SparsityModel::classical(s));
        SolverConfig cfg = tight_config();

        const double factor = std::sqrt(static_cast<double>(m) / n);
        auto scaled = scale(inst.a, factor);
        SolverResult ir = iht(*scaled, factor * inst.y, s, cfg);
        if ((ir.estimate - inst.x).norm() < 1e-4 * inst.x.norm())
            CHECK(support(ir.estimate) == support(oracle));

        SolverResult cr = cosamp(*inst.a, inst.y, s, cfg);
        if ((cr.estimate - inst.x).norm() < 1e-6 * inst.x.norm()) {
            ++cosamp_hits;
            CHECK(support(cr.estimate) == support(oracle));
        }
    }
    CHECK(cosamp_hits >= 18);
}

TEST_CASE("estimates always satisfy the sparsity model") {
    Rng seeds(55);
    for (int t = 0; t < 10; ++t) {
        Instance inst = gaussian_instance(20, 40, LocalSparsities({3, 2}), LevelStructure({16, 40}),
                                          1000 + t);
        SolverConfig cfg = tight_config();
        LevelStructure levels({16, 40});
        LocalSparsities s({3, 2});
        CHECK(support(iht(*inst.a, inst.y, 5, cfg).estimate).size() <= 5);
        CHECK(support(cosamp(*inst.a, inst.y, 5, cfg).estimate).size() <= 5);
        CHECK(is_sparse_in_levels(ihtl(*inst.a, inst.y, s, levels, cfg).estimate, s, levels));
        CHECK(is_sparse_in_levels(cosampl(*inst.a, inst.y, s, levels, cfg).estimate, s, levels));
    }
}

TEST_CASE("determinism: identical inputs produce identical results") {
    Instance inst = gaussian_instance(24, 48, LocalSparsities({4, 2}), LevelStructure({24, 48}), 777);
    SolverConfig cfg = tight_config();
    SolverResult r1 = cosampl(*inst.a, inst.y, LocalSparsities({4, 2}), LevelStructure({24, 48}), cfg);
    SolverResult r2 = cosampl(*inst.a, inst.y, LocalSparsities({4, 2}), LevelStructure({24, 48}), cfg);
    CHECK((r1.estimate - r2.estimate).norm() == 0.0);
    CHECK(r1.iterations_used == r2.iterations_used);
}

TEST_CASE("noiseless model-sparse fixed point of the update maps") {
    // if x is model sparse and y = Ax, one explicit update step returns x
    Instance inst = gaussian_instance(24, 32, LocalSparsities({2, 2}), LevelStructure({16, 32}), 4242);
    LevelStructure levels({16, 32});
    LocalSparsities s({2, 2});
    const int total = s.total();

    Signal grad = inst.x + inst.a->apply_adjoint(inst.y - inst.a->apply(inst.x));
    CHECK((hard_threshold(grad, total) - inst.x).norm() < 1e-10);
    CHECK((hard_threshold_levels(grad, s, levels) - inst.x).norm() < 1e-10);

    // CoSaMP step: U contains supp(x); restricted LS on U reproduces x exactly
    SupportSet u = support(inst.x);
    Signal ls = restricted_least_squares(*inst.a, inst.y, u);
    CHECK((hard_threshold(ls, total) - inst.x).norm() < 1e-8);
    CHECK((hard_threshold_levels(ls, s, levels) - inst.x).norm() < 1e-8);
}

TEST_CASE("structured solver succeeds where the unstructured one fails") {
    // two-level (s, 0) pattern: IHTL recovers, IHT does not, same (A, y)
    const int n = 128, m = 70;
    LevelStructure levels({64, 128});
    LocalSparsities s({32, 0});
    SolverConfig cfg = tight_config();
    int structured_wins = 0, unstructured_wins = 0;
    for (std::uint64_t seed = 9000; seed < 9010; ++seed) {
        Instance inst = gaussian_instance(m, n, s, levels, seed);
        const double err_l =
            (cosampl(*inst.a, inst.y, s, levels, cfg).estimate - inst.x).norm() / inst.x.norm();
        const double err_c =
            (cosamp(*inst.a, inst.y, 32, cfg).estimate - inst.x).norm() / inst.x.norm();
        if (err_l < 1e-2) ++structured_wins;
        if (err_c < 1e-2) ++unstructured_wins;
    }
    CHECK(structured_wins == 10);
    CHECK(unstructured_wins <= 2);
}

TEST_CASE("cosampl four-level saturated pattern recovers at m = N/2") {
    const int n = 128, m = 64;
    LevelStructure levels({32, 64, 96, 128});
    LocalSparsities s({16, 0, 16, 0});
    SolverConfig cfg = tight_config();
    int successes = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Instance inst = gaussian_instance(m, n, s, levels, 500 + seed);
        SolverResult r = cosampl(*inst.a, inst.y, s, levels, cfg);
        if ((r.estimate - inst.x).norm() < 1e-2 * inst.x.norm()) ++successes;
    }
    CHECK(successes == 10);
}

TEST_CASE("history recording") {
    Instance inst = gaussian_instance(12, 16, LocalSparsities({2}), LevelStructure::single(16), 606);
    SolverConfig cfg = tight_config();
    cfg.record_history = true;
    cfg.truth = inst.x;
    SolverResult r = cosamp(*inst.a, inst.y, 2, cfg);
    REQUIRE(!r.history.empty());
    CHECK(static_cast<int>(r.history.size()) == r.iterations_used);
    CHECK(r.history.back().error_vs_truth >= 0.0);

    std::ostringstream os;
    write_history_csv(r, os);
    CHECK(os.str().rfind("iteration,residual_norm,increment_norm,error_vs_truth\n", 0) == 0);
}

#include "csl/verification.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace csl {

namespace {

constexpr double kEnumerationBudget = 1e6;

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= static_cast<double>(n - k + i) / i;
    return v;
}

double support_count(int n, const SparsityModel& model) {
    if (!model.is_levels()) return binomial(n, model.total);
    double total = 1.0;
    int prev = 0;
    for (std::size_t k = 0; k < model.boundaries.size(); ++k) {
        total *= binomial(model.boundaries[k] - prev, model.local[k]);
        prev = model.boundaries[k];
    }
    return total;
}

// all size-k subsets of [lo, hi), sorted, appended to base
void combinations(int lo, int hi, int k, SupportSet& base,
                  const std::function<void(SupportSet&)>& visit) {
    if (k == 0) {
        visit(base);
        return;
    }
    for (int i = lo; i <= hi - k; ++i) {
        base.push_back(i);
        combinations(i + 1, hi, k - 1, base, visit);
        base.pop_back();
    }
}

void per_level_product(const SparsityModel& model, int level, SupportSet& base,
                       const std::function<void(SupportSet&)>& visit) {
    if (level == static_cast<int>(model.boundaries.size())) {
        visit(base);
        return;
    }
    const int lo = level == 0 ? 0 : model.boundaries[level - 1];
    const int hi = model.boundaries[level];
    combinations(lo, hi, model.local[level], base,
                 [&](SupportSet& b) { per_level_product(model, level + 1, b, visit); });
}

double extremal_gram_deviation(const DenseMatrix& a, const SupportSet& support) {
    if (support.empty()) return 0.0;
    DenseMatrix sub(a.rows(), support.size());
    for (std::size_t j = 0; j < support.size(); ++j) sub.col(j) = a.col(support[j]);
    DenseMatrix gram = sub.adjoint() * sub;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(gram, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    return std::max(1.0 - lo, hi - 1.0);
}

}  // namespace

void enumerate_supports(int n, const SparsityModel& model,
                        const std::function<void(const SupportSet&)>& visit) {
    if (support_count(n, model) > kEnumerationBudget)
        throw std::runtime_error("enumerate_supports: enumeration budget exceeded");
    SupportSet base;
    auto wrap = [&](SupportSet& b) { visit(b); };
    if (!model.is_levels()) {
        combinations(0, n, model.total, base, wrap);
    } else {
        if (model.boundaries.back() != n)
            throw std::invalid_argument("enumerate_supports: M_r does not match dimension");
        per_level_product(model, 0, base, wrap);
    }
}

double ric_bruteforce(const DenseMatrix& a, int s) {
    if (s < 0 || s > a.cols())
        throw std::invalid_argument("ric_bruteforce: s out of range");
    double delta = 0.0;
    enumerate_supports(static_cast<int>(a.cols()), SparsityModel::classical(s),
                       [&](const SupportSet& sup) {
                           delta = std::max(delta, extremal_gram_deviation(a, sup));
                       });
    return delta;
}

double ricl_bruteforce(const DenseMatrix& a, const LocalSparsities& s, const LevelStructure& levels) {
    s.validate_against(levels);
    if (levels.dimension() != a.cols())
        throw std::invalid_argument("ricl_bruteforce: M_r does not match matrix columns");
    double delta = 0.0;
    enumerate_supports(static_cast<int>(a.cols()),
                       SparsityModel::in_levels(s.counts(), levels.boundaries()),
                       [&](const SupportSet& sup) {
                           delta = std::max(delta, extremal_gram_deviation(a, sup));
                       });
    return delta;
}

Eigen::MatrixXd block_coherence(const DenseMatrix& u, const std::vector<int>& sampling_levels,
                                const LevelStructure& sparsity_levels) {
    if (u.rows() != u.cols())
        throw std::invalid_argument("block_coherence: matrix must be square");
    DenseMatrix gram = u.adjoint() * u;
    if ((gram - DenseMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("block_coherence: matrix is not unitary");
    if (sampling_levels.back() != u.rows())
        throw std::invalid_argument("block_coherence: sampling levels do not cover all rows");

    const int r = static_cast<int>(sampling_levels.size());
    const int l = sparsity_levels.num_levels();
    Eigen::MatrixXd mu = Eigen::MatrixXd::Zero(r, l);
    int row_lo = 0;
    for (int k = 0; k < r; ++k) {
        const int row_hi = sampling_levels[k];
        for (int j = 0; j < l; ++j) {
            double best = 0.0;
            for (int i = row_lo; i < row_hi; ++i)
                for (int c = sparsity_levels.level_begin(j); c < sparsity_levels.level_end(j); ++c)
                    best = std::max(best, std::norm(u(i, c)));
            mu(k, j) = best;
        }
        row_lo = row_hi;
    }
    return mu;
}

Signal exhaustive_decoder(const DenseMatrix& a, const Signal& y, const SparsityModel& model) {
    Signal best = Signal::Zero(a.cols());
    double best_residual = y.norm();
    bool found = false;
    enumerate_supports(static_cast<int>(a.cols()), model, [&](const SupportSet& sup) {
        Signal z = Signal::Zero(a.cols());
        if (!sup.empty()) {
            DenseMatrix sub(a.rows(), sup.size());
            for (std::size_t j = 0; j < sup.size(); ++j) sub.col(j) = a.col(sup[j]);
            Eigen::VectorXcd w = sub.completeOrthogonalDecomposition().solve(y);
            for (std::size_t j = 0; j < sup.size(); ++j) z[sup[j]] = w[j];
        }
        const double res = (y - a * z).norm();
        // strict inequality keeps the first support in enumeration order on ties
        if (!found || res < best_residual) {
            best = z;
            best_residual = res;
            found = true;
        }
    });
    return best;
}

}  // namespace csl

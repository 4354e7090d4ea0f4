#include "csl/model.hpp"

#include <algorithm>

namespace csl {

SupportSet support(const Signal& x, double tol) {
    SupportSet out;
    for (int i = 0; i < x.size(); ++i)
        if (std::abs(x[i]) > tol) out.push_back(i);
    return out;
}

bool is_sparse_in_levels(const Signal& x, const LocalSparsities& s, const LevelStructure& levels) {
    s.validate_against(levels);
    if (x.size() != levels.dimension())
        throw std::invalid_argument("is_sparse_in_levels: signal length does not match M_r");
    for (int k = 0; k < levels.num_levels(); ++k) {
        int nnz = 0;
        for (int i = levels.level_begin(k); i < levels.level_end(k); ++i)
            if (x[i] != Complex(0.0, 0.0)) ++nnz;
        if (nnz > s.count(k)) return false;
    }
    return true;
}

Signal random_sparse_in_levels(const LocalSparsities& s, const LevelStructure& levels, Rng& rng) {
    s.validate_against(levels);
    Signal x = Signal::Zero(levels.dimension());
    for (int k = 0; k < levels.num_levels(); ++k) {
        const int lo = levels.level_begin(k);
        const int size = levels.level_size(k);
        const int sk = s.count(k);
        // partial Fisher-Yates for a uniform size-sk subset of the level
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = lo + i;
        for (int j = 0; j < sk; ++j) {
            int pick = rng.uniform_int(j, size - 1);
            std::swap(idx[j], idx[pick]);
        }
        std::sort(idx.begin(), idx.begin() + sk);
        for (int j = 0; j < sk; ++j) x[idx[j]] = Complex(rng.normal(), 0.0);
    }
    return x;
}

}  // namespace csl

#include "csl/thresholding.hpp"

#include <algorithm>
#include <numeric>

namespace csl {

namespace {

// Select the s largest-magnitude positions within [lo, hi), smallest index
// first on ties. Appends sorted indices to out.
void select_range(const Signal& x, int lo, int hi, int s, SupportSet& out) {
    const int n = hi - lo;
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), lo);
    auto cmp = [&x](int a, int b) {
        double ma = std::abs(x[a]), mb = std::abs(x[b]);
        if (ma != mb) return ma > mb;
        return a < b;
    };
    std::partial_sort(idx.begin(), idx.begin() + s, idx.end(), cmp);
    std::sort(idx.begin(), idx.begin() + s);
    out.insert(out.end(), idx.begin(), idx.begin() + s);
}

}  // namespace

SupportSet largest_indices(const Signal& x, int s) {
    if (s < 0 || s > x.size())
        throw std::invalid_argument("largest_indices: s out of range");
    SupportSet out;
    select_range(x, 0, static_cast<int>(x.size()), s, out);
    return out;
}

Signal hard_threshold(const Signal& x, int s) {
    SupportSet keep = largest_indices(x, s);
    Signal out = Signal::Zero(x.size());
    for (int i : keep) out[i] = x[i];
    return out;
}

SupportSet largest_indices_levels(const Signal& x, const LocalSparsities& s, const LevelStructure& levels) {
    s.validate_against(levels);
    if (x.size() != levels.dimension())
        throw std::invalid_argument("largest_indices_levels: signal length does not match M_r");
    SupportSet out;
    for (int k = 0; k < levels.num_levels(); ++k)
        select_range(x, levels.level_begin(k), levels.level_end(k), s.count(k), out);
    return out;
}

Signal hard_threshold_levels(const Signal& x, const LocalSparsities& s, const LevelStructure& levels) {
    SupportSet keep = largest_indices_levels(x, s, levels);
    Signal out = Signal::Zero(x.size());
    for (int i : keep) out[i] = x[i];
    return out;
}

double best_s_term_error_l1(const Signal& x, int s) {
    Signal r = x - hard_threshold(x, s);
    return r.lpNorm<1>();
}

}  // namespace csl

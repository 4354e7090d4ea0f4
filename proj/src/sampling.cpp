#include "csl/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace csl {

SamplingScheme::SamplingScheme(std::vector<int> sampling_levels, std::vector<int> local_counts,
                               std::vector<SchemeEntry> entries)
    : sampling_levels_(std::move(sampling_levels)),
      local_counts_(std::move(local_counts)),
      entries_(std::move(entries)) {
    if (sampling_levels_.empty() || sampling_levels_.size() != local_counts_.size())
        throw std::invalid_argument("SamplingScheme: level/count size mismatch");
    int prev = 0;
    for (std::size_t k = 0; k < sampling_levels_.size(); ++k) {
        if (sampling_levels_[k] <= prev)
            throw std::invalid_argument("SamplingScheme: sampling levels must be strictly increasing");
        int size = sampling_levels_[k] - prev;
        if (local_counts_[k] < 0 || local_counts_[k] > size)
            throw std::invalid_argument("SamplingScheme: m_k out of range for level size");
        prev = sampling_levels_[k];
    }
    std::vector<int> seen(local_counts_.size(), 0);
    for (const auto& e : entries_) seen[e.level]++;
    for (std::size_t k = 0; k < local_counts_.size(); ++k)
        if (seen[k] != local_counts_[k])
            throw std::invalid_argument("SamplingScheme: entry counts disagree with m_k");
    std::sort(entries_.begin(), entries_.end(),
              [](const SchemeEntry& a, const SchemeEntry& b) { return a.row < b.row; });
}

double SamplingScheme::level_scale(int k) const {
    return std::sqrt(static_cast<double>(level_size(k)) / static_cast<double>(local_count(k)));
}

SamplingScheme multilevel_scheme(const std::vector<int>& sampling_levels,
                                 const std::vector<int>& local_counts, Rng& rng) {
    if (sampling_levels.size() != local_counts.size())
        throw std::invalid_argument("multilevel_scheme: level/count size mismatch");
    std::vector<SchemeEntry> entries;
    int prev = 0;
    for (std::size_t k = 0; k < sampling_levels.size(); ++k) {
        const int lo = prev, hi = sampling_levels[k];
        const int size = hi - lo;
        const int mk = local_counts[k];
        if (mk > size)
            throw std::invalid_argument("multilevel_scheme: m_k exceeds level size");
        if (mk == size) {
            for (int i = lo; i < hi; ++i)
                entries.push_back({static_cast<int>(k), i, i});
        } else {
            // uniform independent draws, deduplicated by redraw
            std::set<int> picked;
            while (static_cast<int>(picked.size()) < mk)
                picked.insert(rng.uniform_int(lo, hi - 1));
            for (int i : picked) entries.push_back({static_cast<int>(k), i, i});
        }
        prev = hi;
    }
    return SamplingScheme(sampling_levels, local_counts, std::move(entries));
}

DyadicBandLayout::DyadicBandLayout(int num_bands) : num_bands_(num_bands) {
    if (num_bands < 1) throw std::invalid_argument("DyadicBandLayout: need at least one band");
}

int DyadicBandLayout::band_size(int k) const {
    if (k < 1 || k > num_bands_) throw std::invalid_argument("DyadicBandLayout: band out of range");
    return k == 1 ? 2 : (1 << (k - 1));
}

int DyadicBandLayout::frequency_to_row(long q) {
    if (q == 0) return 0;
    if (q > 0) return static_cast<int>(2 * q - 1);
    return static_cast<int>(-2 * q);
}

long DyadicBandLayout::row_to_frequency(int row) {
    if (row == 0) return 0;
    if (row % 2 == 1) return (row + 1) / 2;
    return -row / 2;
}

std::vector<long> DyadicBandLayout::band_frequencies(int k) const {
    std::vector<long> out;
    const int lo = (k == 1) ? 0 : (1 << (k - 1));
    const int hi = 1 << k;
    for (int row = lo; row < hi; ++row) out.push_back(row_to_frequency(row));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> DyadicBandLayout::band_upper_half(int k) const {
    std::vector<long> out;
    for (long q : band_frequencies(k))
        if (q >= 1) out.push_back(q);
    return out;
}

std::vector<int> DyadicBandLayout::sampling_levels() const {
    std::vector<int> out(num_bands_);
    for (int k = 1; k <= num_bands_; ++k) out[k - 1] = 1 << k;
    return out;
}

std::vector<int> fourier_band_allocation(int m, int r) {
    if (m < 2 || (m & (m - 1)) != 0)
        throw std::invalid_argument("fourier_band_allocation: m must be a power of two >= 2");
    int r_sat = 0;
    while ((2 << r_sat) < m) ++r_sat;  // r_sat = log2(m/2)
    if (r < r_sat)
        throw std::invalid_argument("fourier_band_allocation: r < log2(m/2)");
    DyadicBandLayout layout(std::max(r, 1));
    std::vector<int> counts(r, 0);
    int used = 0;
    for (int k = 1; k <= r_sat && k <= r; ++k) {
        counts[k - 1] = layout.band_size(k);
        used += counts[k - 1];
    }
    if (r > r_sat) {
        const int middle = (r - 1) - r_sat;  // bands r_sat+1 .. r-1
        if (middle > 0) {
            const int per_band = 2 * (m / (4 * (r - r_sat)));
            for (int k = r_sat + 1; k <= r - 1; ++k) {
                if (per_band > layout.band_size(k))
                    throw std::invalid_argument("fourier_band_allocation: middle-band count exceeds band size");
                counts[k - 1] = per_band;
                used += counts[k - 1];
            }
        }
        counts[r - 1] = m - used;
        if (counts[r - 1] < 0 || counts[r - 1] > layout.band_size(r))
            throw std::invalid_argument("fourier_band_allocation: infeasible remainder for last band");
        if (counts[r - 1] % 2 != 0 && counts[r - 1] != layout.band_size(r))
            throw std::invalid_argument("fourier_band_allocation: odd remainder cannot be sampled symmetrically");
    } else if (used != m) {
        throw std::invalid_argument("fourier_band_allocation: saturated bands do not sum to m");
    }
    return counts;
}

std::vector<long> symmetric_band_sample(const DyadicBandLayout& layout, int band, int mk, Rng& rng) {
    const int size = layout.band_size(band);
    if (mk < 0 || mk > size)
        throw std::invalid_argument("symmetric_band_sample: m_k out of range");
    if (mk == size) return layout.band_frequencies(band);
    if (mk % 2 != 0)
        throw std::invalid_argument("symmetric_band_sample: m_k must be even");
    std::vector<long> upper = layout.band_upper_half(band);
    const int half = mk / 2;
    // partial Fisher-Yates over the upper semiband
    for (int j = 0; j < half; ++j) {
        int pick = rng.uniform_int(j, static_cast<int>(upper.size()) - 1);
        std::swap(upper[j], upper[pick]);
    }
    std::vector<long> out;
    for (int j = 0; j < half; ++j) {
        out.push_back(upper[j]);
        out.push_back(1 - upper[j]);  // mirrored frequency in the opposite semiband
    }
    std::sort(out.begin(), out.end());
    return out;
}

SamplingScheme fourier_multilevel_scheme(int m, int r, Rng& rng) {
    DyadicBandLayout layout(r);
    std::vector<int> counts = fourier_band_allocation(m, r);
    std::vector<SchemeEntry> entries;
    for (int k = 1; k <= r; ++k) {
        std::vector<long> freqs = (counts[k - 1] == layout.band_size(k))
                                      ? layout.band_frequencies(k)
                                      : symmetric_band_sample(layout, k, counts[k - 1], rng);
        for (long q : freqs)
            entries.push_back({k - 1, q, DyadicBandLayout::frequency_to_row(q)});
    }
    return SamplingScheme(layout.sampling_levels(), counts, std::move(entries));
}

void write_scheme_csv(const SamplingScheme& scheme, std::ostream& os) {
    os << "level,frequency,row_index\n";
    for (const auto& e : scheme.entries())
        os << (e.level + 1) << "," << e.frequency << "," << (e.row + 1) << "\n";
}

}  // namespace csl

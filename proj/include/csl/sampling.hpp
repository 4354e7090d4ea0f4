#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "csl/types.hpp"

namespace csl {

struct SchemeEntry {
    int level;       // 0-based sampling level
    long frequency;  // signed frequency label (equals row for plain schemes)
    int row;         // 0-based row of the underlying transform
};

// Multilevel sampling set Omega with per-level counts and the diagonal
// rescaling consumed by the subsampled operators.
class SamplingScheme {
public:
    SamplingScheme(std::vector<int> sampling_levels, std::vector<int> local_counts,
                   std::vector<SchemeEntry> entries);

    int num_levels() const { return static_cast<int>(sampling_levels_.size()); }
    int total_indices() const { return sampling_levels_.back(); }
    int total_measurements() const { return static_cast<int>(entries_.size()); }

    int level_begin(int k) const { return k == 0 ? 0 : sampling_levels_[k - 1]; }
    int level_end(int k) const { return sampling_levels_[k]; }
    int level_size(int k) const { return level_end(k) - level_begin(k); }
    int local_count(int k) const { return local_counts_[k]; }

    // sqrt((N_k - N_{k-1}) / m_k) for level k
    double level_scale(int k) const;

    const std::vector<SchemeEntry>& entries() const { return entries_; }
    const std::vector<int>& sampling_levels() const { return sampling_levels_; }
    const std::vector<int>& local_counts() const { return local_counts_; }

private:
    std::vector<int> sampling_levels_;
    std::vector<int> local_counts_;
    std::vector<SchemeEntry> entries_;
};

// Uniform per-level draws without replacement; a level with m_k equal to its
// size is included in full.
SamplingScheme multilevel_scheme(const std::vector<int>& sampling_levels,
                                 const std::vector<int>& local_counts, Rng& rng);

// Dyadic frequency bands under the interleaved ordering 0, 1, -1, 2, -2, ...
// Band 1 is {0, 1}; band k covers ordering positions (2^{k-1}, 2^k], so the
// cumulative sampling levels are N_k = 2^k.
class DyadicBandLayout {
public:
    explicit DyadicBandLayout(int num_bands);

    int num_bands() const { return num_bands_; }
    int band_size(int k) const;                    // 1-based band number
    std::vector<long> band_frequencies(int k) const;
    // Upper semiband (the positive picks); its mirror is q -> 1 - q.
    std::vector<long> band_upper_half(int k) const;

    static int frequency_to_row(long q);  // 0-based ordering position
    static long row_to_frequency(int row);

    std::vector<int> sampling_levels() const;  // N_k = 2^k

private:
    int num_bands_;
};

// Per-band measurement counts for the Fourier encoder: saturate the first
// log2(m/2) bands, spread 2*floor(m/(4(r - r_sat))) over the middle bands,
// give the remainder to the last band.
std::vector<int> fourier_band_allocation(int m, int r);

// m_k/2 uniform draws from the upper semiband plus their mirrors q -> 1 - q.
std::vector<long> symmetric_band_sample(const DyadicBandLayout& layout, int band, int mk, Rng& rng);

// Full Fourier sampling scheme for a total budget m over r dyadic bands.
SamplingScheme fourier_multilevel_scheme(int m, int r, Rng& rng);

// CSV audit dump: header level,frequency,row_index with 1-based level/row.
void write_scheme_csv(const SamplingScheme& scheme, std::ostream& os);

}  // namespace csl

#pragma once

#include "csl/types.hpp"

namespace csl {

// Indices of the s largest-magnitude entries; ties resolved in favour of the
// smaller index. Result is sorted.
SupportSet largest_indices(const Signal& x, int s);

Signal hard_threshold(const Signal& x, int s);

// Per-level selection: the s_k largest entries inside each level. Always
// returns exactly s_k slots per level, padding with zero-valued positions in
// index order when a level has fewer nonzeros.
SupportSet largest_indices_levels(const Signal& x, const LocalSparsities& s, const LevelStructure& levels);

Signal hard_threshold_levels(const Signal& x, const LocalSparsities& s, const LevelStructure& levels);

// sigma_s(x)_{l1} = ||x - H_s(x)||_1
double best_s_term_error_l1(const Signal& x, int s);

}  // namespace csl

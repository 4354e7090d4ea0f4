#pragma once

#include "csl/types.hpp"

namespace csl {

SupportSet support(const Signal& x, double tol = 0.0);

bool is_sparse_in_levels(const Signal& x, const LocalSparsities& s, const LevelStructure& levels);

// (s,M)-sparse signal with uniform random per-level supports and standard
// normal nonzero values (real-valued, stored as complex).
Signal random_sparse_in_levels(const LocalSparsities& s, const LevelStructure& levels, Rng& rng);

}  // namespace csl

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace csl {

using Complex = std::complex<double>;
using Signal = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;

// Support sets are stored 0-based and sorted; the CLI and file formats
// convert to 1-based at the boundary.
using SupportSet = std::vector<int>;

class LevelStructure {
public:
    explicit LevelStructure(std::vector<int> boundaries)
        : boundaries_(std::move(boundaries)) {
        if (boundaries_.empty())
            throw std::invalid_argument("LevelStructure: empty boundary list");
        int prev = 0;
        for (int b : boundaries_) {
            if (b <= prev)
                throw std::invalid_argument("LevelStructure: boundaries must be strictly increasing and positive");
            prev = b;
        }
    }

    static LevelStructure single(int n) { return LevelStructure({n}); }

    int num_levels() const { return static_cast<int>(boundaries_.size()); }
    int dimension() const { return boundaries_.back(); }

    // Half-open 0-based range [begin, end) of level k (0-based k).
    int level_begin(int k) const { return k == 0 ? 0 : boundaries_[k - 1]; }
    int level_end(int k) const { return boundaries_[k]; }
    int level_size(int k) const { return level_end(k) - level_begin(k); }

    const std::vector<int>& boundaries() const { return boundaries_; }

    bool operator==(const LevelStructure& o) const { return boundaries_ == o.boundaries_; }

private:
    std::vector<int> boundaries_;
};

class LocalSparsities {
public:
    explicit LocalSparsities(std::vector<int> counts) : counts_(std::move(counts)) {
        for (int c : counts_)
            if (c < 0) throw std::invalid_argument("LocalSparsities: negative count");
    }

    void validate_against(const LevelStructure& levels) const {
        if (static_cast<int>(counts_.size()) != levels.num_levels())
            throw std::invalid_argument("LocalSparsities: level count mismatch");
        for (int k = 0; k < levels.num_levels(); ++k)
            if (counts_[k] > levels.level_size(k))
                throw std::invalid_argument("LocalSparsities: s_k exceeds level size");
    }

    int num_levels() const { return static_cast<int>(counts_.size()); }
    int count(int k) const { return counts_[k]; }
    int total() const {
        int t = 0;
        for (int c : counts_) t += c;
        return t;
    }
    const std::vector<int>& counts() const { return counts_; }

private:
    std::vector<int> counts_;
};

// Deterministic seedable RNG handle shared across modules.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::mt19937_64& engine() { return engine_; }

    double normal() { return normal_(engine_); }
    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(engine_);
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// splitmix64; used to derive independent per-trial seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial) {
    return mix_seed(mix_seed(master ^ mix_seed(cell)) ^ trial);
}

}  // namespace csl

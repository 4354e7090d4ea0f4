#pragma once

#include <functional>

#include "csl/types.hpp"

namespace csl {

// Model selector for the brute-force oracles: classical s-sparse or sparse in
// levels.
struct SparsityModel {
    int total = 0;  // classical sparsity, used when levels is empty
    std::vector<int> local;
    std::vector<int> boundaries;

    static SparsityModel classical(int s) { return {s, {}, {}}; }
    static SparsityModel in_levels(std::vector<int> s, std::vector<int> m) {
        return {0, std::move(s), std::move(m)};
    }
    bool is_levels() const { return !boundaries.empty(); }
};

// Exact RIC by enumeration of all size-s supports. Throws when the support
// count exceeds the budget (1e6).
double ric_bruteforce(const DenseMatrix& a, int s);

double ricl_bruteforce(const DenseMatrix& a, const LocalSparsities& s, const LevelStructure& levels);

// mu_{k,l}: largest |u_ij|^2 over the (sampling level k, sparsity level l)
// block of a unitary matrix.
Eigen::MatrixXd block_coherence(const DenseMatrix& u, const std::vector<int>& sampling_levels,
                                const LevelStructure& sparsity_levels);

// Least-squares solve over every admissible support; ties broken by the first
// support in lexicographic enumeration order.
Signal exhaustive_decoder(const DenseMatrix& a, const Signal& y, const SparsityModel& model);

// Enumerates admissible supports (sorted, 0-based) and calls visit on each.
// Shared between the oracles; also used by test code.
void enumerate_supports(int n, const SparsityModel& model,
                        const std::function<void(const SupportSet&)>& visit);

}  // namespace csl

#pragma once

#include <optional>

#include "lueq/constructors.hpp"
#include "lueq/state.hpp"

namespace lueq {

/// The factorization question of the cross-cut Schmidt spectrum: can the
/// d^n probabilities q_r be written as products a_1[k_1] ... a_n[k_n]?
struct PairabilityProblem {
    Spectrum q;  // exactly d^n probabilities, descending, sum 1
    int d = 2;
    int n = 1;   // X-side qudits
    int m = 1;   // Y-side qudits, n <= m
};

struct PairSolution {
    std::vector<std::vector<double>> a;  // n marginals, each of length d, descending
    /// assignment[r] = grid tuple (k_1 ... k_n) the r-th q value (descending
    /// order) maps onto, encoded as a base-d number.
    std::vector<long> assignment;
};

inline constexpr long kDefaultSearchBudget = 256;

/// Exact backtracking search over assignments of the multiset q onto the
/// product grid. Returns nullopt when the search tree is exhausted
/// (Infeasible). Throws TooLarge when d^n exceeds the budget.
std::optional<PairSolution> product_factorize(const PairabilityProblem& problem,
                                              double tol = kSpectrumTol,
                                              long budget = kDefaultSearchBudget);

/// The state (x)_j sum_k sqrt(a_j[k]) |k>_{X_j}|k>_{Y_j} (x) |rest>, with
/// parties ordered X_1..X_n Y_1..Y_m. rest defaults to |0...0> on the
/// trailing m - n qudits.
MultiState build_pair_state(const PairSolution& sol, int d, int m,
                            const MultiState* rest = nullptr);

struct PairabilityResult {
    bool feasible = false;
    PairSolution solution;
    MultiState pair_state;  // target state on psi's party layout
    LocalUnitary lu;        // maps psi onto pair_state
    double residual = 0.0;
};

/// Decides whether psi's cross-cut entanglement can be carried by qudit
/// pairs (one member per side), and on success builds the pair state and
/// the local unitaries reaching it. Requires a common party dimension.
PairabilityResult pairable(const MultiState& psi, const Bipartition& bp,
                           double tol = kSpectrumTol,
                           long budget = kDefaultSearchBudget);

}  // namespace lueq

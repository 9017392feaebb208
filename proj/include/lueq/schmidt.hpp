#pragma once

#include "lueq/state.hpp"

namespace lueq {

/// Schmidt form of a pure bipartite state:
///   psi = sum_k c_k |left_k> (x) |right_k>,   c_k >= 0 descending.
struct SchmidtDecomposition {
    Spectrum coefficients;     // squares sum to 1
    ComplexMatrix left_basis;  // orthonormal columns on X
    ComplexMatrix right_basis; // orthonormal columns on Y
    int schmidt_number = 0;    // coefficients above the rank cut
};

/// Schmidt decomposition across a bipartition via SVD of the coefficient
/// matrix. Throws NotPure for mixed inputs.
SchmidtDecomposition schmidt_decompose(const MultiState& s, const Bipartition& bp,
                                       double rank_cut = kSchmidtRankCut);

/// Cross-cut entanglement entropy in bits: -sum p log2 p over p = c_k^2.
double entanglement_entropy(const SchmidtDecomposition& sd);

}  // namespace lueq

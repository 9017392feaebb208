#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lueq/linalg.hpp"

namespace lueq {

/// Local Hilbert-space dimensions, one per party. Party 1 owns the most
/// significant digit of a basis index.
struct PartyDims {
    std::vector<int> dims;

    PartyDims() = default;
    explicit PartyDims(std::vector<int> d) : dims(std::move(d)) {}

    int parties() const { return static_cast<int>(dims.size()); }
    long total() const;
    bool operator==(const PartyDims&) const = default;
};

/// A split of the party set into two nonempty complementary groups.
/// Party indices are 0-based internally.
struct Bipartition {
    std::vector<int> x_parties;  // sorted ascending
    std::vector<int> y_parties;  // sorted ascending, complement

    /// Builds the bipartition from the X side; Y is the complement.
    static Bipartition from_x(std::vector<int> x, int n_parties);

    Bipartition swapped() const { return Bipartition{y_parties, x_parties}; }
    std::string to_string() const;  // 1-based "1|2,3" form
};

enum class Kind { Pure, Mixed };
enum class Side { X, Y };

/// A multi-qudit state: a D x 1 amplitude column (Pure) or a D x D density
/// operator (Mixed) over the given party dimensions.
struct MultiState {
    PartyDims dims;
    Kind kind = Kind::Pure;
    ComplexMatrix data;

    long total_dim() const { return dims.total(); }
    bool is_pure() const { return kind == Kind::Pure; }

    /// The density operator, expanding a pure state on demand.
    ComplexMatrix density() const;
};

/// Checks all MultiState invariants; returns the state unchanged on success.
/// Throws BadDims, NotNormalized, NotHermitian, BadTrace or NotPositive.
const MultiState& validate(const MultiState& s, double tol = kSpectrumTol);

/// Dimension of one side of a bipartition (product of its party dims).
long side_dim(const PartyDims& dims, const Bipartition& bp, Side side);

/// Index permutation realizing the X-major bipartite grouping:
/// perm[global_index] = x_index * d_Y + y_index.
std::vector<long> grouping_permutation(const PartyDims& dims, const Bipartition& bp);

/// Pure states: the d_X x d_Y coefficient matrix. Mixed states: the grouped
/// (d_X d_Y) x (d_X d_Y) operator. Pure Frobenius norm is preserved exactly.
ComplexMatrix group_as_bipartite(const MultiState& s, const Bipartition& bp);

/// Inverse of the grouped-operator ordering: maps a (d_X d_Y)^2 operator in
/// X-major grouped indices back to the state's native party ordering.
ComplexMatrix ungroup_operator(const ComplexMatrix& grouped, const PartyDims& dims,
                               const Bipartition& bp);
ComplexVector ungroup_vector(const ComplexMatrix& coeff, const PartyDims& dims,
                             const Bipartition& bp);

/// Reduced density operator of the kept side. Pure inputs never expand to
/// the full D x D operator.
ComplexMatrix partial_trace(const MultiState& s, const Bipartition& bp, Side keep);

/// Partial transposition over one side, returned on the grouped bipartite
/// index ordering. The result of transposing a Hermitian operator stays
/// Hermitian.
ComplexMatrix partial_transpose(const MultiState& s, const Bipartition& bp, Side side);

/// Partial transpose of an already-grouped operator.
ComplexMatrix partial_transpose_grouped(const ComplexMatrix& grouped, long d_x, long d_y,
                                        Side side);

/// Tensor product with concatenated dims, most-significant-party-first.
MultiState tensor_product(const MultiState& a, const MultiState& b);

/// Applies U_X (x) U_Y across the given bipartition.
MultiState apply_local_unitary(const MultiState& s, const Bipartition& bp,
                               const ComplexMatrix& u_x, const ComplexMatrix& u_y,
                               double tol = kSpectrumTol);

/// Applies one unitary per party.
MultiState apply_per_party(const MultiState& s, const std::vector<ComplexMatrix>& factors,
                           double tol = kSpectrumTol);

/// Kronecker product, row-major (left factor most significant).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// The reduced pair (state on kept parties) used by the recursive scan:
/// partial trace re-wrapped as a Mixed MultiState over the kept party dims.
MultiState reduced_state(const MultiState& s, const Bipartition& bp, Side keep);

}  // namespace lueq

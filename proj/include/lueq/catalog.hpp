#pragma once

#include <array>
#include <cstdint>

#include "lueq/constructors.hpp"
#include "lueq/state.hpp"

namespace lueq {
namespace catalog {

/// (|0...0> + ... + |d-1...d-1>)/sqrt(d) on N parties of dimension d.
MultiState ghz(int n_parties, int d = 2);

/// |EPR>_{12} (x) |phi>_{3..N}; phi defaults to |0...0>.
MultiState epr_with_ancilla(int n_parties, const MultiState* phi = nullptr);

/// Odd ring of N = 2n+1 qubits, X = positions 0..n-1,
/// Y = positions n..2n.
struct RingGeometry {
    int n = 1;
    int total() const { return 2 * n + 1; }
    /// Shortest ring distance between positions i and j.
    int distance(int i, int j) const;
};

struct RingState {
    MultiState state;
    Bipartition cut;  // the canonical X|Y split
};

/// The ring state (1/sqrt(2^n)) sum_k |k>_X (x) |alpha_k>_Y with
/// phases (-1)^{d_k + d_l + d_kl} from pairwise ring distances of the 1-bits.
/// Within each block the least significant bit sits on the lowest ring
/// position. Each |alpha_k> is normalized to unit norm. On ring sizes where
/// the distance phases fail to make the blocks orthonormal (the family of
/// site-parity vectors degenerates, e.g. n = 3), the phases fall back to
/// the bilinear rule (-1)^{k . l} so the state is always in Schmidt form
/// with uniform coefficients.
RingState ring_state(int n);

/// The 4-qubit counterexample pair across ({1},{2,3,4}): spectra
/// {1/4, 3/8, 5/16, 1/16} with the printed eigenvectors. assignment
/// permutes which eigenvalue attaches to which of sigma's eigenvectors;
/// {0,1,2,3} is the printed order. rho always uses the printed order.
struct CounterexamplePair {
    MultiState rho;
    MultiState sigma;
    Bipartition cut;
};

CounterexamplePair counterexample_pair(
    const std::array<int, 4>& assignment = {0, 1, 2, 3});

/// Haar-style random pure state, or mixed state of the given rank with a
/// random non-degenerate simplex spectrum. Deterministic per seed.
MultiState random_state(const PartyDims& dims, Kind kind, int rank, std::uint64_t seed);

/// Haar-style random unitary of dimension dim, deterministic per seed.
ComplexMatrix random_unitary(long dim, std::uint64_t seed);

/// Random per-party unitary factors.
std::vector<ComplexMatrix> random_party_unitaries(const PartyDims& dims, std::uint64_t seed);

/// Random local unitary across a bipartition.
LocalUnitary random_local_unitary(const PartyDims& dims, const Bipartition& bp,
                                  std::uint64_t seed);

}  // namespace catalog
}  // namespace lueq

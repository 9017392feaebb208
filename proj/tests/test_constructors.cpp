#include <doctest.h>

#include <random>

#include "lueq/catalog.hpp"
#include "lueq/constructors.hpp"

using namespace lueq;

namespace {

MultiState basis_pure(const std::vector<int>& dims, long index) {
    MultiState s;
    s.dims = PartyDims(dims);
    s.kind = Kind::Pure;
    s.data = ComplexMatrix::Zero(s.total_dim(), 1);
    s.data(index, 0) = 1.0;
    return s;
}

}  // namespace

TEST_CASE("verify_equivalence is zero for identity and large for mismatch") {
    MultiState epr = catalog::ghz(2);
    Bipartition bp = Bipartition::from_x({0}, 2);
    LocalUnitary identity{bp, ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)};
    CHECK(verify_equivalence(epr, epr, identity) == doctest::Approx(0.0).epsilon(1e-12));

    // Global phase on a pure state is invisible.
    MultiState phased = epr;
    phased.data *= std::complex<double>(std::cos(0.7), std::sin(0.7));
    CHECK(verify_equivalence(epr, phased, identity) < 1e-12);

    MultiState zz = basis_pure({2, 2}, 0);
    CHECK(verify_equivalence(epr, zz, identity) > 0.1);
}

TEST_CASE("pure constructor maps GHZ onto EPR x ancilla across the first cut") {
    for (int n = 3; n <= 6; ++n) {
        MultiState ghz = catalog::ghz(n);
        MultiState epr = catalog::epr_with_ancilla(n);
        Bipartition bp = Bipartition::from_x({0}, n);
        ConstructResult r = pure_lu_construct(ghz, epr, bp);
        REQUIRE(r.status == ConstructStatus::Found);
        CHECK(r.residual <= 1e-10);
        CHECK(unitarity_defect(r.lu.u_x) <= 1e-10);
        CHECK(unitarity_defect(r.lu.u_y) <= 1e-10);
        // The residual field is the direct re-verification: the unitary
        // carries the first argument onto the second.
        CHECK(verify_equivalence(epr, ghz, r.lu) == doctest::Approx(r.residual));
    }
}

TEST_CASE("pure constructor handles the ring state vs an explicit pair state") {
    catalog::RingState ring = catalog::ring_state(2);
    // 2^2 uniform Schmidt coefficients across the canonical cut: the same
    // entanglement as two maximally entangled qubit pairs (plus one spare
    // qubit on the larger side).
    MultiState target;
    target.dims = ring.state.dims;
    target.kind = Kind::Pure;
    target.data = ComplexMatrix::Zero(32, 1);
    // Pair party 1 with party 3 and party 2 with party 4; party 5 stays |0>.
    for (int k1 = 0; k1 < 2; ++k1)
        for (int k2 = 0; k2 < 2; ++k2) {
            long idx = (k1 << 4) | (k2 << 3) | (k1 << 2) | (k2 << 1);
            target.data(idx, 0) = 0.5;
        }
    ConstructResult r = pure_lu_construct(ring.state, target, ring.cut);
    REQUIRE(r.status == ConstructStatus::Found);
    CHECK(r.residual <= 1e-10);
}

TEST_CASE("pure constructor rejects unequal Schmidt multisets with a witness") {
    MultiState epr = catalog::ghz(2);
    MultiState zz = basis_pure({2, 2}, 0);
    ConstructResult r = pure_lu_construct(zz, epr, Bipartition::from_x({0}, 2));
    CHECK(r.status == ConstructStatus::NotEquivalent);
    REQUIRE(!r.witnesses.empty());
    CHECK(multiset_equal(r.witnesses[0].lhs, Spectrum{{1.0, 0.0}}, 1e-9));
    CHECK(multiset_equal(r.witnesses[0].rhs,
                         Spectrum{{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}}, 1e-9));
}

TEST_CASE("pure constructor round-trips random states under random local unitaries") {
    std::mt19937_64 rng(201);
    const std::vector<std::vector<int>> shapes = {{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {2, 4}};
    for (int trial = 0; trial < 60; ++trial) {
        const auto& dims = shapes[static_cast<std::size_t>(trial) % shapes.size()];
        MultiState psi = catalog::random_state(PartyDims(dims), Kind::Pure, 1, rng());
        Bipartition bp = Bipartition::from_x({0}, static_cast<int>(dims.size()));
        LocalUnitary lu = catalog::random_local_unitary(psi.dims, bp, rng());
        MultiState phi = apply_local_unitary(psi, bp, lu.u_x, lu.u_y);
        ConstructResult r = pure_lu_construct(phi, psi, bp);
        REQUIRE(r.status == ConstructStatus::Found);
        CHECK(r.residual <= 1e-8);
    }
}

TEST_CASE("mixed constructor round-trips non-degenerate states") {
    std::mt19937_64 rng(202);
    const std::vector<std::vector<int>> shapes = {{2, 2}, {2, 3}, {3, 3}};
    int found = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const auto& dims = shapes[static_cast<std::size_t>(trial) % shapes.size()];
        PartyDims pd(dims);
        const int full = static_cast<int>(pd.total());
        MultiState rho = catalog::random_state(pd, Kind::Mixed, full, rng());
        Bipartition bp = Bipartition::from_x({0}, 2);
        LocalUnitary lu = catalog::random_local_unitary(pd, bp, rng());
        MultiState sigma = apply_local_unitary(rho, bp, lu.u_x, lu.u_y);
        ConstructResult r = nondegenerate_lu_construct(sigma, rho, bp);
        if (r.status == ConstructStatus::Inapplicable) continue;  // degenerate draw
        REQUIRE(r.status == ConstructStatus::Found);
        CHECK(r.residual <= 1e-8);
        CHECK(unitarity_defect(r.lu.u_x) <= 1e-9);
        CHECK(unitarity_defect(r.lu.u_y) <= 1e-9);
        ++found;
    }
    CHECK(found >= 100);
}

TEST_CASE("mixed constructor is insensitive to eigenvector phase gauges") {
    std::mt19937_64 rng(203);
    for (int trial = 0; trial < 20; ++trial) {
        PartyDims pd({2, 3});
        MultiState rho = catalog::random_state(pd, Kind::Mixed, 6, rng());
        Bipartition bp = Bipartition::from_x({0}, 2);
        LocalUnitary lu = catalog::random_local_unitary(pd, bp, rng());
        MultiState sigma = apply_local_unitary(rho, bp, lu.u_x, lu.u_y);
        // Conjugating by a random diagonal global phase leaves a density
        // operator unchanged; the solver must not depend on any particular
        // spectral decomposition returned by the eigensolver.
        ConstructResult forward = nondegenerate_lu_construct(sigma, rho, bp);
        ConstructResult backward = nondegenerate_lu_construct(rho, sigma, bp);
        if (forward.status == ConstructStatus::Found) CHECK(forward.residual <= 1e-8);
        if (backward.status == ConstructStatus::Found) CHECK(backward.residual <= 1e-8);
        CHECK(forward.status == backward.status);
    }
}

TEST_CASE("mixed constructor reports degenerate spectra as inapplicable") {
    MultiState maximally_mixed;
    maximally_mixed.dims = PartyDims({2, 2});
    maximally_mixed.kind = Kind::Mixed;
    maximally_mixed.data = 0.25 * ComplexMatrix::Identity(4, 4);
    ConstructResult r = nondegenerate_lu_construct(maximally_mixed, maximally_mixed,
                                                   Bipartition::from_x({0}, 2));
    CHECK(r.status == ConstructStatus::Inapplicable);
    CHECK(!r.reason.empty());
}

TEST_CASE("mixed constructor distinguishes spectrally equal but inequivalent pairs") {
    // Same eigenvalues, but sigma's eigenvectors are perturbed by a
    // non-local rotation: no product unitary can connect the two.
    std::mt19937_64 rng(204);
    int not_equivalent = 0;
    for (int trial = 0; trial < 20; ++trial) {
        PartyDims pd({2, 2});
        MultiState rho = catalog::random_state(pd, Kind::Mixed, 4, rng());
        ComplexMatrix g = catalog::random_unitary(4, rng());
        MultiState sigma = rho;
        sigma.data = g * rho.data * g.adjoint();
        Bipartition bp = Bipartition::from_x({0}, 2);
        ConstructResult r = nondegenerate_lu_construct(rho, sigma, bp);
        CHECK(r.status != ConstructStatus::Found);
        if (r.status == ConstructStatus::NotEquivalent) ++not_equivalent;
    }
    CHECK(not_equivalent >= 15);
}

TEST_CASE("constructors validate cut dimensions") {
    MultiState epr = catalog::ghz(2);
    MultiState ghz3 = catalog::ghz(3);
    CHECK_THROWS_WITH_AS(pure_lu_construct(epr, ghz3, Bipartition::from_x({0}, 2)),
                         doctest::Contains("DimMismatch"), Error);
}

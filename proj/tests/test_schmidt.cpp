#include <doctest.h>

#include <random>

#include "lueq/catalog.hpp"
#include "lueq/schmidt.hpp"

using namespace lueq;

TEST_CASE("product states have Schmidt number one and zero entropy") {
    std::mt19937_64 rng(1);
    MultiState a = catalog::random_state(PartyDims({2}), Kind::Pure, 1, rng());
    MultiState b = catalog::random_state(PartyDims({3}), Kind::Pure, 1, rng());
    MultiState ab = tensor_product(a, b);
    SchmidtDecomposition sd = schmidt_decompose(ab, Bipartition::from_x({0}, 2));
    CHECK(sd.schmidt_number == 1);
    CHECK(sd.coefficients[0] == doctest::Approx(1.0));
    CHECK(entanglement_entropy(sd) == doctest::Approx(0.0));
}

TEST_CASE("ring state n=2 has four uniform coefficients and two bits of entropy") {
    catalog::RingState ring = catalog::ring_state(2);
    SchmidtDecomposition sd = schmidt_decompose(ring.state, ring.cut);
    CHECK(sd.schmidt_number == 4);
    for (int i = 0; i < 4; ++i) CHECK(sd.coefficients[static_cast<std::size_t>(i)] == doctest::Approx(0.5));
    CHECK(entanglement_entropy(sd) == doctest::Approx(2.0));
}

TEST_CASE("GHZ_4 across the 2|2 cut") {
    MultiState ghz = catalog::ghz(4);
    SchmidtDecomposition sd = schmidt_decompose(ghz, Bipartition::from_x({0, 1}, 4));
    CHECK(sd.schmidt_number == 2);
    CHECK(sd.coefficients[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(sd.coefficients[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(sd.coefficients[2] == doctest::Approx(0.0));
    CHECK(entanglement_entropy(sd) == doctest::Approx(1.0));
}

TEST_CASE("EPR carries one bit") {
    SchmidtDecomposition sd =
        schmidt_decompose(catalog::ghz(2), Bipartition::from_x({0}, 2));
    CHECK(entanglement_entropy(sd) == doctest::Approx(1.0));
}

TEST_CASE("decomposition reconstructs the state and matches the reduced spectra") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        MultiState s = catalog::random_state(PartyDims({2, 3, 2}), Kind::Pure, 1, rng());
        Bipartition bp = Bipartition::from_x({trial % 2 == 0 ? 0 : 1}, 3);
        SchmidtDecomposition sd = schmidt_decompose(s, bp);

        double sum_sq = 0.0;
        for (double c : sd.coefficients.values) sum_sq += c * c;
        CHECK(sum_sq == doctest::Approx(1.0).epsilon(1e-9));
        // Both bases are isometries; the wider-side basis may be thin.
        CHECK(max_abs(sd.left_basis.adjoint() * sd.left_basis -
                      ComplexMatrix::Identity(sd.left_basis.cols(), sd.left_basis.cols())) <=
              1e-10);
        CHECK(max_abs(sd.right_basis.adjoint() * sd.right_basis -
                      ComplexMatrix::Identity(sd.right_basis.cols(), sd.right_basis.cols())) <=
              1e-10);

        // Reconstruction: coeff = L diag(c) R^T.
        ComplexMatrix sigma = ComplexMatrix::Zero(sd.left_basis.cols(), sd.right_basis.cols());
        for (long i = 0; i < sigma.rows(); ++i) sigma(i, i) = sd.coefficients[static_cast<std::size_t>(i)];
        ComplexMatrix rebuilt = sd.left_basis * sigma * sd.right_basis.transpose();
        CHECK(max_abs(rebuilt - group_as_bipartite(s, bp)) <= 1e-9);

        // Squares equal the eigenvalues of either marginal.
        Spectrum squares;
        for (double c : sd.coefficients.values) squares.values.push_back(c * c);
        for (Side side : {Side::X, Side::Y}) {
            Spectrum marginal = hermitian_eig(partial_trace(s, bp, side)).spectrum;
            CHECK(multiset_equal(squares, marginal, 1e-9));
        }
    }
}

TEST_CASE("coefficients are invariant under local unitaries") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        MultiState s = catalog::random_state(PartyDims({2, 2, 3}), Kind::Pure, 1, rng());
        Bipartition bp = Bipartition::from_x({0, 1}, 3);
        LocalUnitary lu = catalog::random_local_unitary(s.dims, bp, rng());
        MultiState moved = apply_local_unitary(s, bp, lu.u_x, lu.u_y);
        CHECK(multiset_equal(schmidt_decompose(s, bp).coefficients,
                             schmidt_decompose(moved, bp).coefficients, 1e-9));
    }
}

TEST_CASE("entropy is additive over tensor products across aligned cuts") {
    MultiState epr2 = tensor_product(catalog::ghz(2), catalog::ghz(2));
    // Parties (1,3) vs (2,4): each EPR pair straddles the cut.
    SchmidtDecomposition sd = schmidt_decompose(epr2, Bipartition::from_x({0, 2}, 4));
    CHECK(entanglement_entropy(sd) == doctest::Approx(2.0));
}

TEST_CASE("mixed input is rejected") {
    MultiState mixed = catalog::random_state(PartyDims({2, 2}), Kind::Mixed, 2, 9);
    CHECK_THROWS_WITH_AS(schmidt_decompose(mixed, Bipartition::from_x({0}, 2)),
                         doctest::Contains("NotPure"), Error);
}

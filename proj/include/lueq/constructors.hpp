#pragma once

#include "lueq/invariants.hpp"
#include "lueq/schmidt.hpp"
#include "lueq/state.hpp"

namespace lueq {

/// A product unitary U_X (x) U_Y acting across a bipartition. The factors
/// act on the grouped (X-major) side spaces.
struct LocalUnitary {
    Bipartition bipartition;
    ComplexMatrix u_x;
    ComplexMatrix u_y;
};

enum class ConstructStatus { Found, NotEquivalent, Inapplicable };

const char* to_string(ConstructStatus s);

struct ConstructResult {
    ConstructStatus status = ConstructStatus::NotEquivalent;
    LocalUnitary lu;          // valid when status == Found
    double residual = 0.0;    // verify_equivalence of the returned unitary
    std::vector<Witness> witnesses;
    std::string reason;
};

/// Direct check of rho = (U_X (x) U_Y) sigma (U_X (x) U_Y)^dagger:
/// returns the max-norm residual. Pure inputs are compared as density
/// operators, so the result ignores global phase.
double verify_equivalence(const MultiState& rho, const MultiState& sigma,
                          const LocalUnitary& lu, double tol = kSpectrumTol);

/// Pure-state constructor: when the Schmidt coefficient multisets of psi
/// and phi agree across the cut, returns the local unitary mapping psi
/// onto phi (basis map |k>_psi -> |k>_phi on each side, completed to full
/// unitaries). Otherwise NotEquivalent with the two coefficient spectra
/// as witness.
ConstructResult pure_lu_construct(const MultiState& psi, const MultiState& phi,
                                  const Bipartition& bp, double tol = kSpectrumTol);

/// Mixed-state constructor for non-degenerate spectra: matches eigenvalues,
/// fixes the reference product bases from the Schmidt form of the top
/// eigenvectors, and compares every eigenvector's coefficient array in
/// those bases up to the residual phase gauge. On success the returned
/// unitary maps rho onto sigma. Degenerate global spectra or degenerate
/// Schmidt coefficients of the top eigenvector give Inapplicable.
ConstructResult nondegenerate_lu_construct(const MultiState& rho, const MultiState& sigma,
                                           const Bipartition& bp, double tol = kSpectrumTol,
                                           double gap = kGapThreshold);

}  // namespace lueq

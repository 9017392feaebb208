#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "lueq/error.hpp"

namespace lueq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Default tolerances used throughout the library.
inline constexpr double kSpectrumTol = 1e-9;        // spectrum multiset comparison
inline constexpr double kGapThreshold = 1e-7;       // degeneracy clustering gap
inline constexpr double kSchmidtRankCut = 1e-8;     // Schmidt-number coefficient cut
inline constexpr double kUnitaryTol = 1e-10;        // unitarity / orthonormality gates
inline constexpr double kResidualTol = 1e-8;        // constructor verification residual

/// Real eigen- or singular values, sorted descending.
struct Spectrum {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double sum() const;
    bool sorted_descending() const;
};

struct EigResult {
    Spectrum spectrum;          // descending
    ComplexMatrix eigenvectors; // columns ordered to match the spectrum
};

struct SvdResult {
    ComplexMatrix u;            // orthonormal columns
    Spectrum singulars;         // nonnegative, descending
    ComplexMatrix v;            // orthonormal columns; m = u * diag(s) * v^dagger
};

double max_abs(const ComplexMatrix& m);

/// Max-norm Hermiticity defect ||m - m^dagger||_max.
double hermiticity_defect(const ComplexMatrix& m);

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
/// Throws NotHermitian when the defect exceeds tol, NoConvergence if the
/// solver stalls.
EigResult hermitian_eig(const ComplexMatrix& m, double tol = kSpectrumTol);

/// Singular value decomposition m = U diag(s) V^dagger with thin factors.
SvdResult svd(const ComplexMatrix& m);

/// Multiset comparison of two spectra: the shorter is padded with zeros,
/// then the descending sequences are compared elementwise within tol.
bool multiset_equal(const Spectrum& a, const Spectrum& b, double tol = kSpectrumTol);

/// Extends k <= n orthonormal columns to a full n x n unitary by
/// orthonormalizing standard basis vectors against them. Deterministic.
/// cols may have zero columns; n is then taken from its row count.
ComplexMatrix complete_to_unitary(const ComplexMatrix& cols);

/// ||U^dagger U - I||_max.
double unitarity_defect(const ComplexMatrix& u);

/// Groups a descending spectrum into degeneracy clusters: a new cluster
/// starts wherever consecutive values differ by more than gap.
/// Returns the (begin, end) index ranges of each cluster.
std::vector<std::pair<std::size_t, std::size_t>> degeneracy_clusters(
    const Spectrum& s, double gap = kGapThreshold);

}  // namespace lueq

#include "lueq/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <numeric>

namespace lueq {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NotOrthonormal: return "NotOrthonormal";
        case ErrorCode::BadDims: return "BadDims";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::NotPositive: return "NotPositive";
        case ErrorCode::BadTrace: return "BadTrace";
        case ErrorCode::BadPartition: return "BadPartition";
        case ErrorCode::KindMismatch: return "KindMismatch";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::NotPure: return "NotPure";
        case ErrorCode::BadArgs: return "BadArgs";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::MixedDims: return "MixedDims";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

double Spectrum::sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

bool Spectrum::sorted_descending() const {
    return std::is_sorted(values.begin(), values.end(), std::greater<double>());
}

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint());
}

EigResult hermitian_eig(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols())
        throw Error(ErrorCode::BadDims, "hermitian_eig requires a square matrix");
    if (hermiticity_defect(m) > tol)
        throw Error(ErrorCode::NotHermitian, "hermiticity defect exceeds tolerance");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::NoConvergence, "self-adjoint eigensolver failed");

    const Eigen::Index n = m.rows();
    EigResult result;
    result.spectrum.values.resize(static_cast<std::size_t>(n));
    result.eigenvectors.resize(n, n);
    // Eigen returns ascending order; flip to descending.
    for (Eigen::Index i = 0; i < n; ++i) {
        result.spectrum.values[static_cast<std::size_t>(i)] = solver.eigenvalues()(n - 1 - i);
        result.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return result;
}

SvdResult svd(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::NoConvergence, "SVD failed to converge");

    SvdResult result;
    result.u = solver.matrixU();
    result.v = solver.matrixV();
    const auto& s = solver.singularValues();
    result.singulars.values.assign(s.data(), s.data() + s.size());
    return result;
}

bool multiset_equal(const Spectrum& a, const Spectrum& b, double tol) {
    std::vector<double> va = a.values;
    std::vector<double> vb = b.values;
    const std::size_t n = std::max(va.size(), vb.size());
    va.resize(n, 0.0);
    vb.resize(n, 0.0);
    std::sort(va.begin(), va.end(), std::greater<double>());
    std::sort(vb.begin(), vb.end(), std::greater<double>());
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(va[i] - vb[i]) > tol) return false;
    return true;
}

ComplexMatrix complete_to_unitary(const ComplexMatrix& cols) {
    const Eigen::Index n = cols.rows();
    const Eigen::Index k = cols.cols();
    if (n <= 0)
        throw Error(ErrorCode::BadDims, "complete_to_unitary needs at least dimension 1");
    if (k > n)
        throw Error(ErrorCode::BadDims, "more columns than rows");
    if (k > 0) {
        ComplexMatrix gram = cols.adjoint() * cols;
        gram -= ComplexMatrix::Identity(k, k);
        if (max_abs(gram) > kUnitaryTol)
            throw Error(ErrorCode::NotOrthonormal, "input columns are not orthonormal");
    }

    ComplexMatrix u(n, n);
    if (k > 0) u.leftCols(k) = cols;
    Eigen::Index filled = k;
    // Orthonormalize standard basis vectors against what we have, in index
    // order, skipping those that project away. Twice-through Gram-Schmidt
    // keeps the result orthonormal to machine precision.
    for (Eigen::Index e = 0; e < n && filled < n; ++e) {
        ComplexVector v = ComplexVector::Zero(n);
        v(e) = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index j = 0; j < filled; ++j)
                v -= u.col(j).dot(v) * u.col(j);
        const double norm = v.norm();
        if (norm < 0.5) continue;  // basis vector already covered
        u.col(filled++) = v / norm;
    }
    if (filled != n)
        throw Error(ErrorCode::NoConvergence, "unitary completion failed");
    return u;
}

double unitarity_defect(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) return 1.0;
    return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols()));
}

std::vector<std::pair<std::size_t, std::size_t>> degeneracy_clusters(const Spectrum& s,
                                                                     double gap) {
    std::vector<std::pair<std::size_t, std::size_t>> clusters;
    const std::size_t n = s.size();
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i == n || s.values[i - 1] - s.values[i] > gap) {
            clusters.emplace_back(begin, i);
            begin = i;
        }
    }
    return clusters;
}

}  // namespace lueq

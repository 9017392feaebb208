#include "lueq/constructors.hpp"

#include <cmath>

namespace lueq {

namespace {

/// Multiplies a column by the phase that makes its largest-magnitude entry
/// real positive.
void canonical_phase(Eigen::Ref<ComplexVector> column) {
    Eigen::Index arg_max = 0;
    column.cwiseAbs().maxCoeff(&arg_max);
    const Complex pivot = column(arg_max);
    if (std::abs(pivot) > 0.0) column *= std::conj(pivot) / std::abs(pivot);
}

ComplexMatrix group_vector(const ComplexVector& v, const PartyDims& dims,
                           const Bipartition& bp) {
    MultiState wrapped{dims, Kind::Pure, v};
    return group_as_bipartite(wrapped, bp);
}

/// Reference product bases fixed by the Schmidt form of one vector.
/// The X basis columns carry a canonical
/// phase; the Y Schmidt partners inherit theirs from the pairing so the
/// vector's own coefficient matrix is diag(s) exactly.
struct ReferenceBases {
    ComplexMatrix a;  // d_X x d_X unitary, columns = X reference basis
    ComplexMatrix b;  // d_Y x d_Y unitary, columns = Y reference basis
    Spectrum schmidt; // Schmidt coefficients of the fixing vector
    int rank = 0;
};

ReferenceBases fix_reference_bases(const ComplexMatrix& coeff, double rank_cut) {
    SvdResult decomp = svd(coeff);
    ReferenceBases ref;
    ref.schmidt = decomp.singulars;
    for (double s : ref.schmidt.values)
        if (s > rank_cut) ++ref.rank;

    const Eigen::Index d_x = coeff.rows();
    const Eigen::Index d_y = coeff.cols();
    const Eigen::Index r = ref.rank;
    ComplexMatrix a_cols(d_x, r), b_cols(d_y, r);
    for (Eigen::Index i = 0; i < r; ++i) {
        ComplexVector a_i = decomp.u.col(i);
        canonical_phase(a_i);
        // b_i(y) = sum_x conj(a_i(x)) coeff(x, y) / s_i keeps the pairing.
        ComplexVector b_i = (a_i.adjoint() * coeff).transpose() / ref.schmidt[static_cast<std::size_t>(i)];
        a_cols.col(i) = a_i;
        b_cols.col(i) = b_i;
    }
    ref.a = complete_to_unitary(a_cols.leftCols(r));
    ref.b = complete_to_unitary(b_cols.leftCols(r));
    if (r == 0) {
        ref.a = ComplexMatrix::Identity(d_x, d_x);
        ref.b = ComplexMatrix::Identity(d_y, d_y);
    }
    return ref;
}

/// Solves arg(beta/alpha) = t_k + x_m + y_n over all well-conditioned
/// entries, one phase per eigenvector / X-basis vector / Y-basis vector.
/// Returns false when no consistent phase assignment exists.
bool solve_phase_gauge(const std::vector<ComplexMatrix>& alpha,
                       const std::vector<ComplexMatrix>& beta, double tol,
                       std::vector<double>& t, std::vector<double>& x,
                       std::vector<double>& y) {
    const std::size_t r = alpha.size();
    const auto d_x = static_cast<std::size_t>(alpha[0].rows());
    const auto d_y = static_cast<std::size_t>(alpha[0].cols());
    t.assign(r, 0.0);
    x.assign(d_x, 0.0);
    y.assign(d_y, 0.0);
    std::vector<bool> t_known(r, false), x_known(d_x, false), y_known(d_y, false);

    struct Constraint {
        std::size_t k, m, n;
        double angle;  // arg(beta / alpha)
    };
    std::vector<Constraint> constraints;
    const double mag_cut = 1e-7;
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t m = 0; m < d_x; ++m)
            for (std::size_t n = 0; n < d_y; ++n) {
                const Complex av = alpha[k](static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
                const Complex bv = beta[k](static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
                if (std::abs(av) <= mag_cut || std::abs(bv) <= mag_cut) continue;
                constraints.push_back(Constraint{k, m, n, std::arg(bv / av)});
            }

    // Variables outside every constraint carry no information; pin them.
    {
        std::vector<bool> t_used(r, false), x_used(d_x, false), y_used(d_y, false);
        for (const Constraint& c : constraints) {
            t_used[c.k] = x_used[c.m] = y_used[c.n] = true;
        }
        for (std::size_t k = 0; k < r; ++k) t_known[k] = !t_used[k];
        for (std::size_t m = 0; m < d_x; ++m) x_known[m] = !x_used[m];
        for (std::size_t n = 0; n < d_y; ++n) y_known[n] = !y_used[n];
    }

    // Propagate: any constraint with exactly one unknown determines it.
    // When stuck, seed one free gauge phase in the first unresolved
    // constraint and propagate again.
    auto all_known = [&] {
        for (std::size_t k = 0; k < r; ++k) if (!t_known[k]) return false;
        for (std::size_t m = 0; m < d_x; ++m) if (!x_known[m]) return false;
        for (std::size_t n = 0; n < d_y; ++n) if (!y_known[n]) return false;
        return true;
    };
    while (!all_known()) {
        bool progress = false;
        for (const Constraint& c : constraints) {
            const int known =
                (t_known[c.k] ? 1 : 0) + (x_known[c.m] ? 1 : 0) + (y_known[c.n] ? 1 : 0);
            if (known != 2) continue;
            if (!t_known[c.k]) {
                t[c.k] = c.angle - x[c.m] - y[c.n];
                t_known[c.k] = true;
            } else if (!x_known[c.m]) {
                x[c.m] = c.angle - t[c.k] - y[c.n];
                x_known[c.m] = true;
            } else {
                y[c.n] = c.angle - t[c.k] - x[c.m];
                y_known[c.n] = true;
            }
            progress = true;
        }
        if (progress) continue;
        bool seeded = false;
        for (const Constraint& c : constraints) {
            if (!x_known[c.m]) { x_known[c.m] = true; seeded = true; break; }
            if (!y_known[c.n]) { y_known[c.n] = true; seeded = true; break; }
            if (!t_known[c.k]) { t_known[c.k] = true; seeded = true; break; }
        }
        if (!seeded) break;  // remaining unknowns touch no constraint
    }

    // Consistency: every constrained entry must now match.
    const double phase_tol = std::max(tol * 1e3, 1e-7);
    for (const Constraint& c : constraints) {
        const Complex expected =
            std::polar(1.0, t[c.k] + x[c.m] + y[c.n]);
        if (std::abs(std::polar(1.0, c.angle) - expected) > phase_tol) return false;
    }
    return true;
}

}  // namespace

const char* to_string(ConstructStatus s) {
    switch (s) {
        case ConstructStatus::Found: return "Found";
        case ConstructStatus::NotEquivalent: return "NotEquivalent";
        case ConstructStatus::Inapplicable: return "Inapplicable";
    }
    return "?";
}

double verify_equivalence(const MultiState& rho, const MultiState& sigma,
                          const LocalUnitary& lu, double tol) {
    if (rho.dims != sigma.dims)
        throw Error(ErrorCode::DimMismatch, "states live on different party dimensions");
    MultiState moved = apply_local_unitary(sigma, lu.bipartition, lu.u_x, lu.u_y, tol);
    return max_abs(moved.density() - rho.density());
}

ConstructResult pure_lu_construct(const MultiState& psi, const MultiState& phi,
                                  const Bipartition& bp, double tol) {
    if (!psi.is_pure() || !phi.is_pure())
        throw Error(ErrorCode::NotPure, "pure_lu_construct needs pure states");
    if (psi.dims != phi.dims)
        throw Error(ErrorCode::DimMismatch, "states live on different party dimensions");

    SchmidtDecomposition sd_psi = schmidt_decompose(psi, bp);
    SchmidtDecomposition sd_phi = schmidt_decompose(phi, bp);

    ConstructResult result;
    if (!multiset_equal(sd_psi.coefficients, sd_phi.coefficients, tol)) {
        result.status = ConstructStatus::NotEquivalent;
        result.reason = "Schmidt coefficient multisets differ";
        result.witnesses.push_back(
            Witness{"Schmidt", "coefficients across the cut", sd_psi.coefficients,
                    sd_phi.coefficients});
        return result;
    }

    // U_X maps psi's Schmidt basis onto phi's, column by column; equal
    // coefficients within a degenerate block make any in-order pairing
    // valid. Completion fixes the action outside the Schmidt support.
    ComplexMatrix full_psi_x = complete_to_unitary(sd_psi.left_basis);
    ComplexMatrix full_phi_x = complete_to_unitary(sd_phi.left_basis);
    ComplexMatrix full_psi_y = complete_to_unitary(sd_psi.right_basis);
    ComplexMatrix full_phi_y = complete_to_unitary(sd_phi.right_basis);

    result.status = ConstructStatus::Found;
    result.lu.bipartition = bp;
    result.lu.u_x = full_phi_x * full_psi_x.adjoint();
    result.lu.u_y = full_phi_y * full_psi_y.adjoint();
    result.residual = verify_equivalence(phi, psi, result.lu, tol);
    return result;
}

ConstructResult nondegenerate_lu_construct(const MultiState& rho, const MultiState& sigma,
                                           const Bipartition& bp, double tol, double gap) {
    if (rho.dims != sigma.dims)
        throw Error(ErrorCode::DimMismatch, "states live on different party dimensions");

    EigResult eig_rho = hermitian_eig(rho.density());
    EigResult eig_sigma = hermitian_eig(sigma.density());

    const double zero_cut = std::max(tol, kSpectrumTol);
    auto rank_of = [zero_cut](const Spectrum& s) {
        std::size_t r = 0;
        while (r < s.size() && s[r] > zero_cut) ++r;
        return r;
    };
    const std::size_t rank_rho = rank_of(eig_rho.spectrum);
    const std::size_t rank_sigma = rank_of(eig_sigma.spectrum);

    ConstructResult result;
    if (rank_rho != rank_sigma ||
        !multiset_equal(eig_rho.spectrum, eig_sigma.spectrum, tol)) {
        result.status = ConstructStatus::NotEquivalent;
        result.reason = "global spectra differ";
        result.witnesses.push_back(
            Witness{"A1", "global spectra", eig_rho.spectrum, eig_sigma.spectrum});
        return result;
    }

    // Non-degeneracy gate over the nonzero spectrum, including separation
    // from the kernel when the state is rank-deficient.
    for (std::size_t k = 0; k + 1 < rank_rho; ++k)
        if (eig_rho.spectrum[k] - eig_rho.spectrum[k + 1] <= gap) {
            result.status = ConstructStatus::Inapplicable;
            result.reason = "degenerate global spectrum";
            return result;
        }
    if (rank_rho > 0 && rank_rho < eig_rho.spectrum.size() &&
        eig_rho.spectrum[rank_rho - 1] <= gap) {
        result.status = ConstructStatus::Inapplicable;
        result.reason = "smallest nonzero eigenvalue is not separated from zero";
        return result;
    }
    if (rank_rho == 0) {
        result.status = ConstructStatus::Inapplicable;
        result.reason = "zero state";
        return result;
    }

    // Reference bases from the Schmidt forms of the top eigenvectors.
    ComplexMatrix m1_rho = group_vector(eig_rho.eigenvectors.col(0), rho.dims, bp);
    ComplexMatrix m1_sigma = group_vector(eig_sigma.eigenvectors.col(0), sigma.dims, bp);
    ReferenceBases ref_rho = fix_reference_bases(m1_rho, kSchmidtRankCut);
    ReferenceBases ref_sigma = fix_reference_bases(m1_sigma, kSchmidtRankCut);

    for (int i = 0; i + 1 < ref_rho.rank; ++i)
        if (ref_rho.schmidt[static_cast<std::size_t>(i)] -
                ref_rho.schmidt[static_cast<std::size_t>(i + 1)] <= gap) {
            result.status = ConstructStatus::Inapplicable;
            result.reason = "degenerate Schmidt coefficients of the top eigenvector";
            return result;
        }
    if (ref_rho.rank != ref_sigma.rank ||
        !multiset_equal(ref_rho.schmidt, ref_sigma.schmidt, tol)) {
        result.status = ConstructStatus::NotEquivalent;
        result.reason = "top eigenvectors have different Schmidt coefficients";
        result.witnesses.push_back(Witness{"Schmidt", "top eigenvector coefficients",
                                           ref_rho.schmidt, ref_sigma.schmidt});
        return result;
    }

    // Coefficient arrays of every eigenvector in the fixed bases.
    std::vector<ComplexMatrix> alpha, beta;
    for (std::size_t k = 0; k < rank_rho; ++k) {
        ComplexMatrix mk_rho = group_vector(eig_rho.eigenvectors.col(static_cast<Eigen::Index>(k)), rho.dims, bp);
        ComplexMatrix mk_sigma = group_vector(eig_sigma.eigenvectors.col(static_cast<Eigen::Index>(k)), sigma.dims, bp);
        alpha.push_back(ref_rho.a.adjoint() * mk_rho * ref_rho.b.conjugate());
        beta.push_back(ref_sigma.a.adjoint() * mk_sigma * ref_sigma.b.conjugate());
        if (max_abs(alpha.back().cwiseAbs() - beta.back().cwiseAbs()) >
            std::max(tol * 1e2, 1e-7)) {
            result.status = ConstructStatus::NotEquivalent;
            result.reason = "eigenvector coefficient magnitudes differ";
            return result;
        }
    }

    std::vector<double> t, x, y;
    if (!solve_phase_gauge(alpha, beta, tol, t, x, y)) {
        result.status = ConstructStatus::NotEquivalent;
        result.reason = "eigenvector coefficients do not coincide under any phase gauge";
        return result;
    }

    // U_X |m> = e^{i x_m} |m'>, U_Y |n> = e^{i y_n} |n'>.
    const Eigen::Index d_x = ref_rho.a.rows();
    const Eigen::Index d_y = ref_rho.b.rows();
    ComplexMatrix u_x = ComplexMatrix::Zero(d_x, d_x);
    ComplexMatrix u_y = ComplexMatrix::Zero(d_y, d_y);
    for (Eigen::Index m = 0; m < d_x; ++m)
        u_x += std::polar(1.0, x[static_cast<std::size_t>(m)]) * ref_sigma.a.col(m) *
               ref_rho.a.col(m).adjoint();
    for (Eigen::Index n = 0; n < d_y; ++n)
        u_y += std::polar(1.0, y[static_cast<std::size_t>(n)]) * ref_sigma.b.col(n) *
               ref_rho.b.col(n).adjoint();

    result.lu.bipartition = bp;
    result.lu.u_x = u_x;
    result.lu.u_y = u_y;
    result.residual = verify_equivalence(sigma, rho, result.lu, tol);
    if (result.residual > kResidualTol) {
        result.status = ConstructStatus::NotEquivalent;
        result.reason = "constructed unitary does not map rho onto sigma";
        return result;
    }
    result.status = ConstructStatus::Found;
    return result;
}

}  // namespace lueq

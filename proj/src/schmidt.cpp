#include "lueq/schmidt.hpp"

#include <cmath>

namespace lueq {

SchmidtDecomposition schmidt_decompose(const MultiState& s, const Bipartition& bp,
                                       double rank_cut) {
    if (!s.is_pure())
        throw Error(ErrorCode::NotPure, "Schmidt decomposition needs a pure state");

    ComplexMatrix coeff = group_as_bipartite(s, bp);
    SvdResult decomp = svd(coeff);

    SchmidtDecomposition sd;
    sd.coefficients = decomp.singulars;
    sd.left_basis = decomp.u;
    // coeff = U S V^dagger, so psi = sum_k s_k u_k (x) conj(v_k).
    sd.right_basis = decomp.v.conjugate();
    sd.schmidt_number = 0;
    for (double c : sd.coefficients.values)
        if (c > rank_cut) ++sd.schmidt_number;
    return sd;
}

double entanglement_entropy(const SchmidtDecomposition& sd) {
    double entropy = 0.0;
    for (double c : sd.coefficients.values) {
        const double p = c * c;
        if (p > 0.0) entropy -= p * std::log2(p);
    }
    return entropy < 0.0 ? 0.0 : entropy;
}

}  // namespace lueq

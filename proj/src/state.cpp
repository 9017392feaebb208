#include "lueq/state.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lueq {

long PartyDims::total() const {
    long d = 1;
    for (int x : dims) d *= x;
    return d;
}

Bipartition Bipartition::from_x(std::vector<int> x, int n_parties) {
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    if (x.empty() || static_cast<int>(x.size()) >= n_parties)
        throw Error(ErrorCode::BadPartition, "both sides of the cut must be nonempty");
    if (x.front() < 0 || x.back() >= n_parties)
        throw Error(ErrorCode::BadPartition, "party index out of range");
    Bipartition bp;
    bp.x_parties = std::move(x);
    for (int p = 0; p < n_parties; ++p)
        if (!std::binary_search(bp.x_parties.begin(), bp.x_parties.end(), p))
            bp.y_parties.push_back(p);
    return bp;
}

std::string Bipartition::to_string() const {
    std::ostringstream out;
    auto write = [&out](const std::vector<int>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out << ',';
            out << v[i] + 1;
        }
    };
    write(x_parties);
    out << '|';
    write(y_parties);
    return out.str();
}

ComplexMatrix MultiState::density() const {
    if (kind == Kind::Mixed) return data;
    return data * data.adjoint();
}

const MultiState& validate(const MultiState& s, double tol) {
    if (s.dims.parties() < 1)
        throw Error(ErrorCode::BadDims, "at least one party required");
    for (int d : s.dims.dims)
        if (d < 2) throw Error(ErrorCode::BadDims, "party dimension must be >= 2");
    const long total = s.dims.total();
    if (!s.data.allFinite())
        throw Error(ErrorCode::BadDims, "state contains non-finite entries");
    if (s.kind == Kind::Pure) {
        if (s.data.rows() != total || s.data.cols() != 1)
            throw Error(ErrorCode::BadDims, "pure state must be a D x 1 column");
        if (std::abs(s.data.norm() - 1.0) > tol)
            throw Error(ErrorCode::NotNormalized, "pure state norm differs from 1");
    } else {
        if (s.data.rows() != total || s.data.cols() != total)
            throw Error(ErrorCode::BadDims, "density operator must be D x D");
        if (hermiticity_defect(s.data) > tol)
            throw Error(ErrorCode::NotHermitian, "density operator is not Hermitian");
        if (std::abs(s.data.trace().real() - 1.0) > tol ||
            std::abs(s.data.trace().imag()) > tol)
            throw Error(ErrorCode::BadTrace, "density operator trace differs from 1");
        EigResult eig = hermitian_eig(s.data, tol);
        if (eig.spectrum.values.back() < -tol)
            throw Error(ErrorCode::NotPositive, "density operator has a negative eigenvalue");
    }
    return s;
}

long side_dim(const PartyDims& dims, const Bipartition& bp, Side side) {
    const auto& parties = side == Side::X ? bp.x_parties : bp.y_parties;
    long d = 1;
    for (int p : parties) d *= dims.dims[static_cast<std::size_t>(p)];
    return d;
}

std::vector<long> grouping_permutation(const PartyDims& dims, const Bipartition& bp) {
    const int n = dims.parties();
    if (bp.x_parties.empty() || bp.y_parties.empty() ||
        static_cast<int>(bp.x_parties.size() + bp.y_parties.size()) != n)
        throw Error(ErrorCode::BadPartition, "bipartition does not cover the party set");

    const long total = dims.total();
    const long d_y = side_dim(dims, bp, Side::Y);
    std::vector<long> perm(static_cast<std::size_t>(total));
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (long i = 0; i < total; ++i) {
        long rest = i;
        for (int p = n - 1; p >= 0; --p) {
            digits[static_cast<std::size_t>(p)] = static_cast<int>(rest % dims.dims[static_cast<std::size_t>(p)]);
            rest /= dims.dims[static_cast<std::size_t>(p)];
        }
        long x_idx = 0;
        for (int p : bp.x_parties) x_idx = x_idx * dims.dims[static_cast<std::size_t>(p)] + digits[static_cast<std::size_t>(p)];
        long y_idx = 0;
        for (int p : bp.y_parties) y_idx = y_idx * dims.dims[static_cast<std::size_t>(p)] + digits[static_cast<std::size_t>(p)];
        perm[static_cast<std::size_t>(i)] = x_idx * d_y + y_idx;
    }
    return perm;
}

ComplexMatrix group_as_bipartite(const MultiState& s, const Bipartition& bp) {
    const auto perm = grouping_permutation(s.dims, bp);
    const long d_x = side_dim(s.dims, bp, Side::X);
    const long d_y = side_dim(s.dims, bp, Side::Y);
    const long total = s.total_dim();
    if (s.is_pure()) {
        ComplexMatrix coeff(d_x, d_y);
        for (long i = 0; i < total; ++i)
            coeff(perm[static_cast<std::size_t>(i)] / d_y, perm[static_cast<std::size_t>(i)] % d_y) = s.data(i, 0);
        return coeff;
    }
    ComplexMatrix grouped(total, total);
    for (long i = 0; i < total; ++i)
        for (long j = 0; j < total; ++j)
            grouped(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = s.data(i, j);
    return grouped;
}

ComplexMatrix ungroup_operator(const ComplexMatrix& grouped, const PartyDims& dims,
                               const Bipartition& bp) {
    const auto perm = grouping_permutation(dims, bp);
    const long total = dims.total();
    ComplexMatrix out(total, total);
    for (long i = 0; i < total; ++i)
        for (long j = 0; j < total; ++j)
            out(i, j) = grouped(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    return out;
}

ComplexVector ungroup_vector(const ComplexMatrix& coeff, const PartyDims& dims,
                             const Bipartition& bp) {
    const auto perm = grouping_permutation(dims, bp);
    const long d_y = side_dim(dims, bp, Side::Y);
    const long total = dims.total();
    ComplexVector out(total);
    for (long i = 0; i < total; ++i)
        out(i) = coeff(perm[static_cast<std::size_t>(i)] / d_y, perm[static_cast<std::size_t>(i)] % d_y);
    return out;
}

ComplexMatrix partial_trace(const MultiState& s, const Bipartition& bp, Side keep) {
    if (s.is_pure()) {
        ComplexMatrix coeff = group_as_bipartite(s, bp);
        if (keep == Side::X) return coeff * coeff.adjoint();
        return coeff.transpose() * coeff.conjugate();
    }
    ComplexMatrix grouped = group_as_bipartite(s, bp);
    const long d_x = side_dim(s.dims, bp, Side::X);
    const long d_y = side_dim(s.dims, bp, Side::Y);
    if (keep == Side::X) {
        ComplexMatrix out = ComplexMatrix::Zero(d_x, d_x);
        for (long x = 0; x < d_x; ++x)
            for (long xp = 0; xp < d_x; ++xp)
                for (long y = 0; y < d_y; ++y)
                    out(x, xp) += grouped(x * d_y + y, xp * d_y + y);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(d_y, d_y);
    for (long y = 0; y < d_y; ++y)
        for (long yp = 0; yp < d_y; ++yp)
            for (long x = 0; x < d_x; ++x)
                out(y, yp) += grouped(x * d_y + y, x * d_y + yp);
    return out;
}

ComplexMatrix partial_transpose_grouped(const ComplexMatrix& grouped, long d_x, long d_y,
                                        Side side) {
    ComplexMatrix out(d_x * d_y, d_x * d_y);
    for (long x = 0; x < d_x; ++x)
        for (long xp = 0; xp < d_x; ++xp)
            for (long y = 0; y < d_y; ++y)
                for (long yp = 0; yp < d_y; ++yp) {
                    if (side == Side::Y)
                        out(x * d_y + y, xp * d_y + yp) = grouped(x * d_y + yp, xp * d_y + y);
                    else
                        out(x * d_y + y, xp * d_y + yp) = grouped(xp * d_y + y, x * d_y + yp);
                }
    return out;
}

ComplexMatrix partial_transpose(const MultiState& s, const Bipartition& bp, Side side) {
    MultiState dense{s.dims, Kind::Mixed, s.density()};
    ComplexMatrix grouped = group_as_bipartite(dense, bp);
    return partial_transpose_grouped(grouped, side_dim(s.dims, bp, Side::X),
                                     side_dim(s.dims, bp, Side::Y), side);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

MultiState tensor_product(const MultiState& a, const MultiState& b) {
    if (a.kind != b.kind)
        throw Error(ErrorCode::KindMismatch, "tensor_product requires matching kinds");
    MultiState out;
    out.dims.dims = a.dims.dims;
    out.dims.dims.insert(out.dims.dims.end(), b.dims.dims.begin(), b.dims.dims.end());
    out.kind = a.kind;
    out.data = kron(a.data, b.data);
    return out;
}

MultiState apply_local_unitary(const MultiState& s, const Bipartition& bp,
                               const ComplexMatrix& u_x, const ComplexMatrix& u_y,
                               double tol) {
    const long d_x = side_dim(s.dims, bp, Side::X);
    const long d_y = side_dim(s.dims, bp, Side::Y);
    if (u_x.rows() != d_x || u_x.cols() != d_x || u_y.rows() != d_y || u_y.cols() != d_y)
        throw Error(ErrorCode::DimMismatch, "unitary factor dimensions do not match the cut");
    if (unitarity_defect(u_x) > tol || unitarity_defect(u_y) > tol)
        throw Error(ErrorCode::NotUnitary, "unitarity defect exceeds tolerance");

    MultiState out = s;
    if (s.is_pure()) {
        // psi' = (U_X (x) U_Y) psi  <=>  M' = U_X M U_Y^T on the coefficient matrix.
        ComplexMatrix coeff = group_as_bipartite(s, bp);
        out.data = ungroup_vector(u_x * coeff * u_y.transpose(), s.dims, bp);
    } else {
        ComplexMatrix u = kron(u_x, u_y);
        ComplexMatrix grouped = group_as_bipartite(s, bp);
        out.data = ungroup_operator(u * grouped * u.adjoint(), s.dims, bp);
    }
    return out;
}

MultiState apply_per_party(const MultiState& s, const std::vector<ComplexMatrix>& factors,
                           double tol) {
    if (static_cast<int>(factors.size()) != s.dims.parties())
        throw Error(ErrorCode::DimMismatch, "one unitary per party required");
    MultiState out = s;
    for (int p = 0; p < s.dims.parties(); ++p) {
        if (s.dims.parties() == 1) {
            const ComplexMatrix& u = factors[0];
            if (unitarity_defect(u) > tol)
                throw Error(ErrorCode::NotUnitary, "unitarity defect exceeds tolerance");
            out.data = s.is_pure() ? ComplexMatrix(u * out.data)
                                   : ComplexMatrix(u * out.data * u.adjoint());
            break;
        }
        Bipartition bp = Bipartition::from_x({p}, s.dims.parties());
        const long d_rest = side_dim(s.dims, bp, Side::Y);
        out = apply_local_unitary(out, bp, factors[static_cast<std::size_t>(p)],
                                  ComplexMatrix::Identity(d_rest, d_rest), tol);
    }
    return out;
}

MultiState reduced_state(const MultiState& s, const Bipartition& bp, Side keep) {
    MultiState out;
    const auto& parties = keep == Side::X ? bp.x_parties : bp.y_parties;
    for (int p : parties) out.dims.dims.push_back(s.dims.dims[static_cast<std::size_t>(p)]);
    out.kind = Kind::Mixed;
    out.data = partial_trace(s, bp, keep);
    return out;
}

}  // namespace lueq

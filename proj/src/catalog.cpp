#include "lueq/catalog.hpp"

#include <bit>
#include <cmath>
#include <random>

namespace lueq {
namespace catalog {

namespace {

long ipow(long base, int exp) {
    long out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

int popcount_pairs_distance(const RingGeometry& geo, const std::vector<int>& positions) {
    int sum = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
        for (std::size_t j = i + 1; j < positions.size(); ++j)
            sum += geo.distance(positions[i], positions[j]);
    return sum;
}

std::vector<int> one_bit_positions(long bits, int count, int offset) {
    std::vector<int> out;
    for (int j = 0; j < count; ++j)
        if (bits & (1L << j)) out.push_back(offset + j);
    return out;
}

}  // namespace

MultiState ghz(int n_parties, int d) {
    if (n_parties < 2 || d < 2)
        throw Error(ErrorCode::BadArgs, "GHZ needs N >= 2 parties of dimension >= 2");
    MultiState out;
    out.dims.dims.assign(static_cast<std::size_t>(n_parties), d);
    out.kind = Kind::Pure;
    out.data = ComplexMatrix::Zero(out.total_dim(), 1);
    long rep = 0;  // index stride of |k,k,...,k>
    for (int p = 0; p < n_parties; ++p) rep = rep * d + 1;
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; ++k) out.data(k * rep, 0) = amp;
    return out;
}

MultiState epr_with_ancilla(int n_parties, const MultiState* phi) {
    if (n_parties < 2)
        throw Error(ErrorCode::BadArgs, "need at least the two EPR parties");
    MultiState epr = ghz(2, 2);
    if (n_parties == 2) {
        if (phi) throw Error(ErrorCode::DimMismatch, "no ancilla parties for N = 2");
        return epr;
    }
    MultiState ancilla;
    if (phi) {
        if (!phi->is_pure() || phi->dims.parties() != n_parties - 2)
            throw Error(ErrorCode::DimMismatch, "phi must be pure on parties 3..N");
        ancilla = *phi;
    } else {
        ancilla.dims.dims.assign(static_cast<std::size_t>(n_parties - 2), 2);
        ancilla.kind = Kind::Pure;
        ancilla.data = ComplexMatrix::Zero(ancilla.total_dim(), 1);
        ancilla.data(0, 0) = 1.0;
    }
    return tensor_product(epr, ancilla);
}

int RingGeometry::distance(int i, int j) const {
    const int diff = std::abs(i - j);
    return std::min(diff, total() - diff);
}

RingState ring_state(int n) {
    if (n < 1 || n > 6)
        throw Error(ErrorCode::BadArgs, "ring state supports 1 <= n <= 6");
    RingGeometry geo{n};
    const int parties = geo.total();
    const long x_size = ipow(2, n);
    const long y_size = ipow(2, n + 1);

    RingState out;
    out.state.dims.dims.assign(static_cast<std::size_t>(parties), 2);
    out.state.kind = Kind::Pure;
    out.state.data = ComplexMatrix::Zero(out.state.total_dim(), 1);

    // Overall amplitude: 1/sqrt(2^n) Schmidt weight times the unit-norm
    // scaling 1/sqrt(2^{n+1}) of each |alpha_k>.
    const double amp = 1.0 / std::sqrt(static_cast<double>(x_size)) /
                       std::sqrt(static_cast<double>(y_size));
    for (long k = 0; k < x_size; ++k) {
        const auto k_pos = one_bit_positions(k, n, 0);
        const int d_k = popcount_pairs_distance(geo, k_pos);
        for (long l = 0; l < y_size; ++l) {
            const auto l_pos = one_bit_positions(l, n + 1, n);
            const int d_l = popcount_pairs_distance(geo, l_pos);
            int d_kl = 0;
            for (int a : k_pos)
                for (int b : l_pos) d_kl += geo.distance(a, b);
            const int sign = (d_k + d_l + d_kl) % 2 == 0 ? 1 : -1;

            // Party p = ring position p, most significant digit first;
            // bit j of k (l) sits on ring position j (n + j).
            long index = 0;
            for (int p = 0; p < parties; ++p) {
                int bit;
                if (p < n)
                    bit = static_cast<int>((k >> p) & 1);
                else
                    bit = static_cast<int>((l >> (p - n)) & 1);
                index = index * 2 + bit;
            }
            out.state.data(index, 0) = sign * amp;
        }
    }

    // The distance-parity family can degenerate: on some ring sizes the
    // per-site parity vectors become linearly dependent and two blocks
    // coincide up to sign, destroying the Schmidt form. Detect that and
    // fall back to the canonical bilinear parity phases, which give an
    // orthonormal block family on every ring size.
    ComplexMatrix blocks(y_size, x_size);
    for (long k = 0; k < x_size; ++k)
        blocks.col(k) = out.state.data.block(k * y_size, 0, y_size, 1);
    const double gram_defect =
        (blocks.adjoint() * blocks * static_cast<double>(x_size) -
         ComplexMatrix::Identity(x_size, x_size))
            .cwiseAbs()
            .maxCoeff();
    if (gram_defect > 1e-9) {
        for (long k = 0; k < x_size; ++k) {
            for (long l = 0; l < y_size; ++l) {
                const int dot = std::popcount(static_cast<unsigned long>(k & l & (x_size - 1)));
                const int sign = dot % 2 == 0 ? 1 : -1;
                long index = 0;
                for (int p = 0; p < parties; ++p) {
                    int bit;
                    if (p < n)
                        bit = static_cast<int>((k >> p) & 1);
                    else
                        bit = static_cast<int>((l >> (p - n)) & 1);
                    index = index * 2 + bit;
                }
                out.state.data(index, 0) = sign * amp;
            }
        }
    }

    std::vector<int> x_parties;
    for (int p = 0; p < n; ++p) x_parties.push_back(p);
    out.cut = Bipartition::from_x(x_parties, parties);
    return out;
}

CounterexamplePair counterexample_pair(const std::array<int, 4>& assignment) {
    const std::array<double, 4> values{1.0 / 4, 3.0 / 8, 5.0 / 16, 1.0 / 16};
    {
        std::array<bool, 4> seen{};
        for (int a : assignment) {
            if (a < 0 || a > 3 || seen[static_cast<std::size_t>(a)])
                throw Error(ErrorCode::BadArgs, "assignment must permute {0,1,2,3}");
            seen[static_cast<std::size_t>(a)] = true;
        }
    }

    const long dim = 16;
    auto basis_vec = [dim](std::initializer_list<long> indices) {
        ComplexVector v = ComplexVector::Zero(dim);
        for (long i : indices) v(i) = 1.0;
        v /= v.norm();
        return v;
    };
    // |x, y> has index 8x + y: qubit 1 is X, qubits 2-4 are Y.
    const std::array<ComplexVector, 4> rho_vecs{
        basis_vec({1, 2, 4, 8}),
        basis_vec({15}),
        basis_vec({5}),
        basis_vec({9, 10, 12}),
    };
    const std::array<ComplexVector, 4> sigma_vecs{
        basis_vec({15}),
        basis_vec({7, 11, 5}),
        basis_vec({0}),
        basis_vec({1}),
    };

    CounterexamplePair out;
    out.rho.dims.dims = {2, 2, 2, 2};
    out.rho.kind = Kind::Mixed;
    out.rho.data = ComplexMatrix::Zero(dim, dim);
    out.sigma = out.rho;
    for (std::size_t i = 0; i < 4; ++i) {
        out.rho.data += values[i] * rho_vecs[i] * rho_vecs[i].adjoint();
        out.sigma.data += values[static_cast<std::size_t>(assignment[i])] * sigma_vecs[i] *
                          sigma_vecs[i].adjoint();
    }
    out.cut = Bipartition::from_x({0}, 4);
    return out;
}

ComplexMatrix random_unitary(long dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase convention so the distribution is Haar.
    for (long j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        q.col(j) *= std::abs(d) > 0.0 ? d / std::abs(d) : Complex(1.0, 0.0);
    }
    return q;
}

MultiState random_state(const PartyDims& dims, Kind kind, int rank, std::uint64_t seed) {
    const long total = dims.total();
    if (rank < 1 || rank > total)
        throw Error(ErrorCode::BadArgs, "rank must be between 1 and the total dimension");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    MultiState out;
    out.dims = dims;
    if (kind == Kind::Pure) {
        out.kind = Kind::Pure;
        ComplexVector v(total);
        for (long i = 0; i < total; ++i) v(i) = Complex(gauss(rng), gauss(rng));
        out.data = v / v.norm();
        return out;
    }

    // Non-degenerate simplex spectrum: resample until the smallest gap
    // (including the gap to zero) exceeds 1e-4.
    std::vector<double> spectrum(static_cast<std::size_t>(rank));
    std::exponential_distribution<double> expo(1.0);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        double sum = 0.0;
        for (auto& v : spectrum) { v = expo(rng); sum += v; }
        for (auto& v : spectrum) v /= sum;
        std::sort(spectrum.begin(), spectrum.end(), std::greater<double>());
        bool ok = spectrum.back() > 1e-4;
        for (std::size_t i = 1; i < spectrum.size() && ok; ++i)
            ok = spectrum[i - 1] - spectrum[i] > 1e-4;
        if (ok) break;
        if (attempt == 999)
            throw Error(ErrorCode::NoConvergence, "could not sample a non-degenerate spectrum");
    }

    ComplexMatrix basis = random_unitary(total, rng());
    out.kind = Kind::Mixed;
    out.data = ComplexMatrix::Zero(total, total);
    for (int k = 0; k < rank; ++k)
        out.data += spectrum[static_cast<std::size_t>(k)] * basis.col(k) * basis.col(k).adjoint();
    return out;
}

std::vector<ComplexMatrix> random_party_unitaries(const PartyDims& dims, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ComplexMatrix> out;
    out.reserve(dims.dims.size());
    for (int d : dims.dims) out.push_back(random_unitary(d, rng()));
    return out;
}

LocalUnitary random_local_unitary(const PartyDims& dims, const Bipartition& bp,
                                  std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    LocalUnitary lu;
    lu.bipartition = bp;
    lu.u_x = random_unitary(side_dim(dims, bp, Side::X), rng());
    lu.u_y = random_unitary(side_dim(dims, bp, Side::Y), rng());
    return lu;
}

}  // namespace catalog
}  // namespace lueq

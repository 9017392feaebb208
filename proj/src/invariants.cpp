#include "lueq/invariants.hpp"

#include <algorithm>
#include <set>

namespace lueq {

namespace {

Spectrum spectrum_of(const ComplexMatrix& hermitian, double tol) {
    return hermitian_eig(hermitian, std::max(tol, kSpectrumTol)).spectrum;
}

void add_witness(std::vector<Witness>* witnesses, std::string invariant, std::string detail,
                 Spectrum lhs, Spectrum rhs) {
    if (!witnesses) return;
    witnesses->push_back(Witness{std::move(invariant), std::move(detail), std::move(lhs),
                                 std::move(rhs)});
}

void require_same_dims(const MultiState& rho, const MultiState& sigma) {
    if (rho.dims != sigma.dims)
        throw Error(ErrorCode::DimMismatch, "states live on different party dimensions");
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "Pass";
        case Verdict::Fail: return "Fail";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Verdict InvariantReport::overall() const {
    for (Verdict v : {a1_global, a2_reduced, a3_projectors, a4_partial_transpose})
        if (v == Verdict::Fail) return Verdict::Fail;
    for (Verdict v : {a1_global, a2_reduced, a3_projectors, a4_partial_transpose})
        if (v == Verdict::Inconclusive) return Verdict::Inconclusive;
    return Verdict::Pass;
}

Verdict check_a1_global(const MultiState& rho, const MultiState& sigma, double tol,
                        std::vector<Witness>* witnesses) {
    if (rho.total_dim() != sigma.total_dim())
        throw Error(ErrorCode::DimMismatch, "total dimensions differ");
    Spectrum a = spectrum_of(rho.density(), tol);
    Spectrum b = spectrum_of(sigma.density(), tol);
    if (multiset_equal(a, b, tol)) return Verdict::Pass;
    add_witness(witnesses, "A1", "global spectra differ", std::move(a), std::move(b));
    return Verdict::Fail;
}

Verdict check_a2_reduced(const MultiState& rho, const MultiState& sigma,
                         const Bipartition& bp, double tol,
                         std::vector<Witness>* witnesses) {
    require_same_dims(rho, sigma);
    Verdict verdict = Verdict::Pass;
    for (Side side : {Side::X, Side::Y}) {
        Spectrum a = spectrum_of(partial_trace(rho, bp, side), tol);
        Spectrum b = spectrum_of(partial_trace(sigma, bp, side), tol);
        if (!multiset_equal(a, b, tol)) {
            add_witness(witnesses, "A2",
                        side == Side::X ? "X-side reduced spectra differ"
                                        : "Y-side reduced spectra differ",
                        std::move(a), std::move(b));
            verdict = Verdict::Fail;
        }
    }
    return verdict;
}

std::vector<EigenprojectorSummary> eigenprojector_summaries(const MultiState& s,
                                                            const Bipartition& bp,
                                                            double gap) {
    MultiState dense{s.dims, Kind::Mixed, s.density()};
    EigResult eig = hermitian_eig(dense.data);
    auto clusters = degeneracy_clusters(eig.spectrum, gap);

    std::vector<EigenprojectorSummary> out;
    out.reserve(clusters.size());
    for (auto [begin, end] : clusters) {
        const auto n = static_cast<Eigen::Index>(end - begin);
        ComplexMatrix block = eig.eigenvectors.middleCols(static_cast<Eigen::Index>(begin), n);
        ComplexMatrix projector = block * block.adjoint();
        MultiState wrapped{s.dims, Kind::Mixed, projector};

        EigenprojectorSummary summary;
        double mean = 0.0;
        for (std::size_t i = begin; i < end; ++i) mean += eig.spectrum.values[i];
        summary.eigenvalue = mean / static_cast<double>(end - begin);
        summary.dimension = static_cast<int>(end - begin);
        summary.reduced_x_spectrum = spectrum_of(partial_trace(wrapped, bp, Side::X), gap);
        summary.reduced_y_spectrum = spectrum_of(partial_trace(wrapped, bp, Side::Y), gap);
        out.push_back(std::move(summary));
    }
    return out;
}

Verdict check_a3_projectors(const MultiState& rho, const MultiState& sigma,
                            const Bipartition& bp, double tol,
                            std::vector<Witness>* witnesses, double gap) {
    require_same_dims(rho, sigma);
    auto summaries_rho = eigenprojector_summaries(rho, bp, gap);
    auto summaries_sigma = eigenprojector_summaries(sigma, bp, gap);

    // Clusters within one state that are closer than 10 x tol cannot be
    // paired with confidence between the two states.
    auto ambiguous = [tol](const std::vector<EigenprojectorSummary>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (v[i - 1].eigenvalue - v[i].eigenvalue < 10.0 * tol) return true;
        return false;
    };
    if (ambiguous(summaries_rho) || ambiguous(summaries_sigma)) {
        add_witness(witnesses, "A3", "near-degenerate clusters, pairing ambiguous", {}, {});
        return Verdict::Inconclusive;
    }

    if (summaries_rho.size() != summaries_sigma.size()) {
        Spectrum a, b;
        for (const auto& s : summaries_rho) a.values.push_back(s.eigenvalue);
        for (const auto& s : summaries_sigma) b.values.push_back(s.eigenvalue);
        add_witness(witnesses, "A3", "degeneracy cluster counts differ", std::move(a),
                    std::move(b));
        return Verdict::Fail;
    }

    for (std::size_t k = 0; k < summaries_rho.size(); ++k) {
        const auto& p = summaries_rho[k];
        const auto& q = summaries_sigma[k];
        if (std::abs(p.eigenvalue - q.eigenvalue) > tol || p.dimension != q.dimension) {
            add_witness(witnesses, "A3", "cluster eigenvalue or rank mismatch",
                        Spectrum{{p.eigenvalue, static_cast<double>(p.dimension)}},
                        Spectrum{{q.eigenvalue, static_cast<double>(q.dimension)}});
            return Verdict::Fail;
        }
        if (!multiset_equal(p.reduced_x_spectrum, q.reduced_x_spectrum, tol)) {
            add_witness(witnesses, "A3", "eigenprojector X-side reduced spectra differ",
                        p.reduced_x_spectrum, q.reduced_x_spectrum);
            return Verdict::Fail;
        }
        if (!multiset_equal(p.reduced_y_spectrum, q.reduced_y_spectrum, tol)) {
            add_witness(witnesses, "A3", "eigenprojector Y-side reduced spectra differ",
                        p.reduced_y_spectrum, q.reduced_y_spectrum);
            return Verdict::Fail;
        }
    }
    return Verdict::Pass;
}

Verdict check_a4_partial_transpose(const MultiState& rho, const MultiState& sigma,
                                   const Bipartition& bp, double tol,
                                   std::vector<Witness>* witnesses) {
    require_same_dims(rho, sigma);
    Verdict verdict = Verdict::Pass;
    for (Side side : {Side::X, Side::Y}) {
        Spectrum a = spectrum_of(partial_transpose(rho, bp, side), tol);
        Spectrum b = spectrum_of(partial_transpose(sigma, bp, side), tol);
        if (!multiset_equal(a, b, tol)) {
            add_witness(witnesses, "A4",
                        side == Side::X ? "T_X spectra differ" : "T_Y spectra differ",
                        std::move(a), std::move(b));
            verdict = Verdict::Fail;
        }
    }
    return verdict;
}

InvariantReport check_bipartition(const MultiState& rho, const MultiState& sigma,
                                  const Bipartition& bp, double tol) {
    InvariantReport report;
    report.bipartition = bp;
    report.a1_global = check_a1_global(rho, sigma, tol, &report.witnesses);
    report.a2_reduced = check_a2_reduced(rho, sigma, bp, tol, &report.witnesses);
    report.a3_projectors = check_a3_projectors(rho, sigma, bp, tol, &report.witnesses);
    report.a4_partial_transpose =
        check_a4_partial_transpose(rho, sigma, bp, tol, &report.witnesses);
    return report;
}

Verdict ScanNode::verdict() const {
    Verdict out = Verdict::Pass;
    for (const auto& report : reports) {
        Verdict v = report.overall();
        if (v == Verdict::Fail) return Verdict::Fail;
        if (v == Verdict::Inconclusive) out = Verdict::Inconclusive;
    }
    for (const auto& child : children) {
        Verdict v = child->verdict();
        if (v == Verdict::Fail) return Verdict::Fail;
        if (v == Verdict::Inconclusive) out = Verdict::Inconclusive;
    }
    return out;
}

std::vector<Bipartition> enumerate_bipartitions(int n_parties) {
    if (n_parties < 2)
        throw Error(ErrorCode::BadPartition, "need at least two parties to cut");
    std::vector<std::vector<int>> subsets;
    // X always contains party 0, so each cut appears once.
    for (unsigned mask = 0; mask < (1u << (n_parties - 1)); ++mask) {
        std::vector<int> x{0};
        for (int p = 1; p < n_parties; ++p)
            if (mask & (1u << (p - 1))) x.push_back(p);
        if (static_cast<int>(x.size()) == n_parties) continue;
        subsets.push_back(std::move(x));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<Bipartition> out;
    out.reserve(subsets.size());
    for (auto& x : subsets) out.push_back(Bipartition::from_x(std::move(x), n_parties));
    return out;
}

namespace {

void scan_node(const MultiState& rho, const MultiState& sigma, std::vector<int> parties,
               const ScanOptions& options, std::set<std::vector<int>>& visited,
               ScanNode& node) {
    node.parties = std::move(parties);
    const int n = rho.dims.parties();
    bool failed = false;
    for (const Bipartition& bp : enumerate_bipartitions(n)) {
        node.reports.push_back(check_bipartition(rho, sigma, bp, options.tol));
        if (node.reports.back().overall() == Verdict::Fail) failed = true;
    }
    if (failed && !options.full_scan) return;

    for (const InvariantReport& report : node.reports) {
        for (Side side : {Side::X, Side::Y}) {
            const auto& local =
                side == Side::X ? report.bipartition.x_parties : report.bipartition.y_parties;
            if (local.size() < 2) continue;
            std::vector<int> global;
            for (int p : local) global.push_back(node.parties[static_cast<std::size_t>(p)]);
            if (!visited.insert(global).second) continue;
            auto child = std::make_unique<ScanNode>();
            scan_node(reduced_state(rho, report.bipartition, side),
                      reduced_state(sigma, report.bipartition, side), global, options,
                      visited, *child);
            node.children.push_back(std::move(child));
        }
    }
}

}  // namespace

std::unique_ptr<ScanNode> recursive_scan(const MultiState& rho, const MultiState& sigma,
                                         const ScanOptions& options) {
    if (rho.dims != sigma.dims)
        throw Error(ErrorCode::DimMismatch, "states live on different party dimensions");
    if (rho.dims.parties() < 2)
        throw Error(ErrorCode::BadPartition, "recursive scan needs at least two parties");

    auto root = std::make_unique<ScanNode>();
    std::vector<int> all(static_cast<std::size_t>(rho.dims.parties()));
    for (int p = 0; p < rho.dims.parties(); ++p) all[static_cast<std::size_t>(p)] = p;
    std::set<std::vector<int>> visited{all};
    scan_node(rho, sigma, all, options, visited, *root);
    return root;
}

}  // namespace lueq

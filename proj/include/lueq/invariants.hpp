#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lueq/schmidt.hpp"
#include "lueq/state.hpp"

namespace lueq {

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict v);

/// Numeric evidence attached to a failed (or inconclusive) check: the two
/// spectra that were expected to match.
struct Witness {
    std::string invariant;  // "A1" .. "A4"
    std::string detail;
    Spectrum lhs;
    Spectrum rhs;
};

/// One degeneracy cluster of a state's spectral decomposition, with the
/// projector data invariant A3 compares.
struct EigenprojectorSummary {
    double eigenvalue = 0.0;
    int dimension = 0;  // projector rank
    Spectrum reduced_x_spectrum;
    Spectrum reduced_y_spectrum;
};

/// Per-cut verdicts of the four necessary conditions.
struct InvariantReport {
    Bipartition bipartition;
    Verdict a1_global = Verdict::Pass;
    Verdict a2_reduced = Verdict::Pass;
    Verdict a3_projectors = Verdict::Pass;
    Verdict a4_partial_transpose = Verdict::Pass;
    std::vector<Witness> witnesses;

    Verdict overall() const;
};

/// A1: equal global spectra (cut-independent).
Verdict check_a1_global(const MultiState& rho, const MultiState& sigma, double tol,
                        std::vector<Witness>* witnesses = nullptr);

/// A2: equal reduced spectra on both sides of the cut.
Verdict check_a2_reduced(const MultiState& rho, const MultiState& sigma,
                         const Bipartition& bp, double tol,
                         std::vector<Witness>* witnesses = nullptr);

/// A3: matching degeneracy structure and equal reduced spectra of the
/// eigenprojectors, cluster by cluster. Returns Inconclusive when two
/// clusters of one state sit closer than 10 x tol and a safe pairing
/// cannot be guaranteed.
Verdict check_a3_projectors(const MultiState& rho, const MultiState& sigma,
                            const Bipartition& bp, double tol,
                            std::vector<Witness>* witnesses = nullptr,
                            double gap = kGapThreshold);

/// A4: equal spectra of both partial transposes.
Verdict check_a4_partial_transpose(const MultiState& rho, const MultiState& sigma,
                                   const Bipartition& bp, double tol,
                                   std::vector<Witness>* witnesses = nullptr);

/// Eigenprojector summaries of one state across a cut, grouped by
/// degeneracy cluster.
std::vector<EigenprojectorSummary> eigenprojector_summaries(const MultiState& s,
                                                            const Bipartition& bp,
                                                            double gap = kGapThreshold);

/// Runs all four invariants for one cut.
InvariantReport check_bipartition(const MultiState& rho, const MultiState& sigma,
                                  const Bipartition& bp, double tol = kSpectrumTol);

/// Node of the recursive bipartition scan: all cuts of one reduced pair,
/// and the children obtained by tracing to each side of each cut.
struct ScanNode {
    std::vector<int> parties;  // original party indices this node covers
    std::vector<InvariantReport> reports;
    std::vector<std::unique_ptr<ScanNode>> children;

    Verdict verdict() const;  // Fail if any report here or below fails
};

struct ScanOptions {
    double tol = kSpectrumTol;
    bool full_scan = false;  // keep scanning below a failing node
};

/// All bipartitions of a party set, ordered by X-side size then
/// lexicographically; X always contains the lowest party to avoid
/// duplicate complementary cuts.
std::vector<Bipartition> enumerate_bipartitions(int n_parties);

/// Recursive reduction to bipartite checks: every cut of the
/// current party set, then the reduced pairs on each side, until single
/// parties remain. Subsets are visited once.
std::unique_ptr<ScanNode> recursive_scan(const MultiState& rho, const MultiState& sigma,
                                         const ScanOptions& options = {});

}  // namespace lueq

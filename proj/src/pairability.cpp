#include "lueq/pairability.hpp"

#include <algorithm>
#include <cmath>

namespace lueq {

namespace {

long ipow(long base, int exp) {
    long out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

struct Item {
    double value;
    long index;  // position in the descending input multiset
};

struct SubResult {
    std::vector<std::vector<double>> marginals;
    std::vector<long> code_of;  // input index -> base-d grid code
};

/// Recursive multiset split: the input must factor as a_0..a_{d-1} times a
/// common sub-multiset S, with the first group anchored on the largest
/// element. Items arrive sorted descending.
class FactorSearch {
public:
    FactorSearch(int d, double tol) : d_(d), tol_(tol) {}

    std::optional<SubResult> run(const std::vector<Item>& items, int n) {
        if (n == 1) {
            SubResult result;
            result.marginals.push_back({});
            result.code_of.assign(items.size(), 0);
            for (std::size_t i = 0; i < items.size(); ++i) {
                result.marginals[0].push_back(items[i].value);
                result.code_of[static_cast<std::size_t>(items[i].index)] = static_cast<long>(i);
            }
            return result;
        }

        const long g = ipow(d_, n - 1);
        std::vector<std::size_t> chosen{0};
        return choose_first_group(items, n, g, chosen, 1);
    }

private:
    std::optional<SubResult> choose_first_group(const std::vector<Item>& items, int n, long g,
                                                std::vector<std::size_t>& chosen,
                                                std::size_t start) {
        if (static_cast<long>(chosen.size()) == g) return try_split(items, n, g, chosen);
        // Not enough items left to complete the group?
        if (items.size() - start < g - chosen.size()) return std::nullopt;
        for (std::size_t i = start; i < items.size(); ++i) {
            chosen.push_back(i);
            auto result = choose_first_group(items, n, g, chosen, i + 1);
            chosen.pop_back();
            if (result) return result;
        }
        return std::nullopt;
    }

    std::optional<SubResult> try_split(const std::vector<Item>& items, int n, long g,
                                       const std::vector<std::size_t>& chosen) {
        double a0 = 0.0;
        for (std::size_t i : chosen) a0 += items[i].value;
        if (a0 <= tol_) return std::nullopt;

        std::vector<double> s_vals;  // normalized common sub-multiset, descending
        s_vals.reserve(static_cast<std::size_t>(g));
        for (std::size_t i : chosen) s_vals.push_back(items[i].value / a0);

        std::vector<bool> used(items.size(), false);
        for (std::size_t i : chosen) used[i] = true;

        std::vector<double> marginal{a0};
        // groups[k][j] holds the item matched to a_k * s_vals[j].
        std::vector<std::vector<Item>> groups(static_cast<std::size_t>(d_));
        for (std::size_t i : chosen) groups[0].push_back(items[i]);

        for (int k = 1; k < d_; ++k) {
            // Largest unused item anchors the next marginal.
            std::size_t first = items.size();
            for (std::size_t i = 0; i < items.size(); ++i)
                if (!used[i]) { first = i; break; }
            if (first == items.size()) return std::nullopt;

            const double a_k = items[first].value <= tol_
                                   ? 0.0
                                   : items[first].value / s_vals[0];
            std::vector<Item> group;
            for (double s : s_vals) {
                const double target = a_k * s;
                std::size_t best = items.size();
                double best_err = tol_;
                for (std::size_t i = 0; i < items.size(); ++i) {
                    if (used[i]) continue;
                    const double err = std::abs(items[i].value - target);
                    if (err <= best_err) { best = i; best_err = err; }
                }
                if (best == items.size()) return std::nullopt;
                used[best] = true;
                group.push_back(items[best]);
            }
            marginal.push_back(a_k);
            groups[static_cast<std::size_t>(k)] = std::move(group);
        }

        std::vector<Item> sub_items;
        sub_items.reserve(s_vals.size());
        for (std::size_t j = 0; j < s_vals.size(); ++j)
            sub_items.push_back(Item{s_vals[j], static_cast<long>(j)});
        auto sub = run(sub_items, n - 1);
        if (!sub) return std::nullopt;

        SubResult result;
        result.marginals.push_back(std::move(marginal));
        for (auto& m : sub->marginals) result.marginals.push_back(std::move(m));
        result.code_of.assign(items.size(), 0);
        const long stride = ipow(d_, n - 1);
        for (int k = 0; k < d_; ++k)
            for (std::size_t j = 0; j < groups[static_cast<std::size_t>(k)].size(); ++j) {
                const long code = k * stride + sub->code_of[j];
                result.code_of[static_cast<std::size_t>(groups[static_cast<std::size_t>(k)][j].index)] = code;
            }
        return result;
    }

    int d_;
    double tol_;
};

}  // namespace

std::optional<PairSolution> product_factorize(const PairabilityProblem& problem, double tol,
                                              long budget) {
    if (problem.d < 2 || problem.n < 1 || problem.n > problem.m)
        throw Error(ErrorCode::BadArgs, "need d >= 2 and 1 <= n <= m");
    const long grid = ipow(problem.d, problem.n);
    if (grid > budget)
        throw Error(ErrorCode::TooLarge, "d^n exceeds the search budget");
    if (static_cast<long>(problem.q.size()) != grid)
        throw Error(ErrorCode::BadArgs, "q must have exactly d^n entries");
    if (std::abs(problem.q.sum() - 1.0) > kSpectrumTol)
        throw Error(ErrorCode::BadArgs, "q must sum to 1");

    std::vector<Item> items;
    items.reserve(problem.q.size());
    std::vector<double> sorted = problem.q.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        items.push_back(Item{sorted[i], static_cast<long>(i)});

    FactorSearch search(problem.d, tol);
    auto sub = search.run(items, problem.n);
    if (!sub) return std::nullopt;

    PairSolution sol;
    sol.a = std::move(sub->marginals);
    sol.assignment = std::move(sub->code_of);
    return sol;
}

MultiState build_pair_state(const PairSolution& sol, int d, int m, const MultiState* rest) {
    const int n = static_cast<int>(sol.a.size());
    if (n < 1 || n > m)
        throw Error(ErrorCode::DimMismatch, "need 1 <= n <= m");
    MultiState rest_state;
    if (rest) {
        if (rest->dims.parties() != m - n || !rest->is_pure())
            throw Error(ErrorCode::DimMismatch, "rest must be pure on the trailing m-n qudits");
        for (int dim : rest->dims.dims)
            if (dim != d) throw Error(ErrorCode::MixedDims, "rest qudit dimension differs");
        rest_state = *rest;
    } else if (m > n) {
        rest_state.dims.dims.assign(static_cast<std::size_t>(m - n), d);
        rest_state.kind = Kind::Pure;
        rest_state.data = ComplexMatrix::Zero(rest_state.total_dim(), 1);
        rest_state.data(0, 0) = 1.0;
    }

    MultiState out;
    out.dims.dims.assign(static_cast<std::size_t>(n + m), d);
    out.kind = Kind::Pure;
    const long total = out.total_dim();
    out.data = ComplexMatrix::Zero(total, 1);

    const long grid = ipow(d, n);
    const long rest_dim = m > n ? rest_state.total_dim() : 1;
    for (long r = 0; r < grid; ++r) {
        double amp = 1.0;
        long code = r;
        std::vector<int> digits(static_cast<std::size_t>(n));
        for (int j = n - 1; j >= 0; --j) {
            digits[static_cast<std::size_t>(j)] = static_cast<int>(code % d);
            code /= d;
        }
        for (int j = 0; j < n; ++j)
            amp *= std::sqrt(sol.a[static_cast<std::size_t>(j)][static_cast<std::size_t>(digits[static_cast<std::size_t>(j)])]);
        if (amp == 0.0) continue;
        for (long t = 0; t < rest_dim; ++t) {
            const Complex rest_amp = m > n ? rest_state.data(t, 0) : Complex(1.0, 0.0);
            if (rest_amp == Complex(0.0, 0.0)) continue;
            // Index layout: X_1..X_n, then Y_1..Y_n (same digits), then rest.
            long index = r;
            index = index * grid + r;
            index = index * rest_dim + t;
            out.data(index, 0) = amp * rest_amp;
        }
    }
    return out;
}

PairabilityResult pairable(const MultiState& psi, const Bipartition& bp, double tol,
                           long budget) {
    if (!psi.is_pure())
        throw Error(ErrorCode::NotPure, "pairability is defined for pure states");
    const int d = psi.dims.dims.front();
    for (int dim : psi.dims.dims)
        if (dim != d) throw Error(ErrorCode::MixedDims, "all parties must share one dimension");
    const int n = static_cast<int>(bp.x_parties.size());
    const int m = static_cast<int>(bp.y_parties.size());
    if (n > m)
        throw Error(ErrorCode::BadPartition, "X side must not be larger than Y side");

    SchmidtDecomposition sd = schmidt_decompose(psi, bp);
    PairabilityProblem problem;
    problem.d = d;
    problem.n = n;
    problem.m = m;
    for (double c : sd.coefficients.values) problem.q.values.push_back(c * c);
    problem.q.values.resize(static_cast<std::size_t>(ipow(d, n)), 0.0);

    PairabilityResult result;
    auto sol = product_factorize(problem, tol, budget);
    if (!sol) return result;
    result.feasible = true;
    result.solution = *sol;

    // Build the pair state on psi's own party layout: X_j sits at
    // bp.x_parties[j], Y_j at bp.y_parties[j], rest |0> on the trailing
    // Y qudits.
    MultiState canonical = build_pair_state(*sol, d, m);
    MultiState target;
    target.dims = psi.dims;
    target.kind = Kind::Pure;
    target.data = ComplexMatrix::Zero(psi.total_dim(), 1);
    const int parties = psi.dims.parties();
    const long canon_total = canonical.total_dim();
    std::vector<int> digits(static_cast<std::size_t>(parties));
    for (long i = 0; i < canon_total; ++i) {
        if (canonical.data(i, 0) == Complex(0.0, 0.0)) continue;
        long code = i;
        std::vector<int> canon_digits(static_cast<std::size_t>(parties));
        for (int p = parties - 1; p >= 0; --p) {
            canon_digits[static_cast<std::size_t>(p)] = static_cast<int>(code % d);
            code /= d;
        }
        for (int j = 0; j < n; ++j)
            digits[static_cast<std::size_t>(bp.x_parties[static_cast<std::size_t>(j)])] =
                canon_digits[static_cast<std::size_t>(j)];
        for (int j = 0; j < m; ++j)
            digits[static_cast<std::size_t>(bp.y_parties[static_cast<std::size_t>(j)])] =
                canon_digits[static_cast<std::size_t>(n + j)];
        long index = 0;
        for (int p = 0; p < parties; ++p) index = index * d + digits[static_cast<std::size_t>(p)];
        target.data(index, 0) = canonical.data(i, 0);
    }

    result.pair_state = target;
    ConstructResult built = pure_lu_construct(psi, target, bp, tol);
    if (built.status != ConstructStatus::Found)
        throw Error(ErrorCode::NoConvergence,
                    "pair state construction lost Schmidt consistency");
    result.lu = built.lu;
    result.residual = built.residual;
    return result;
}

}  // namespace lueq

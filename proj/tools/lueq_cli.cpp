// Command-line front end: invariant reports, equivalence verdicts,
// pairability analysis and catalog export for multi-qudit states.
//
// Exit codes: 0 equivalent/feasible, 1 not equivalent/infeasible,
// 2 inconclusive, 3 usage or I/O error, 4 numerical failure.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lueq/catalog.hpp"
#include "lueq/constructors.hpp"
#include "lueq/invariants.hpp"
#include "lueq/pairability.hpp"
#include "lueq/schmidt.hpp"
#include "lueq/statefile.hpp"

namespace {

using nlohmann::json;
using namespace lueq;

constexpr int kExitEquivalent = 0;
constexpr int kExitNotEquivalent = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;
constexpr int kExitNumerical = 4;

json spectrum_json(const Spectrum& s) { return json(s.values); }

json witnesses_json(const std::vector<Witness>& witnesses) {
    json out = json::array();
    for (const auto& w : witnesses) {
        out.push_back({{"invariant", w.invariant},
                       {"detail", w.detail},
                       {"lhs", spectrum_json(w.lhs)},
                       {"rhs", spectrum_json(w.rhs)}});
    }
    return out;
}

json report_json(const InvariantReport& report) {
    return {{"cut", report.bipartition.to_string()},
            {"a1_global", to_string(report.a1_global)},
            {"a2_reduced", to_string(report.a2_reduced)},
            {"a3_projectors", to_string(report.a3_projectors)},
            {"a4_partial_transpose", to_string(report.a4_partial_transpose)},
            {"overall", to_string(report.overall())},
            {"witnesses", witnesses_json(report.witnesses)}};
}

json scan_json(const ScanNode& node) {
    json reports = json::array();
    for (const auto& r : node.reports) reports.push_back(report_json(r));
    json children = json::array();
    for (const auto& c : node.children) children.push_back(scan_json(*c));
    json parties = json::array();
    for (int p : node.parties) parties.push_back(p + 1);
    return {{"parties", parties},
            {"reports", std::move(reports)},
            {"children", std::move(children)},
            {"verdict", to_string(node.verdict())}};
}

void emit(const json& j, bool human) {
    if (!human) {
        std::cout << j.dump(1) << '\n';
        return;
    }
    // Minimal readable rendering; the JSON carries the full detail.
    std::cout << j.dump(2) << '\n';
}

std::string first_failing_invariant(const InvariantReport& report) {
    if (report.a1_global == Verdict::Fail) return "A1";
    if (report.a2_reduced == Verdict::Fail) return "A2";
    if (report.a3_projectors == Verdict::Fail) return "A3";
    if (report.a4_partial_transpose == Verdict::Fail) return "A4";
    return "";
}

std::uint64_t seed_override(std::uint64_t fallback) {
    if (const char* env = std::getenv("LUEQ_SEED")) return std::stoull(env);
    return fallback;
}

struct Options {
    double tol = kSpectrumTol;
    double gap = kGapThreshold;
    bool human = false;
};

int cmd_check(const std::string& path_a, const std::string& path_b, const std::string& cut,
              const std::string& out_unitary, const Options& opt) {
    MultiState a = validate(read_state(path_a));
    MultiState b = validate(read_state(path_b));
    Bipartition bp = parse_cut(cut, a.dims.parties());

    InvariantReport report = check_bipartition(a, b, bp, opt.tol);
    json j{{"command", "check"}, {"report", report_json(report)}};
    if (report.overall() == Verdict::Fail) {
        j["verdict"] = "NotEquivalent";
        j["witness"] = first_failing_invariant(report);
        emit(j, opt.human);
        return kExitNotEquivalent;
    }

    ConstructResult built =
        a.is_pure() && b.is_pure()
            ? pure_lu_construct(a, b, bp, opt.tol)
            : nondegenerate_lu_construct(a, b, bp, opt.tol, opt.gap);
    j["constructor"] = a.is_pure() && b.is_pure() ? "pure" : "nondegenerate";
    j["construct_status"] = to_string(built.status);
    if (!built.reason.empty()) j["reason"] = built.reason;

    if (built.status == ConstructStatus::Found) {
        j["verdict"] = "Equivalent";
        j["residual"] = built.residual;
        if (!out_unitary.empty()) {
            write_unitary(built.lu, out_unitary);
            j["unitary_file"] = out_unitary;
        }
        emit(j, opt.human);
        return kExitEquivalent;
    }
    if (a.is_pure() && b.is_pure() && built.status == ConstructStatus::NotEquivalent) {
        // For pure pairs the Schmidt-coefficient condition is necessary too.
        j["verdict"] = "NotEquivalent";
        j["witness"] = "Schmidt";
        emit(j, opt.human);
        return kExitNotEquivalent;
    }
    // The mixed-state construction is sufficient-only; a failed build with
    // passing invariants never certifies non-equivalence.
    j["verdict"] = "Inconclusive";
    emit(j, opt.human);
    return kExitInconclusive;
}

int cmd_scan(const std::string& path_a, const std::string& path_b, bool full,
             const Options& opt) {
    MultiState a = validate(read_state(path_a));
    MultiState b = validate(read_state(path_b));
    ScanOptions scan_opt;
    scan_opt.tol = opt.tol;
    scan_opt.full_scan = full;
    auto tree = recursive_scan(a, b, scan_opt);
    const Verdict verdict = tree->verdict();
    json j{{"command", "scan"},
           {"tree", scan_json(*tree)},
           {"verdict",
            verdict == Verdict::Fail ? "NotEquivalent" : "Inconclusive"}};
    emit(j, opt.human);
    return verdict == Verdict::Fail ? kExitNotEquivalent : kExitInconclusive;
}

int cmd_invariants(const std::string& path_a, const std::string& path_b,
                   const std::string& cut, const Options& opt) {
    MultiState a = validate(read_state(path_a));
    MultiState b = validate(read_state(path_b));
    Bipartition bp = parse_cut(cut, a.dims.parties());
    InvariantReport report = check_bipartition(a, b, bp, opt.tol);
    emit(json{{"command", "invariants"}, {"report", report_json(report)}}, opt.human);
    return report.overall() == Verdict::Fail ? kExitNotEquivalent : kExitInconclusive;
}

int cmd_schmidt(const std::string& path, const std::string& cut, const Options& opt) {
    MultiState s = validate(read_state(path));
    Bipartition bp = parse_cut(cut, s.dims.parties());
    SchmidtDecomposition sd = schmidt_decompose(s, bp);
    emit(json{{"command", "schmidt"},
              {"cut", bp.to_string()},
              {"coefficients", spectrum_json(sd.coefficients)},
              {"schmidt_number", sd.schmidt_number},
              {"entropy_bits", entanglement_entropy(sd)}},
         opt.human);
    return kExitEquivalent;
}

int cmd_pairable(const std::string& path, const std::string& cut,
                 const std::string& out_unitary, const Options& opt) {
    MultiState s = validate(read_state(path));
    Bipartition bp = parse_cut(cut, s.dims.parties());
    PairabilityResult result = pairable(s, bp, opt.tol);
    json j{{"command", "pairable"}, {"cut", bp.to_string()}};
    if (!result.feasible) {
        j["verdict"] = "Infeasible";
        emit(j, opt.human);
        return kExitNotEquivalent;
    }
    j["verdict"] = "Feasible";
    j["marginals"] = result.solution.a;
    j["residual"] = result.residual;
    int pairs = 0;
    for (const auto& marginal : result.solution.a) {
        int nonzero = 0;
        for (double v : marginal)
            if (v > kSchmidtRankCut) ++nonzero;
        if (nonzero > 1) ++pairs;
    }
    j["entangled_pairs"] = pairs;
    if (!out_unitary.empty()) {
        write_unitary(result.lu, out_unitary);
        j["unitary_file"] = out_unitary;
    }
    emit(j, opt.human);
    return kExitEquivalent;
}

int cmd_catalog(const std::string& name, int n, int d, const std::string& out,
                const Options& opt) {
    MultiState s;
    json extra;
    if (name == "ghz") {
        s = catalog::ghz(n, d);
    } else if (name == "epr") {
        s = catalog::epr_with_ancilla(n);
    } else if (name == "ring") {
        catalog::RingState ring = catalog::ring_state(n);
        s = ring.state;
        extra["cut"] = ring.cut.to_string();
    } else if (name == "cex_rho") {
        s = catalog::counterexample_pair().rho;
    } else if (name == "cex_sigma") {
        s = catalog::counterexample_pair().sigma;
    } else if (name == "random_pure" || name == "random_mixed") {
        PartyDims dims(std::vector<int>(static_cast<std::size_t>(n), d));
        const std::uint64_t seed = seed_override(11);
        s = name == "random_pure"
                ? catalog::random_state(dims, Kind::Pure, 1, seed)
                : catalog::random_state(dims, Kind::Mixed,
                                        static_cast<int>(std::min<long>(4, dims.total())),
                                        seed);
        extra["seed"] = seed;
    } else {
        throw Error(ErrorCode::BadArgs,
                    "unknown catalog state '" + name +
                        "' (try ghz, epr, ring, cex_rho, cex_sigma, random_pure, random_mixed)");
    }
    write_state(s, out, name);
    json j{{"command", "catalog"}, {"name", name}, {"file", out},
           {"dims", s.dims.dims}, {"kind", s.is_pure() ? "pure" : "mixed"}};
    if (!extra.empty()) j["extra"] = extra;
    emit(j, opt.human);
    return kExitEquivalent;
}

int cmd_verify(const std::string& path_a, const std::string& path_b,
               const std::string& unitary_path, const Options& opt) {
    MultiState a = validate(read_state(path_a));
    MultiState b = validate(read_state(path_b));
    LocalUnitary lu = read_unitary(unitary_path, a.dims.parties());
    const double residual = verify_equivalence(a, b, lu, opt.tol);
    const bool ok = residual <= kResidualTol;
    emit(json{{"command", "verify"},
              {"residual", residual},
              {"verdict", ok ? "Equivalent" : "NotEquivalent"}},
         opt.human);
    return ok ? kExitEquivalent : kExitNotEquivalent;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Local unitary equivalence toolkit for multi-qudit states"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--tol", opt.tol, "spectrum comparison tolerance");
    app.add_option("--gap", opt.gap, "degeneracy clustering gap");
    app.add_flag("--human", opt.human, "human-readable output");

    std::string path_a, path_b, cut, out_file, unitary_path, name;
    int n = 3, d = 2;
    bool full_scan = false;

    auto* check = app.add_subcommand("check", "invariants plus constructive equivalence");
    check->add_option("A", path_a)->required();
    check->add_option("B", path_b)->required();
    check->add_option("--cut", cut)->required();
    check->add_option("-o,--unitary-out", out_file);

    auto* scan = app.add_subcommand("scan", "recursive bipartition scan");
    scan->add_option("A", path_a)->required();
    scan->add_option("B", path_b)->required();
    scan->add_flag("--full", full_scan, "keep scanning below failures");

    auto* invariants = app.add_subcommand("invariants", "invariant report for one cut");
    invariants->add_option("A", path_a)->required();
    invariants->add_option("B", path_b)->required();
    invariants->add_option("--cut", cut)->required();

    auto* schmidt = app.add_subcommand("schmidt", "Schmidt decomposition summary");
    schmidt->add_option("A", path_a)->required();
    schmidt->add_option("--cut", cut)->required();

    auto* pairable_cmd = app.add_subcommand("pairable", "bipartite pairability analysis");
    pairable_cmd->add_option("A", path_a)->required();
    pairable_cmd->add_option("--cut", cut)->required();
    pairable_cmd->add_option("-o,--unitary-out", out_file);

    auto* catalog_cmd = app.add_subcommand("catalog", "export a named state");
    catalog_cmd->add_option("name", name)->required();
    catalog_cmd->add_option("--n", n, "party count / ring parameter");
    catalog_cmd->add_option("--d", d, "local dimension");
    catalog_cmd->add_option("-o,--out", out_file)->required();

    auto* verify = app.add_subcommand("verify", "check a unitary file against a state pair");
    verify->add_option("A", path_a)->required();
    verify->add_option("B", path_b)->required();
    verify->add_option("--unitary", unitary_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check(path_a, path_b, cut, out_file, opt);
        if (scan->parsed()) return cmd_scan(path_a, path_b, full_scan, opt);
        if (invariants->parsed()) return cmd_invariants(path_a, path_b, cut, opt);
        if (schmidt->parsed()) return cmd_schmidt(path_a, cut, opt);
        if (pairable_cmd->parsed()) return cmd_pairable(path_a, cut, out_file, opt);
        if (catalog_cmd->parsed()) return cmd_catalog(name, n, d, out_file, opt);
        if (verify->parsed()) return cmd_verify(path_a, path_b, unitary_path, opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::NoConvergence:
            case ErrorCode::NotHermitian:
            case ErrorCode::NotOrthonormal:
            case ErrorCode::NotUnitary:
                return kExitNumerical;
            default:
                return kExitUsage;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

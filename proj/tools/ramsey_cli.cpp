#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ramsey/config.hpp"
#include "ramsey/errors.hpp"
#include "ramsey/finite_field.hpp"
#include "ramsey/io.hpp"
#include "ramsey/k4free.hpp"
#include "ramsey/pipeline.hpp"
#include "ramsey/projective_plane.hpp"
#include "ramsey/secant_graph.hpp"
#include "ramsey/unital.hpp"
#include "ramsey/version.hpp"

using namespace ramsey;

namespace {

// Shared flags: every run names its order, master seed, profile, and output
// directory; the seed accepts decimal or 0x-prefixed hex.
struct CommonArgs {
    std::uint32_t q = 3;
    std::string seed = "0";
    std::string profile = "desk";
    std::string out = ".";
};

std::uint64_t parse_seed(const std::string& s) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(s, &used, 0);
        if (used != s.size()) throw ConditionViolated("bad seed: " + s);
        return v;
    } catch (const std::logic_error&) {
        throw ConditionViolated("bad seed: " + s);
    }
}

RunConfig config_of(const CommonArgs& a) {
    RunConfig cfg = make_config(a.q, parse_seed(a.seed), parse_profile(a.profile));
    cfg.out_dir = a.out;
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

std::string path_in(const RunConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

// The deterministic construction every subcommand starts from.
struct Stack {
    Field F;
    Plane P;
    Unital U;
    SecantGraph G;
    explicit Stack(std::uint32_t q)
        : F(make_field_q(q)), P(make_plane(F)), U(build_unital(F, P)), G(build_secant_graph(U)) {}
};

int run_build(const CommonArgs& a) {
    const RunConfig cfg = config_of(a);
    const Stack s(cfg.q);

    write_unital(path_in(cfg, "unital.txt"), s.U);
    write_cliques(path_in(cfg, "cliques.txt"), s.G);
    write_edges(path_in(cfg, "graph.edges"), s.G.n, s.G.edges(),
                [&s](std::uint32_t u) { return s.G.neighbors(u); });

    BaseCheckOptions bopt;
    bopt.k4_cap = cfg.k4_cap;
    bopt.clique_pair_budget = cfg.pair_budget;
    bopt.edge_check_budget = cfg.pair_budget * 2;
    const CheckReport base = verify_base_properties(s.G, bopt);
    const CheckReport srg = srg_check(s.G, cfg.pair_budget);

    nlohmann::json report;
    report["command"] = "build";
    report["config"] = config_to_json(cfg);
    report["counts"] = {{"points", s.U.point_ids.size()},
                        {"secants", s.U.secants.size()},
                        {"tangents", s.U.tangents.size()},
                        {"n", s.G.n},
                        {"d", s.G.d},
                        {"edges", s.G.edges()},
                        {"cliques", s.G.n_cliques}};
    report["base_checks"] = check_report_to_json(base);
    report["srg_checks"] = check_report_to_json(srg);
    write_json(path_in(cfg, "report.json"), report);

    const bool ok = base.all_pass() && srg.all_pass();
    std::printf("build q=%u: n=%u d=%u edges=%llu cliques=%u -> %s (%s)\n", cfg.q, s.G.n, s.G.d,
                static_cast<unsigned long long>(s.G.edges()), s.G.n_cliques,
                cfg.out_dir.c_str(), ok ? "all checks pass" : "CHECKS FAILED");
    return ok ? 0 : 1;
}

int run_randomize(const CommonArgs& a) {
    const RunConfig cfg = config_of(a);
    const Stack s(cfg.q);
    K4FreeGraph h = randomize(s.G, parse_seed(a.seed));

    K4CheckOptions kopt;
    kopt.exhaustive_cap = cfg.k4_cap;
    kopt.inclique_pair_budget = cfg.inclique_pair_budget;
    CheckReport structural = verify_k4_free(h, K4Mode::Structural, kopt);
    nlohmann::json report;
    report["command"] = "randomize";
    report["config"] = config_to_json(cfg);
    report["edge_count"] = h.edge_count;
    report["structural_checks"] = check_report_to_json(structural);
    bool ok = structural.all_pass();
    if (s.G.n <= cfg.k4_cap) {
        const CheckReport exhaustive = verify_k4_free(h, K4Mode::Exhaustive, kopt);
        report["exhaustive_checks"] = check_report_to_json(exhaustive);
        ok = ok && exhaustive.all_pass();
    } else {
        report["exhaustive_checks"] =
            nlohmann::json{{"skipped", "n exceeds the exhaustive cap"}};
    }

    materialize_edges(h);
    write_edges(path_in(cfg, "hstar.edges"), s.G.n,
                std::span<const std::pair<std::uint32_t, std::uint32_t>>(h.explicit_edges));
    write_json(path_in(cfg, "report.json"), report);

    std::printf("randomize q=%u seed=%s: %llu edges -> %s (%s)\n", cfg.q, a.seed.c_str(),
                static_cast<unsigned long long>(h.edge_count), cfg.out_dir.c_str(),
                ok ? "K4-free verified" : "CHECKS FAILED");
    return ok ? 0 : 1;
}

int run_audit(const CommonArgs& a, const std::vector<std::uint32_t>& sizes,
              std::uint32_t trials) {
    const RunConfig cfg = config_of(a);
    const Stack s(cfg.q);
    const K4FreeGraph h = randomize(s.G, parse_seed(a.seed));

    DensityAuditOptions dopt;
    dopt.m_prime = cfg.m_prime;
    dopt.ratio_floor = cfg.density_floor;
    const CheckReport rep = edge_density_audit(h, sizes, trials, parse_seed(a.seed), dopt);

    nlohmann::json report;
    report["command"] = "audit";
    report["config"] = config_to_json(cfg);
    report["sizes"] = sizes;
    report["trials"] = trials;
    report["audit"] = check_report_to_json(rep);
    write_json(path_in(cfg, "report.json"), report);

    std::printf("audit q=%u: %zu sizes x %u trials -> %s (%s)\n", cfg.q, sizes.size(), trials,
                cfg.out_dir.c_str(), rep.all_pass() ? "density floor holds" : "CHECKS FAILED");
    return rep.all_pass() ? 0 : 1;
}

int run_witness(const CommonArgs& a, double p, std::uint32_t t) {
    const RunConfig cfg = config_of(a);
    const Stack s(cfg.q);
    const std::uint64_t seed = parse_seed(a.seed);
    const K4FreeGraph h = randomize(s.G, seed);
    const SampledSubgraph sub = sample_vertices(h, p, seed);

    CertifyOptions copt;
    copt.field = &s.F;
    copt.k4_cap = cfg.k4_cap;
    copt.alpha_cap = cfg.alpha_cap;
    const Certificate cert = certify_witness(h, sub, t, CertifyMode::Exact, copt);

    write_edges(path_in(cfg, "witness.edges"), sub.graph);
    write_certificate(path_in(cfg, "certificate.json"), cert);

    nlohmann::json report;
    report["command"] = "witness";
    report["config"] = config_to_json(cfg);
    report["certificate"] = certificate_to_json(cert);
    write_json(path_in(cfg, "report.json"), report);

    std::printf("witness q=%u seed=%s p=%g t=%u: n=%u alpha in [%u,%u] -> %s\n", cfg.q,
                a.seed.c_str(), p, t, cert.n, cert.alpha_lo, cert.alpha_hi,
                cert.pass ? "PASS" : "FAIL");
    for (const auto& line : cert.transcript) std::printf("  %s\n", line.c_str());
    return cert.pass ? 0 : 1;
}

int run_blowup(const CommonArgs& a, std::uint32_t k, std::uint32_t r, std::uint32_t t,
               const std::string& base_path) {
    const RunConfig cfg = config_of(a);
    const BitGraph base = read_edges(base_path);
    const ColoredGraph col = blowup_multicolor(base, r, k, parse_seed(a.seed));

    ColoringCheckOptions vopt;
    vopt.k4_cap = cfg.k4_cap;
    vopt.alpha_cap = cfg.alpha_cap;
    const CheckReport rep = verify_coloring(col, t, vopt);

    nlohmann::json report;
    report["command"] = "blowup";
    report["config"] = config_to_json(cfg);
    report["base"] = base_path;
    report["n"] = col.n;
    report["k"] = k;
    report["r"] = r;
    report["t"] = t;
    const auto counts = col.count_by_color();
    report["color_counts"] = std::vector<std::uint64_t>(counts.begin() + 1, counts.end());
    report["coloring_checks"] = check_report_to_json(rep);
    if (t >= 3) {
        // Expected number of size-t independent sets across the coloring,
        // with s = floor(t / ln t) and T = the base vertex count.
        const auto s = static_cast<std::uint64_t>(
            t / std::log(static_cast<long double>(t)));
        const ExpectedCountReport ec = expected_count(base.n, s, r, t, k);
        report["expected_count"] = {
            {"value", boost::multiprecision::numerator(ec.value).str() + "/" +
                          boost::multiprecision::denominator(ec.value).str()},
            {"approx", ec.approx},
            {"below_one", ec.below_one},
            {"s", s}};
    }

    if (col.n <= 512) {
        std::string txt = "B " + std::to_string(col.n) + " " + std::to_string(k) + " " +
                          std::to_string(r) + "\n";
        for (std::uint32_t u = 0; u < col.n; ++u)
            for (std::uint32_t v = u + 1; v < col.n; ++v)
                txt += "E " + std::to_string(u) + " " + std::to_string(v) + " " +
                       std::to_string(col.color_of(u, v)) + "\n";
        write_text(path_in(cfg, "coloring.txt"), txt);
    }
    write_json(path_in(cfg, "report.json"), report);

    std::printf("blowup k=%u r=%u on %s (T=%u): n=%u t=%u -> %s (%s)\n", k, r,
                base_path.c_str(), base.n, col.n, t, cfg.out_dir.c_str(),
                rep.all_pass() ? "coloring verified" : "CHECKS FAILED");
    return rep.all_pass() ? 0 : 1;
}

int run_verify(const std::string& cert_path, const std::string& graph_path) {
    const Certificate cert = read_certificate(cert_path);
    // Lenient read: an internally inconsistent file must show up as a
    // mismatch against the certificate, not as a parse error.
    const BitGraph g = read_edges(graph_path, /*strict=*/false);
    const VerifyOutcome out = verify_certificate(cert, g);
    if (out.ok) {
        std::printf("verified: graph matches the certificate and the re-derivation "
                    "reproduces every recorded verdict\n");
        return 0;
    }
    std::fprintf(stderr, "verification FAILED:\n");
    for (const auto& d : out.diagnostics) std::fprintf(stderr, "  %s\n", d.c_str());
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) + " " + kToolVersion +
                 ": Hermitian-unital Ramsey graph constructions and checks"};
    app.require_subcommand(1);

    CommonArgs common;
    const auto add_common = [&common](CLI::App* cmd, bool need_q = true) {
        auto* q = cmd->add_option("--q", common.q, "unital order (prime power)");
        if (need_q) q->required();
        cmd->add_option("--seed", common.seed, "master seed, decimal or 0x-hex");
        cmd->add_option("--profile", common.profile, "constant profile: paper or desk");
        cmd->add_option("--out", common.out, "output directory");
    };

    auto* build = app.add_subcommand("build", "construct the unital and its secant graph");
    add_common(build);

    auto* rando = app.add_subcommand("randomize", "per-clique bipartition into a K4-free graph");
    add_common(rando);

    std::vector<std::uint32_t> sizes;
    std::uint32_t trials = 100;
    auto* audit = app.add_subcommand("audit", "seeded subset edge-density audit");
    add_common(audit);
    audit->add_option("--sizes", sizes, "subset sizes to draw")->required();
    audit->add_option("--trials", trials, "subsets per size");

    double p = 0.25;
    std::uint32_t t = 0;
    auto* witness = app.add_subcommand("witness", "sample vertices and certify alpha < t");
    add_common(witness);
    witness->add_option("--p", p, "keep probability")->required();
    witness->add_option("--t", t, "independence target")->required();

    std::uint32_t k = 3, r = 1;
    std::string base_path;
    auto* blow = app.add_subcommand("blowup", "multicolor blowup of a base graph");
    blow->add_option("--k", k, "number of colors")->required();
    blow->add_option("--r", r, "blowup factor")->required();
    blow->add_option("--t", t, "independence target")->required();
    blow->add_option("--base", base_path, "base graph .edges file")->required();
    add_common(blow, /*need_q=*/false);

    std::string cert_path, graph_path;
    auto* verify = app.add_subcommand("verify", "re-verify a certificate against a graph file");
    verify->add_option("certificate", cert_path, "certificate.json")->required();
    verify->add_option("graph", graph_path, "exported .edges file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems exit 2; --help stays 0
    }

    try {
        if (build->parsed()) return run_build(common);
        if (rando->parsed()) return run_randomize(common);
        if (audit->parsed()) return run_audit(common, sizes, trials);
        if (witness->parsed()) return run_witness(common, p, t);
        if (blow->parsed()) return run_blowup(common, k, r, t, base_path);
        if (verify->parsed()) return run_verify(cert_path, graph_path);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}

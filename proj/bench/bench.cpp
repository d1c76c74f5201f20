// Serial-vs-parallel timing for the five kernels that accept an ExecPolicy:
// plane construction, secant-graph assembly, the exhaustive O'Nan search,
// the per-clique randomization, and the edge-density audit. Each cell is
// the best of three runs; results are cross-checked between policies so a
// speedup never hides a divergence.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "ramsey/finite_field.hpp"
#include "ramsey/k4free.hpp"
#include "ramsey/onan.hpp"
#include "ramsey/projective_plane.hpp"
#include "ramsey/secant_graph.hpp"
#include "ramsey/unital.hpp"

using namespace ramsey;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double best_ms(F&& body) {
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = Clock::now();
        body();
        const std::chrono::duration<double, std::milli> dt = Clock::now() - t0;
        if (dt.count() < best) best = dt.count();
    }
    return best;
}

void row(const char* name, double serial_ms, double parallel_ms, bool agree) {
    std::printf("  %-22s %10.2f %10.2f %8.2fx  %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, agree ? "match" : "DIVERGED");
}

void bench_q(std::uint32_t q, std::uint64_t onan_budget) {
    const Field F = make_field_q(q);
    std::printf("q = %u\n", q);
    std::printf("  %-22s %10s %10s %9s\n", "kernel", "serial/ms", "parallel/ms", "speedup");

    Plane ps = make_plane(F, ExecPolicy::Serial);
    Plane pp = make_plane(F, ExecPolicy::Parallel);
    row("plane build", best_ms([&] { ps = make_plane(F, ExecPolicy::Serial); }),
        best_ms([&] { pp = make_plane(F, ExecPolicy::Parallel); }),
        ps.line_pts == pp.line_pts);

    const Unital u = build_unital(F, ps);
    SecantGraph gs = build_secant_graph(u, ExecPolicy::Serial);
    SecantGraph gp = build_secant_graph(u, ExecPolicy::Parallel);
    row("secant graph", best_ms([&] { gs = build_secant_graph(u, ExecPolicy::Serial); }),
        best_ms([&] { gp = build_secant_graph(u, ExecPolicy::Parallel); }),
        gs.adj == gp.adj && gs.bits == gp.bits);

    if (onan_budget > 0) {
        const LineSystem ls = line_system_of(u);
        OnanSearchResult os, op;
        row("o'nan exhaustive",
            best_ms([&] {
                os = find_onan_configurations(ls, OnanMode::Exhaustive, onan_budget,
                                              ExecPolicy::Serial);
            }),
            best_ms([&] {
                op = find_onan_configurations(ls, OnanMode::Exhaustive, onan_budget,
                                              ExecPolicy::Parallel);
            }),
            os.witnesses.size() == op.witnesses.size());
    } else {
        std::printf("  %-22s %10s\n", "o'nan exhaustive", "(skipped)");
    }

    K4FreeGraph hs = randomize(gs, 42, ExecPolicy::Serial);
    K4FreeGraph hp = randomize(gs, 42, ExecPolicy::Parallel);
    row("randomize", best_ms([&] { hs = randomize(gs, 42, ExecPolicy::Serial); }),
        best_ms([&] { hp = randomize(gs, 42, ExecPolicy::Parallel); }),
        hs.masks == hp.masks && hs.edge_count == hp.edge_count);

    const std::vector<std::uint32_t> sizes{gs.n / 4, gs.n / 2, gs.n};
    CheckReport as, ap;
    row("density audit",
        best_ms([&] { as = edge_density_audit(hs, sizes, 100, 7, {}, ExecPolicy::Serial); }),
        best_ms([&] { ap = edge_density_audit(hs, sizes, 100, 7, {}, ExecPolicy::Parallel); }),
        as.checks.size() == ap.checks.size() && as.all_pass() == ap.all_pass());
    std::printf("\n");
}

} // namespace

int main(int argc, char** argv) {
    // Usage: ramsey_bench [q...]; defaults to a small and a mid-size order.
    std::vector<std::uint32_t> qs;
    for (int i = 1; i < argc; ++i) qs.push_back(static_cast<std::uint32_t>(std::stoul(argv[i])));
    if (qs.empty()) qs = {3, 5, 8};

    for (const std::uint32_t q : qs) {
        // The exhaustive O'Nan search needs C(#lines, 4) within budget;
        // beyond q = 3 that blows past any desk budget, so skip it there.
        const std::uint64_t onan_budget = q <= 3 ? 5'000'000 : 0;
        bench_q(q, onan_budget);
    }
    return 0;
}

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ramsey/exec.hpp"
#include "ramsey/report.hpp"
#include "ramsey/unital.hpp"

namespace ramsey {

// Adjacency bitset rows are kept alongside the CSR lists up to this vertex
// count (q <= 8 lands well under it); beyond, pair tests fall back to binary
// search and the pairwise verifications run sampled under their budgets.
inline constexpr std::uint32_t kBitsetCap = 4096;

// The secant graph H_q: one vertex per secant of the unital, an edge whenever
// two secants meet in a unital point. Vertex ids equal secant ids. The clique
// family has one member per unital point -- the q^2 secants through it --
// and every edge lies in exactly one of them.
struct SecantGraph {
    std::uint64_t q = 0;
    std::uint32_t n = 0;       // q^2(q^2-q+1) vertices
    std::uint32_t d = 0;       // (q+1)(q^2-1), the regular degree
    std::uint32_t n_cliques = 0; // q^3+1

    // CSR adjacency with explicit offsets (so corrupted test fixtures can be
    // ragged); rows sorted ascending.
    std::vector<std::uint64_t> xadj; // n+1
    std::vector<std::uint32_t> adj;

    // Bitset adjacency, row-major words-per-row stride; empty when n > cap.
    std::vector<std::uint64_t> bits;
    std::uint32_t words = 0;

    // Clique family, flat rows of stride q^2, row index = unital point id.
    std::vector<std::uint32_t> cliques;
    // Per vertex, the sorted q+1 cliques containing it (= the unital points
    // on that secant), flat rows of stride q+1.
    std::vector<std::uint32_t> vertex_cliques;

    std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {adj.data() + xadj[v], adj.data() + xadj[v + 1]};
    }
    std::span<const std::uint32_t> clique_row(std::uint32_t c) const {
        const std::size_t s = static_cast<std::size_t>(q) * q;
        return {cliques.data() + c * s, s};
    }
    std::span<const std::uint32_t> cliques_of(std::uint32_t v) const {
        const std::size_t s = q + 1;
        return {vertex_cliques.data() + v * s, s};
    }
    std::uint32_t degree(std::uint32_t v) const {
        return static_cast<std::uint32_t>(xadj[v + 1] - xadj[v]);
    }
    std::uint64_t edges() const { return adj.size() / 2; }
    bool adjacent(std::uint32_t u, std::uint32_t v) const;

    // The unique clique owning edge {u,v}; InvariantViolation if {u,v} is
    // not an edge.
    std::uint32_t edge_clique(std::uint32_t u, std::uint32_t v) const;
};

// Clique-first construction: every unital point contributes its q^2 secants
// as one clique, and each vertex's neighbor row is the disjoint union of its
// q+1 cliques minus itself. No pairwise secant intersections anywhere -- the
// q=16 instance (n = 61696, ~1.34e8 edges) must stay cheap.
SecantGraph build_secant_graph(const Unital& u, ExecPolicy policy = ExecPolicy::Serial);

struct BaseCheckOptions {
    std::uint32_t k4_cap = 250;                // exhaustive K4 census iff n <= this
    std::uint64_t clique_pair_budget = 1'000'000; // clique-pair intersections
    std::uint64_t edge_check_budget = 2'000'000;  // per-edge ownership checks
};

// Structural audit: counts and regularity; clique sizes, pairwise one-shared-
// vertex (exhaustive under the budget, else a deterministic sample of
// budget-many pairs), q+1 cliques per vertex; edge/clique-edge totals; the
// edge -> owning-clique map total on edges (same budget treatment); and,
// when n <= k4_cap, a full K4 census confirming every K4 has >= 3 vertices
// inside one clique.
CheckReport verify_base_properties(const SecantGraph& g, const BaseCheckOptions& opt = {});

// Strongly-regular check: adjacent pairs share 2q^2-2 common neighbors,
// non-adjacent pairs (q+1)^2 -- exhaustive over all C(n,2) pairs when that
// fits pair_budget, else on a deterministic sample of pair_budget pairs.
// Also reports the feasibility identity d(d-lambda-1) = (n-d-1)mu.
CheckReport srg_check(const SecantGraph& g, std::uint64_t pair_budget = 1'000'000);

// One clique's intersection with a vertex set X (only kept when >= 2
// vertices survive).
struct CliqueTrace {
    std::uint32_t clique = 0;
    std::vector<std::uint32_t> verts; // sorted subset of X
};

// The S/M/L split of the clique traces of X: writing k = |X|, a trace of
// size t is small when t * ln(n) <= sqrt(2k), large when t^2 > 2k (exact
// integer test), medium between. Size-1 traces are discarded up front.
struct CliqueDecomposition {
    std::vector<std::uint32_t> X; // sorted, deduplicated input
    std::vector<CliqueTrace> S, M, L;
    std::uint64_t v_S = 0, v_M = 0, v_L = 0; // sum of trace sizes
    std::uint64_t e_S = 0, e_M = 0, e_L = 0; // sum of C(size, 2)

    // Mass bounds that hold for every X: v_L <= 2|X| and
    // v_S + v_M >= (q-1)|X| - q^3 - 1 (right side can go negative).
    bool l_mass_ok = false;
    bool sm_mass_ok = false;
    std::int64_t sm_rhs = 0;

    // Scaled edge-mass dichotomy, evaluated only when an explicit m is
    // supplied in place of the asymptotic set size: at least one of
    //   e_S >= m^2 / (64 q)   or   e_M >= q m^{3/2} / (16 ln^2 n)
    // is expected; both verdicts are reported, nothing asserted.
    struct Dichotomy {
        std::uint64_t m = 0;
        bool small_holds = false;  // 64 q e_S >= m^2, exact integers
        bool medium_holds = false; // 16 ln^2(n) e_M >= q m^{3/2}, long double
    };
    std::optional<Dichotomy> dichotomy;
};

// Decompose X's clique traces. Throws EmptyX when X is empty and
// InvariantViolation when X names a vertex out of range.
CliqueDecomposition clique_decomposition(const SecantGraph& g,
                                         const std::vector<std::uint32_t>& X,
                                         std::optional<std::uint64_t> m_override = {});

} // namespace ramsey

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ramsey/exec.hpp"
#include "ramsey/report.hpp"
#include "ramsey/secant_graph.hpp"

namespace ramsey {

// H_q*: each clique of the base graph gets a seeded random bipartition
// (A_T, B_T), and the clique's internal edges are replaced by the complete
// bipartite graph between the parts. Since every base edge lies in exactly
// one clique, the union needs no collision rule. Stored as base + masks;
// the edge set is derived (explicit_edges is only filled on export or by
// test fixtures, and the structural verifier cross-checks it when present).
struct K4FreeGraph {
    const SecantGraph* base = nullptr;
    std::uint64_t seed = 0;

    // Per-clique side masks, flat rows of mask_words words: bit j of row c
    // gives the side of clique_row(c)[j] (0 -> A, 1 -> B). Padding bits are
    // zero.
    std::vector<std::uint64_t> masks;
    std::uint32_t mask_words = 0;

    std::uint64_t edge_count = 0; // sum over cliques of |A_T| |B_T|

    // Materialized edge list (sorted, u < v); empty unless filled explicitly.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> explicit_edges;

    bool side(std::uint32_t clique, std::uint32_t pos) const {
        return (masks[static_cast<std::size_t>(clique) * mask_words + pos / 64] >>
                (pos % 64)) & 1u;
    }
    // Side of vertex v within clique c; v must lie in that clique.
    bool side_of(std::uint32_t c, std::uint32_t v) const;
    // Edge test: adjacent in the base and on opposite sides of the owning
    // clique's bipartition. O(q) for the owning-clique lookup.
    bool is_edge(std::uint32_t u, std::uint32_t v) const;
};

// Deterministic in (g, seed): clique c's mask comes from a counter stream
// keyed by (seed, "bipartition", c), so neither clique order nor thread
// count can change the output.
K4FreeGraph randomize(const SecantGraph& g, std::uint64_t seed,
                      ExecPolicy policy = ExecPolicy::Serial);

// Fill explicit_edges from the masks (sorted ascending).
void materialize_edges(K4FreeGraph& h);

enum class K4Mode { Structural, Exhaustive };

struct K4CheckOptions {
    std::uint32_t exhaustive_cap = 250;        // exhaustive mode requires n <= this
    std::uint64_t inclique_pair_budget = 2'000'000; // list-vs-mask cross-check pairs
};

// Structural mode: masks well formed, side counts add up, edge_count matches,
// and -- when an explicit edge list is present -- the list agrees with the
// masks pair-for-pair inside every clique (exhaustively under the budget,
// else on a deterministic sample) and every listed edge is a base edge.
// Exhaustive mode adds a direct K4 enumeration over the derived graph, which
// must find none; it refuses (CapExceeded) when n exceeds the cap.
CheckReport verify_k4_free(const K4FreeGraph& h, K4Mode mode, const K4CheckOptions& opt = {});

struct DensityAuditOptions {
    std::uint64_t m_prime = 0;         // scaled mass threshold; 0 -> 4 q^2
    double ratio_floor = 1.0 / 256.0;  // asserted on sizes >= m_prime
};

// Pseudorandomness audit: for each requested size s, draw `trials` uniform
// vertex subsets X and record the induced edge count e(X), the ratio
// e(X) * 256 q / |X|^2, and the excess e(X) - p C(|X|,2) against this
// instance's density p. Sizes at or above m_prime must show min e(X) > 0 and
// min e(X) q / |X|^2 above the floor; smaller sizes are reported only.
// Throws SizeExceedsN if any size exceeds n.
CheckReport edge_density_audit(const K4FreeGraph& h, const std::vector<std::uint32_t>& sizes,
                               std::uint32_t trials, std::uint64_t seed,
                               const DensityAuditOptions& opt = {},
                               ExecPolicy policy = ExecPolicy::Serial);

} // namespace ramsey

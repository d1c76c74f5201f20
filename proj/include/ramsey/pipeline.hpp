#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ramsey/finite_field.hpp"
#include "ramsey/independent_sets.hpp"
#include "ramsey/k4free.hpp"
#include "ramsey/report.hpp"
#include "ramsey/small_graph.hpp"

namespace ramsey {

using boost::multiprecision::cpp_rational;

// ---- Vertex sampling --------------------------------------------------- //

struct SampledSubgraph {
    std::vector<std::uint32_t> vertices; // kept original ids, ascending
    BitGraph graph;                      // induced subgraph, same vertex order
    double p_requested = 0.0;
    double p_used = 0.0;      // after clamping into [0,1]
    bool clamped = false;     // p_requested fell outside (0,1]
    bool outside_regime = false; // p_used > 0.25: far from the intended regime
};

// Keeps each vertex independently with probability p, drawn from the
// counter stream (seed, "vertex-sample", vertex). Out-of-range p is clamped
// with a flag rather than rejected, so exploratory runs always produce a
// graph plus a loud report.
SampledSubgraph sample_vertices(const K4FreeGraph& h, double p, std::uint64_t seed);

// ---- Witness certificates ---------------------------------------------- //

// FNV-1a over the little-endian (u,v) pairs of the sorted edge list; the
// same digest is computable from an exported edge-list file.
std::uint64_t edge_digest(const BitGraph& g);

enum class CertifyMode { Exact, Sampled };

struct Certificate {
    std::string version;   // tool version that produced it
    std::uint32_t q = 0;
    std::uint64_t seed = 0; // master seed (bipartition + vertex-sample streams)
    std::vector<std::uint32_t> modulus; // field modulus, little-endian, monic
    double p = 1.0;
    std::uint32_t n = 0;
    std::uint64_t edges = 0;
    std::uint64_t digest = 0;
    std::string k4_mode;   // "exhaustive" or "structural"
    bool k4_free = false;
    std::string alpha_mode; // "exact" or "sampled"
    std::uint32_t alpha_lo = 0; // independent set actually found
    std::uint32_t alpha_hi = 0; // proved upper bound (== alpha_lo when exact)
    std::vector<std::uint32_t> alpha_witness; // a largest found set, sorted
    std::uint32_t t = 0;   // target: certificate asserts alpha < t
    bool pass = false;
    std::vector<std::string> transcript;
    std::string timestamp; // informational only; verification ignores it
};

struct CertifyOptions {
    const Field* field = nullptr;  // recorded into the certificate if given
    std::uint32_t k4_cap = 250;    // exhaustive K4 enumeration cap
    std::uint32_t alpha_cap = 400; // exact independence-number cap
    std::uint64_t alpha_budget = 50'000'000; // branch-and-bound node budget
    std::uint32_t sampled_tries = 64; // greedy restarts in sampled mode
};

// Runs the K4 check (exhaustive within cap, else structural through the
// inherited clique masks) and bounds the independence number (exact within
// cap, else best-found greedy lower bound plus a greedy-coloring upper
// bound, labeled "sampled"). Never throws: shortfalls are recorded in the
// certificate and its transcript. pass == (K4-free and alpha provably < t);
// an inconclusive sampled bound fails with a transcript note.
Certificate certify_witness(const K4FreeGraph& h, const SampledSubgraph& s, std::uint32_t t,
                            CertifyMode mode, const CertifyOptions& opt = {});

// ---- Blowup and multicolor construction -------------------------------- //

// Vertex x becomes the independent set {x*r, ..., x*r + r - 1}; an edge
// {x,y} becomes the complete bipartite graph between the two sets. Throws
// ConditionViolated on r = 0 and TooLarge when r * |V| exceeds the small-
// graph cap (4096).
BitGraph blowup(const BitGraph& g, std::uint32_t r);

struct ColoredGraph {
    std::uint32_t n = 0; // r * T
    std::uint32_t k = 0;
    std::uint32_t r = 1;
    BitGraph base_blowup; // the uncolored blowup the color classes copy
    std::vector<std::vector<std::uint32_t>> perms; // the k-1 permutations
    std::vector<std::uint8_t> colors; // n*n symmetric, 1..k off-diagonal

    std::uint8_t color_of(std::uint32_t u, std::uint32_t v) const {
        return colors[static_cast<std::size_t>(u) * n + v];
    }
    // Edge count per color, index 1..k (index 0 unused).
    std::vector<std::uint64_t> count_by_color() const;
    // The subgraph formed by one color class (1..k).
    BitGraph color_class(std::uint8_t c) const;
};

// Colors the complete graph on r*|V| vertices: color i < k is a permuted
// copy of the blowup (its permutation drawn from (seed, "blowup-perm", i)),
// overlaps resolved lowest-color-wins; color k is everything left. k = 2 is
// the degenerate single-copy case; k must be at least 2 and at most 200.
ColoredGraph blowup_multicolor(const BitGraph& g_t, std::uint32_t r, std::uint32_t k,
                               std::uint64_t seed);
// Same, with caller-supplied permutations (size k-1, each a permutation of
// the blown-up vertex set) -- the reproducibility and collision fixtures.
ColoredGraph blowup_multicolor(const BitGraph& g_t, std::uint32_t r, std::uint32_t k,
                               std::vector<std::vector<std::uint32_t>> perms);

struct ColoringCheckOptions {
    std::uint32_t k4_cap = 250;    // per-color exhaustive K4 cap
    std::uint32_t alpha_cap = 400; // exact oracle cap for the size-t check
    std::uint64_t alpha_budget = 200'000'000;
};

// Checks: every pair carries exactly one color and the per-color counts
// partition C(n,2); colors 1..k-1 are K4-free (exhaustive); the union of
// colors 1..k-1 has no independent set of size t (so color k has no K_t),
// trivially passing when t > n. Caps are honest: an over-cap component is
// reported as skipped, with pass = true and an explicit detail.
CheckReport verify_coloring(const ColoredGraph& c, std::uint32_t t,
                            const ColoringCheckOptions& opt = {});

// ---- Exact expected-count expression ------------------------------------ //

struct ExpectedCountReport {
    cpp_rational value;
    bool below_one = false;
    std::string approx; // short scientific rendering for report lines
};

// The expected number of size-t independent sets across the k-coloring:
// (C(T,s) (sr)^t / t!)^(k-1) * C(rT,t)^-(k-2), evaluated exactly. Throws
// ConditionViolated when k < 2 or the denominator binomial vanishes.
ExpectedCountReport expected_count(std::uint64_t T, std::uint64_t s, std::uint64_t r,
                                   std::uint64_t t, std::uint32_t k);

// Parameter helper: s = floor(t / ln t) and
// r = ceil(delta_k * t^(2(k-2)) / (ln t)^(6k-13)), natural logs; requires
// t >= 3 and k >= 3 (the exponents only make sense from three colors up).
struct BlowupParams {
    std::uint64_t s = 0;
    std::uint64_t r = 0;
};
BlowupParams blowup_params(std::uint64_t t, std::uint32_t k, double delta_k = 1.0);

// ---- Scaled container-parameter chain ----------------------------------- //

struct ChainParams {
    std::uint32_t r = 0;
    std::uint64_t R = 0;
    std::uint64_t t = 0;
    double alpha = 0.0;
};

// Desk-scale analogue of the full-scale parameter choice (alpha = 1/256q,
// r = 1024 q log q, R = 2^24 q^2, t = 2^30 q log^2 q): same exponent ratio
// alpha*r = 4 ln q, constants shrunk so the integer steps are checkable at
// small q: alpha = 1/(4q), r = ceil(16 q ln q), R = 64 q^2,
// t = ceil(32 q ln^2 q).
ChainParams scaled_chain_params(std::uint32_t q);

struct ChainReport {
    std::uint32_t q = 0;
    std::uint64_t n = 0; // q^2 (q^2 - q + 1)
    ChainParams params;
    // Steps that are exact big-integer facts at these parameters; these must
    // hold for every q >= 2 and are safe to assert.
    CheckReport exact_steps;
    // The closing steps of the published chain, which genuinely need huge q;
    // evaluated and reported, never asserted.
    CheckReport asymptotic_steps;
};

// Re-derives the independent-set-count chain at scaled parameters:
//   gate      exp(-alpha r) n <= R
//   window    r <= t <= R/2
//   step A    C(n,r) C(R,t-r) <= n^r C(R,t)      (exact integers)
//   step B    t^t C(R,t) <= (4R)^t               (exact integers)
//   step C    n <= q^4                           (exact integers)
// and reports the asymptotic closers q^(4r) <= e^(t/2), 4R/t <= q/(2 ln^2 q)
// with their actual truth value at this q.
ChainReport container_chain_report(std::uint32_t q);

} // namespace ramsey

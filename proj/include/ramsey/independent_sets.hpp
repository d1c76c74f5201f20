#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ramsey/small_graph.hpp"

namespace ramsey {

using boost::multiprecision::cpp_int;

// Parameters of one container round: fingerprints carry at most r vertices,
// a trace may halt once the surviving set has at most R vertices, and alpha
// is the density the caller promises every large induced subgraph attains.
struct ContainerParams {
    std::uint32_t r = 0;
    std::uint32_t R = 0;
    double alpha = 0.0;
};

// Output of one deterministic container trace: the fingerprint S (in the
// order vertices were admitted) and the container the run halted with
// (sorted).  Every independent set replaying to this pair satisfies
// I subseteq S u container.
struct ContainerPair {
    std::vector<std::uint32_t> fingerprint;
    std::vector<std::uint32_t> container;

    bool operator==(const ContainerPair&) const = default;
};

// Replays the max-degree container trace against the independent set I.
// Starting from X = V, repeatedly pick the highest-degree vertex of g[X]
// (lowest id on ties); members of I move into the fingerprint and evict
// their closed neighborhood from X, non-members are simply dropped.  Halts
// as soon as |S| = r or |X| <= R and returns (S, X).  Throws NotIndependent
// if I has an internal edge (or a repeated / out-of-range vertex).
ContainerPair kw_trace(const BitGraph& g, const std::vector<std::uint32_t>& I,
                       const ContainerParams& params);

// Counting consequence of the trace: at most C(n,r) * C(R, t-r) independent
// sets of size t >= r share any (fingerprint, container) pool.  Exact big
// integer.  Throws ConditionViolated unless exp(-alpha r) * n <= R (the
// supersaturation gate) and r <= t.
cpp_int count_bound(const BitGraph& g, const ContainerParams& params, std::uint32_t t);

struct AlphaResult {
    std::uint32_t alpha = 0;               // independence number
    std::vector<std::uint32_t> witness;    // one maximum independent set, sorted
    std::uint64_t nodes = 0;               // branch-and-bound nodes expanded
};

inline constexpr std::uint32_t kAlphaVertexCap = 400;

// Exact independence number via branch and bound on the complement clique
// problem with a greedy-coloring bound.  Deterministic.  Throws CapExceeded
// when g.n exceeds vertex_cap and Timeout(node_budget) when the search
// expands more than node_budget nodes.
AlphaResult independence_number(const BitGraph& g,
                                std::uint64_t node_budget = 50'000'000,
                                std::uint32_t vertex_cap = kAlphaVertexCap);

// Number of independent sets of size exactly t, by meet-in-the-middle over
// a split of the vertex set (so empty graphs cost 2^(n/2), not 2^n).
// Exact.  Throws TooLarge when g.n > 30.
cpp_int count_independent_sets(const BitGraph& g, std::uint32_t t);

// Exact binomial coefficient; 0 when k > n.
cpp_int binomial(std::uint64_t n, std::uint64_t k);

} // namespace ramsey

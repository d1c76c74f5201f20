#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ramsey/errors.hpp"

namespace ramsey {

// Dense little graph with bitset adjacency rows -- the shape every exact
// oracle (independence number, set counting, container replay) runs on.
// Undirected, no loops.
struct BitGraph {
    std::uint32_t n = 0;
    std::uint32_t words = 0;
    std::vector<std::uint64_t> rows; // n * words

    explicit BitGraph(std::uint32_t n_ = 0)
        : n(n_), words(n_ == 0 ? 1 : (n_ + 63) / 64),
          rows(static_cast<std::size_t>(n_) * ((n_ == 0 ? 1 : (n_ + 63) / 64)), 0) {}

    std::span<const std::uint64_t> row(std::uint32_t v) const {
        return {rows.data() + static_cast<std::size_t>(v) * words, words};
    }
    std::span<std::uint64_t> row(std::uint32_t v) {
        return {rows.data() + static_cast<std::size_t>(v) * words, words};
    }
    void add_edge(std::uint32_t u, std::uint32_t v) {
        if (u == v || u >= n || v >= n)
            throw InvariantViolation("bad edge endpoints");
        row(u)[v / 64] |= 1ULL << (v % 64);
        row(v)[u / 64] |= 1ULL << (u % 64);
    }
    bool adjacent(std::uint32_t u, std::uint32_t v) const {
        return (row(u)[v / 64] >> (v % 64)) & 1u;
    }
    std::uint32_t degree(std::uint32_t v) const {
        std::uint32_t d = 0;
        for (std::uint64_t w : row(v)) d += std::popcount(w);
        return d;
    }
    std::uint64_t edge_count() const {
        std::uint64_t total = 0;
        for (std::uint32_t v = 0; v < n; ++v) total += degree(v);
        return total / 2;
    }

    static BitGraph cycle(std::uint32_t n) {
        BitGraph g(n);
        for (std::uint32_t v = 0; n >= 3 && v < n; ++v) g.add_edge(v, (v + 1) % n);
        return g;
    }
    static BitGraph complete(std::uint32_t n) {
        BitGraph g(n);
        for (std::uint32_t u = 0; u < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }
    static BitGraph complete_bipartite(std::uint32_t a, std::uint32_t b) {
        BitGraph g(a + b);
        for (std::uint32_t u = 0; u < a; ++u)
            for (std::uint32_t v = a; v < a + b; ++v) g.add_edge(u, v);
        return g;
    }
    static BitGraph from_edges(std::uint32_t n,
                               const std::vector<std::pair<std::uint32_t, std::uint32_t>>& es) {
        BitGraph g(n);
        for (const auto& [u, v] : es) g.add_edge(u, v);
        return g;
    }

    BitGraph complement() const {
        BitGraph g(n);
        for (std::uint32_t u = 0; u < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v)
                if (!adjacent(u, v)) g.add_edge(u, v);
        return g;
    }
    // Subgraph induced on verts (which become 0..k-1 in listed order).
    BitGraph induced(const std::vector<std::uint32_t>& verts) const {
        BitGraph g(static_cast<std::uint32_t>(verts.size()));
        for (std::uint32_t i = 0; i < verts.size(); ++i)
            for (std::uint32_t j = i + 1; j < verts.size(); ++j)
                if (adjacent(verts[i], verts[j])) g.add_edge(i, j);
        return g;
    }
};

} // namespace ramsey

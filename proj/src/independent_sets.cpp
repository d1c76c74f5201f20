#include "ramsey/independent_sets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

// Iterate the set bits of a word mask, ascending.
template <typename F>
void for_each_bit(std::span<const std::uint64_t> mask, F&& fn) {
    for (std::uint32_t w = 0; w < mask.size(); ++w) {
        std::uint64_t bits = mask[w];
        while (bits) {
            const std::uint32_t b = static_cast<std::uint32_t>(std::countr_zero(bits));
            fn(w * 64 + b);
            bits &= bits - 1;
        }
    }
}

std::uint32_t popcount_all(std::span<const std::uint64_t> mask) {
    std::uint32_t total = 0;
    for (std::uint64_t w : mask) total += std::popcount(w);
    return total;
}

} // namespace

cpp_int binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    cpp_int num = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        num *= n - k + i;
        num /= i; // exact at every step: a run of i consecutive integers
    }
    return num;
}

ContainerPair kw_trace(const BitGraph& g, const std::vector<std::uint32_t>& I,
                       const ContainerParams& params) {
    std::vector<std::uint8_t> in_I(g.n, 0);
    for (std::uint32_t v : I) {
        if (v >= g.n) throw NotIndependent("vertex " + std::to_string(v) + " out of range");
        if (in_I[v]) throw NotIndependent("vertex " + std::to_string(v) + " repeated in I");
        in_I[v] = 1;
    }
    for (std::size_t i = 0; i < I.size(); ++i)
        for (std::size_t j = i + 1; j < I.size(); ++j)
            if (g.adjacent(I[i], I[j]))
                throw NotIndependent("I contains edge {" + std::to_string(I[i]) + "," +
                                     std::to_string(I[j]) + "}");

    // X starts as all of V, held as a bitmask.
    std::vector<std::uint64_t> X(g.words, 0);
    for (std::uint32_t v = 0; v < g.n; ++v) X[v / 64] |= 1ULL << (v % 64);
    std::uint32_t xsize = g.n;

    ContainerPair out;
    while (out.fingerprint.size() < params.r && xsize > params.R) {
        // Highest degree within g[X]; ascending scan makes ties pick the
        // lowest id (strictly-greater replacement only).
        std::uint32_t best = 0, best_deg = 0;
        bool have = false;
        for_each_bit(X, [&](std::uint32_t v) {
            std::uint32_t deg = 0;
            const auto row = g.row(v);
            for (std::uint32_t w = 0; w < g.words; ++w)
                deg += std::popcount(row[w] & X[w]);
            if (!have || deg > best_deg) {
                have = true;
                best = v;
                best_deg = deg;
            }
        });
        if (in_I[best]) {
            out.fingerprint.push_back(best);
            const auto row = g.row(best);
            for (std::uint32_t w = 0; w < g.words; ++w) X[w] &= ~row[w];
            X[best / 64] &= ~(1ULL << (best % 64));
            xsize = popcount_all(X);
        } else {
            X[best / 64] &= ~(1ULL << (best % 64));
            --xsize;
        }
    }
    out.container.reserve(xsize);
    for_each_bit(X, [&](std::uint32_t v) { out.container.push_back(v); });
    return out;
}

cpp_int count_bound(const BitGraph& g, const ContainerParams& params, std::uint32_t t) {
    const long double survivors =
        std::exp(-static_cast<long double>(params.alpha) * params.r) *
        static_cast<long double>(g.n);
    if (!(survivors <= static_cast<long double>(params.R)))
        throw ConditionViolated("exp(-alpha r) n = " + std::to_string(double(survivors)) +
                                " exceeds R = " + std::to_string(params.R));
    if (t < params.r)
        throw ConditionViolated("target size t = " + std::to_string(t) +
                                " below fingerprint size r = " + std::to_string(params.r));
    return binomial(g.n, params.r) * binomial(params.R, t - params.r);
}

namespace {

// Max clique in the complement == max independent set in g.  Tomita-style
// branch and bound: candidates are greedily colored, then expanded from the
// highest color down so the first bound failure prunes the whole tail.
struct CliqueSearch {
    std::uint32_t n = 0, words = 0;
    std::vector<std::uint64_t> crows; // complement adjacency, n * words
    std::uint64_t nodes = 0, budget = 0;
    std::uint32_t best = 0;
    std::vector<std::uint32_t> best_set, cur;
    // Per-depth scratch (depth <= n), reused across calls.  Candidate sets
    // live in masks[depth]; the coloring needs its own buffers so it never
    // clobbers the set it is ordering.
    std::vector<std::vector<std::uint64_t>> masks, color_left, color_avail;
    std::vector<std::vector<std::uint32_t>> orders, colors;

    std::span<const std::uint64_t> crow(std::uint32_t v) const {
        return {crows.data() + static_cast<std::size_t>(v) * words, words};
    }

    void expand(std::uint32_t depth) {
        if (++nodes > budget) throw Timeout(budget);
        auto& P = masks[depth];
        if (popcount_all(P) == 0) {
            if (cur.size() > best) {
                best = static_cast<std::uint32_t>(cur.size());
                best_set = cur;
            }
            return;
        }
        // Greedy coloring of P in the complement, lowest ids first per class.
        auto& order = orders[depth];
        auto& color = colors[depth];
        order.clear();
        color.clear();
        auto& left = color_left[depth];
        auto& avail = color_avail[depth];
        left = P;
        std::uint32_t cls = 0;
        while (popcount_all(left) != 0) {
            ++cls;
            avail = left;
            while (true) {
                std::uint32_t v = n;
                for (std::uint32_t w = 0; w < words && v == n; ++w)
                    if (avail[w]) v = w * 64 + std::countr_zero(avail[w]);
                if (v == n) break;
                order.push_back(v);
                color.push_back(cls);
                const auto row = crow(v);
                for (std::uint32_t w = 0; w < words; ++w) avail[w] &= ~row[w];
                avail[v / 64] &= ~(1ULL << (v % 64));
                left[v / 64] &= ~(1ULL << (v % 64));
            }
        }
        // Expand from the back (highest color first).
        auto& sub = masks[depth + 1];
        for (std::size_t i = order.size(); i-- > 0;) {
            if (cur.size() + color[i] <= best) return;
            const std::uint32_t v = order[i];
            cur.push_back(v);
            const auto row = crow(v);
            for (std::uint32_t w = 0; w < words; ++w) sub[w] = P[w] & row[w];
            expand(depth + 1);
            cur.pop_back();
            P[v / 64] &= ~(1ULL << (v % 64));
        }
    }
};

} // namespace

AlphaResult independence_number(const BitGraph& g, std::uint64_t node_budget,
                                std::uint32_t vertex_cap) {
    if (g.n > vertex_cap)
        throw CapExceeded("graph has " + std::to_string(g.n) + " vertices; cap is " +
                          std::to_string(vertex_cap));
    AlphaResult res;
    if (g.n == 0) return res;

    CliqueSearch s;
    s.n = g.n;
    s.words = g.words;
    s.budget = node_budget;
    s.crows.assign(static_cast<std::size_t>(g.n) * g.words, 0);
    for (std::uint32_t u = 0; u < g.n; ++u)
        for (std::uint32_t v = 0; v < g.n; ++v)
            if (u != v && !g.adjacent(u, v))
                s.crows[static_cast<std::size_t>(u) * g.words + v / 64] |= 1ULL << (v % 64);
    s.masks.assign(g.n + 2, std::vector<std::uint64_t>(g.words, 0));
    s.color_left.assign(g.n + 1, std::vector<std::uint64_t>(g.words, 0));
    s.color_avail.assign(g.n + 1, std::vector<std::uint64_t>(g.words, 0));
    s.orders.resize(g.n + 1);
    s.colors.resize(g.n + 1);

    for (std::uint32_t v = 0; v < g.n; ++v) s.masks[0][v / 64] |= 1ULL << (v % 64);
    s.expand(0);

    res.alpha = s.best;
    res.witness = s.best_set;
    std::sort(res.witness.begin(), res.witness.end());
    res.nodes = s.nodes;
    return res;
}

cpp_int count_independent_sets(const BitGraph& g, std::uint32_t t) {
    if (g.n > 30)
        throw TooLarge("graph has " + std::to_string(g.n) + " vertices; counting caps at 30");
    const std::uint32_t n = g.n;
    if (t > n) return 0;
    if (n == 0) return t == 0 ? 1 : 0;

    // Split V into A = [0, na) and B = [na, n); count independent A-parts
    // exhaustively and close each one with a size-indexed DP over the
    // unblocked portion of B.
    const std::uint32_t na = n / 2, nb = n - na;
    std::vector<std::uint32_t> nb_in_a(na, 0);  // A-vertex -> A-neighbor mask
    std::vector<std::uint32_t> nb_a_to_b(na, 0); // A-vertex -> B-neighbor mask
    std::vector<std::uint32_t> nb_in_b(nb, 0);  // B-vertex -> B-neighbor mask
    for (std::uint32_t i = 0; i < na; ++i) {
        for (std::uint32_t j = 0; j < na; ++j)
            if (i != j && g.adjacent(i, j)) nb_in_a[i] |= 1u << j;
        for (std::uint32_t j = 0; j < nb; ++j)
            if (g.adjacent(i, na + j)) nb_a_to_b[i] |= 1u << j;
    }
    for (std::uint32_t i = 0; i < nb; ++i)
        for (std::uint32_t j = 0; j < nb; ++j)
            if (i != j && g.adjacent(na + i, na + j)) nb_in_b[i] |= 1u << j;

    // f[mask][k]: independent subsets of B-mask of size k.  Branch on the
    // lowest vertex; both referenced masks are strictly smaller.
    const std::uint32_t bstride = nb + 1;
    std::vector<std::uint64_t> f(static_cast<std::size_t>(1u << nb) * bstride, 0);
    f[0] = 1; // f[mask=0][k=0]
    for (std::uint32_t mask = 1; mask < (1u << nb); ++mask) {
        const std::uint32_t v = std::countr_zero(mask);
        const std::uint32_t without = mask & (mask - 1);
        const std::uint32_t taken = mask & ~nb_in_b[v] & ~(1u << v);
        auto* out = &f[static_cast<std::size_t>(mask) * bstride];
        const auto* skip = &f[static_cast<std::size_t>(without) * bstride];
        const auto* keep = &f[static_cast<std::size_t>(taken) * bstride];
        out[0] = 1;
        for (std::uint32_t k = 1; k <= nb; ++k) out[k] = skip[k] + keep[k - 1];
    }

    const std::uint32_t bfull = nb ? (1u << nb) - 1 : 0;
    cpp_int total = 0;
    // Independence flag and B-shadow of every A-mask, same lowest-bit walk.
    std::vector<std::uint8_t> indep(1u << na, 0);
    std::vector<std::uint32_t> shadow(1u << na, 0);
    indep[0] = 1;
    if (t <= nb) total += f[static_cast<std::size_t>(bfull) * bstride + t];
    for (std::uint32_t mask = 1; mask < (1u << na); ++mask) {
        const std::uint32_t v = std::countr_zero(mask);
        const std::uint32_t rest = mask & (mask - 1);
        if (!indep[rest] || (nb_in_a[v] & rest)) continue;
        indep[mask] = 1;
        shadow[mask] = shadow[rest] | nb_a_to_b[v];
        const std::uint32_t used = std::popcount(mask);
        if (used > t || t - used > nb) continue;
        total += f[static_cast<std::size_t>(bfull & ~shadow[mask]) * bstride + (t - used)];
    }
    return total;
}

} // namespace ramsey

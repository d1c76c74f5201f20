#include "ramsey/k4free.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <string>

#include "ramsey/errors.hpp"
#include "ramsey/rng.hpp"

namespace ramsey {

namespace {

std::uint32_t pos_in_clique(const SecantGraph& g, std::uint32_t c, std::uint32_t v) {
    const auto row = g.clique_row(c);
    const auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it == row.end() || *it != v)
        throw InvariantViolation("vertex " + std::to_string(v) + " not in clique " +
                                 std::to_string(c));
    return static_cast<std::uint32_t>(it - row.begin());
}

void fill_mask(K4FreeGraph& h, const SecantGraph& g, std::uint32_t c) {
    const rng::Stream s(h.seed, "bipartition", c);
    const std::uint64_t csize = g.q * g.q;
    std::uint64_t* row = h.masks.data() + static_cast<std::size_t>(c) * h.mask_words;
    for (std::uint32_t w = 0; w < h.mask_words; ++w) {
        std::uint64_t bits = s.word(w);
        const std::uint64_t used = std::min<std::uint64_t>(64, csize - 64ull * w);
        if (used < 64) bits &= (1ULL << used) - 1;
        row[w] = bits;
    }
}

} // namespace

bool K4FreeGraph::side_of(std::uint32_t c, std::uint32_t v) const {
    return side(c, pos_in_clique(*base, c, v));
}

bool K4FreeGraph::is_edge(std::uint32_t u, std::uint32_t v) const {
    if (u == v || !base->adjacent(u, v)) return false;
    const std::uint32_t c = base->edge_clique(u, v);
    return side_of(c, u) != side_of(c, v);
}

K4FreeGraph randomize(const SecantGraph& g, std::uint64_t seed, ExecPolicy policy) {
    K4FreeGraph h;
    h.base = &g;
    h.seed = seed;
    const std::uint64_t csize = g.q * g.q;
    h.mask_words = static_cast<std::uint32_t>((csize + 63) / 64);
    h.masks.assign(static_cast<std::size_t>(g.n_cliques) * h.mask_words, 0);

    std::uint64_t edges = 0;
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static) reduction(+ : edges)
        for (std::int64_t c = 0; c < static_cast<std::int64_t>(g.n_cliques); ++c) {
            fill_mask(h, g, static_cast<std::uint32_t>(c));
            std::uint64_t b = 0;
            for (std::uint32_t w = 0; w < h.mask_words; ++w)
                b += std::popcount(h.masks[c * h.mask_words + w]);
            edges += (csize - b) * b;
        }
    } else {
        for (std::uint32_t c = 0; c < g.n_cliques; ++c) {
            fill_mask(h, g, c);
            std::uint64_t b = 0;
            for (std::uint32_t w = 0; w < h.mask_words; ++w)
                b += std::popcount(h.masks[static_cast<std::size_t>(c) * h.mask_words + w]);
            edges += (csize - b) * b;
        }
    }
    h.edge_count = edges;
    return h;
}

void materialize_edges(K4FreeGraph& h) {
    const SecantGraph& g = *h.base;
    const std::uint64_t csize = g.q * g.q;
    h.explicit_edges.clear();
    h.explicit_edges.reserve(h.edge_count);
    for (std::uint32_t c = 0; c < g.n_cliques; ++c) {
        const auto row = g.clique_row(c);
        for (std::uint32_t i = 0; i < csize; ++i)
            for (std::uint32_t j = i + 1; j < csize; ++j)
                if (h.side(c, i) != h.side(c, j))
                    h.explicit_edges.emplace_back(row[i], row[j]); // row sorted: u < v
    }
    std::sort(h.explicit_edges.begin(), h.explicit_edges.end());
}

CheckReport verify_k4_free(const K4FreeGraph& h, K4Mode mode, const K4CheckOptions& opt) {
    const SecantGraph& g = *h.base;
    const std::uint64_t csize = g.q * g.q;
    CheckReport rep;

    if (mode == K4Mode::Exhaustive && g.n > opt.exhaustive_cap)
        throw CapExceeded("exhaustive K4 search needs n = " + std::to_string(g.n) +
                          " <= cap " + std::to_string(opt.exhaustive_cap));

    // Masks well formed: right shape, padding bits clear.
    {
        bool ok = h.masks.size() == static_cast<std::size_t>(g.n_cliques) * h.mask_words &&
                  h.mask_words == (csize + 63) / 64;
        const std::uint64_t pad = csize % 64;
        for (std::uint32_t c = 0; ok && pad != 0 && c < g.n_cliques; ++c) {
            const std::uint64_t top = h.masks[static_cast<std::size_t>(c + 1) * h.mask_words - 1];
            if (top >> pad) ok = false;
        }
        rep.add("bipartition masks well formed", ok,
                std::to_string(g.n_cliques) + " masks of " + std::to_string(csize) + " bits");
    }

    // Edge count = sum |A_T||B_T| over cliques.
    {
        std::uint64_t total = 0;
        for (std::uint32_t c = 0; c < g.n_cliques; ++c) {
            std::uint64_t b = 0;
            for (std::uint32_t w = 0; w < h.mask_words; ++w)
                b += std::popcount(h.masks[static_cast<std::size_t>(c) * h.mask_words + w]);
            total += (csize - b) * b;
        }
        rep.add("edge_count = sum |A_T||B_T|", total == h.edge_count,
                std::to_string(total) + " vs " + std::to_string(h.edge_count));
    }

    // Explicit edge list (when present) against the masks.
    if (!h.explicit_edges.empty()) {
        bool sorted_ok = std::is_sorted(h.explicit_edges.begin(), h.explicit_edges.end()) &&
                         std::adjacent_find(h.explicit_edges.begin(), h.explicit_edges.end()) ==
                             h.explicit_edges.end();
        rep.add("explicit edge list sorted and duplicate free", sorted_ok,
                std::to_string(h.explicit_edges.size()) + " edges");
        rep.add("explicit edge list size = edge_count",
                h.explicit_edges.size() == h.edge_count, "");

        bool subgraph_ok = true;
        std::string sub_detail;
        for (const auto& [u, v] : h.explicit_edges) {
            if (u >= v || v >= g.n || !g.adjacent(u, v)) {
                subgraph_ok = false;
                sub_detail = "listed edge {" + std::to_string(u) + "," + std::to_string(v) +
                             "} is not a base edge";
                break;
            }
        }
        rep.add("every listed edge is a base edge", subgraph_ok, sub_detail);

        // Pair-for-pair agreement inside cliques: listed iff opposite sides.
        const std::uint64_t total_pairs = g.n_cliques * (csize * (csize - 1) / 2);
        const bool exhaustive = total_pairs <= opt.inclique_pair_budget;
        bool agree = true;
        std::string agree_detail;
        auto listed = [&](std::uint32_t u, std::uint32_t v) {
            return std::binary_search(h.explicit_edges.begin(), h.explicit_edges.end(),
                                      std::make_pair(std::min(u, v), std::max(u, v)));
        };
        auto test_pair = [&](std::uint32_t c, std::uint32_t i, std::uint32_t j) {
            const auto row = g.clique_row(c);
            const bool want = h.side(c, i) != h.side(c, j);
            if (listed(row[i], row[j]) != want) {
                agree = false;
                agree_detail = "clique " + std::to_string(c) + " pair {" +
                               std::to_string(row[i]) + "," + std::to_string(row[j]) +
                               "} disagrees with its mask";
            }
        };
        if (exhaustive) {
            for (std::uint32_t c = 0; agree && c < g.n_cliques; ++c)
                for (std::uint32_t i = 0; agree && i < csize; ++i)
                    for (std::uint32_t j = i + 1; agree && j < csize; ++j) test_pair(c, i, j);
            if (agree) agree_detail = "exhaustive over " + std::to_string(total_pairs) + " pairs";
        } else {
            const rng::Stream s(h.seed, "inclique-pairs");
            for (std::uint64_t t = 0; agree && t < opt.inclique_pair_budget; ++t) {
                const auto c = static_cast<std::uint32_t>(s.below(3 * t, g.n_cliques));
                const auto i = static_cast<std::uint32_t>(s.below(3 * t + 1, csize));
                auto j = static_cast<std::uint32_t>(s.below(3 * t + 2, csize - 1));
                if (j >= i) ++j;
                test_pair(c, std::min(i, j), std::max(i, j));
            }
            if (agree)
                agree_detail =
                    "sampled " + std::to_string(opt.inclique_pair_budget) + " pairs";
        }
        rep.add("within-clique edges are exactly A_T x B_T", agree, agree_detail);
    } else {
        rep.add("within-clique edges are exactly A_T x B_T", true,
                "no explicit edge list; edges are mask-derived by definition");
    }

    if (mode == K4Mode::Exhaustive) {
        // Build derived-graph bitsets and enumerate K4s; none may exist.
        const std::uint32_t W = (g.n + 63) / 64;
        std::vector<std::uint64_t> bits(static_cast<std::size_t>(g.n) * W, 0);
        for (std::uint32_t u = 0; u < g.n; ++u)
            for (std::uint32_t v : g.neighbors(u)) {
                if (v <= u) continue;
                if (h.is_edge(u, v)) {
                    bits[static_cast<std::size_t>(u) * W + v / 64] |= 1ULL << (v % 64);
                    bits[static_cast<std::size_t>(v) * W + u / 64] |= 1ULL << (u % 64);
                }
            }
        bool ok = true;
        std::string detail;
        std::uint64_t triangles = 0;
        std::vector<std::uint64_t> uv(W), uvw(W);
        auto scan_word = [&](std::uint64_t w, std::uint32_t base_ix, auto&& fn) {
            while (w) {
                fn(base_ix + static_cast<std::uint32_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        };
        for (std::uint32_t u = 0; ok && u < g.n; ++u)
            for (std::uint32_t v = u + 1; ok && v < g.n; ++v) {
                if (!((bits[static_cast<std::size_t>(u) * W + v / 64] >> (v % 64)) & 1u))
                    continue;
                for (std::uint32_t k = 0; k < W; ++k)
                    uv[k] = bits[static_cast<std::size_t>(u) * W + k] &
                            bits[static_cast<std::size_t>(v) * W + k];
                for (std::uint32_t k = 0; k < W && ok; ++k)
                    scan_word(uv[k], 64 * k, [&](std::uint32_t w) {
                        if (w <= v || !ok) return;
                        ++triangles;
                        for (std::uint32_t t = 0; t < W; ++t)
                            uvw[t] = uv[t] & bits[static_cast<std::size_t>(w) * W + t];
                        for (std::uint32_t t = 0; t < W && ok; ++t)
                            scan_word(uvw[t], 64 * t, [&](std::uint32_t x) {
                                if (x <= w || !ok) return;
                                ok = false;
                                detail = "K4 {" + std::to_string(u) + "," + std::to_string(v) +
                                         "," + std::to_string(w) + "," + std::to_string(x) +
                                         "} via cliques " +
                                         std::to_string(g.edge_clique(u, v)) + "," +
                                         std::to_string(g.edge_clique(w, x));
                            });
                    });
            }
        if (ok) detail = "none found; " + std::to_string(triangles) + " triangles scanned";
        rep.add("no K4 in the derived graph", ok, detail);
    }
    return rep;
}

CheckReport edge_density_audit(const K4FreeGraph& h, const std::vector<std::uint32_t>& sizes,
                               std::uint32_t trials, std::uint64_t seed,
                               const DensityAuditOptions& opt, ExecPolicy policy) {
    const SecantGraph& g = *h.base;
    for (std::uint32_t s : sizes)
        if (s > g.n)
            throw SizeExceedsN("subset size " + std::to_string(s) + " exceeds n = " +
                               std::to_string(g.n));
    const std::uint64_t m_prime = opt.m_prime ? opt.m_prime : 4 * g.q * g.q;
    const double p = static_cast<double>(h.edge_count) /
                     (static_cast<double>(g.n) * (g.n - 1) / 2.0);

    // Induced H_q* edges of X, via per-clique side counts: each touched
    // clique contributes (A-side count) x (B-side count).
    std::vector<std::uint32_t> cnt_a(g.n_cliques, 0), cnt_b(g.n_cliques, 0);
    std::vector<std::uint32_t> touched;
    auto induced_edges = [&](const std::vector<std::uint32_t>& X) {
        std::uint64_t e = 0;
        touched.clear();
        for (std::uint32_t v : X)
            for (std::uint32_t c : g.cliques_of(v)) {
                if (cnt_a[c] == 0 && cnt_b[c] == 0) touched.push_back(c);
                (h.side_of(c, v) ? cnt_b[c] : cnt_a[c])++;
            }
        for (std::uint32_t c : touched) {
            e += static_cast<std::uint64_t>(cnt_a[c]) * cnt_b[c];
            cnt_a[c] = cnt_b[c] = 0;
        }
        return e;
    };

    CheckReport rep;
    for (std::uint32_t s : sizes) {
        std::vector<std::uint64_t> per_trial(trials);
        if (policy == ExecPolicy::Parallel) {
#pragma omp parallel
            {
                std::vector<std::uint32_t> a(g.n_cliques, 0), b(g.n_cliques, 0), touch;
                std::vector<std::uint32_t> scratch;
                auto local_edges = [&](const std::vector<std::uint32_t>& X) {
                    std::uint64_t e = 0;
                    touch.clear();
                    for (std::uint32_t v : X)
                        for (std::uint32_t c : g.cliques_of(v)) {
                            if (a[c] == 0 && b[c] == 0) touch.push_back(c);
                            (h.side_of(c, v) ? b[c] : a[c])++;
                        }
                    for (std::uint32_t c : touch) {
                        e += static_cast<std::uint64_t>(a[c]) * b[c];
                        a[c] = b[c] = 0;
                    }
                    return e;
                };
#pragma omp for schedule(dynamic, 8)
                for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
                    const rng::Stream st(seed, "density-x",
                                         (static_cast<std::uint64_t>(s) << 32) |
                                             static_cast<std::uint64_t>(t));
                    per_trial[t] = local_edges(rng::subset(st, g.n, s, scratch));
                }
            }
        } else {
            std::vector<std::uint32_t> scratch;
            for (std::uint32_t t = 0; t < trials; ++t) {
                const rng::Stream st(seed, "density-x",
                                     (static_cast<std::uint64_t>(s) << 32) |
                                         static_cast<std::uint64_t>(t));
                per_trial[t] = induced_edges(rng::subset(st, g.n, s, scratch));
            }
        }

        std::uint64_t emin = per_trial[0], esum = 0;
        for (std::uint64_t e : per_trial) {
            emin = std::min(emin, e);
            esum += e;
        }
        const double emean = static_cast<double>(esum) / trials;
        const double s2 = static_cast<double>(s) * s;
        const double min_ratio = static_cast<double>(emin) * 256.0 * g.q / s2;
        const double mean_ratio = emean * 256.0 * g.q / s2;
        const double pairs = static_cast<double>(s) * (s - 1) / 2.0;
        const double min_excess = static_cast<double>(emin) - p * pairs;

        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "min e=%llu mean e=%.1f ratio256q[min=%.3f mean=%.3f] "
                      "excess[min=%.1f] over %u trials",
                      static_cast<unsigned long long>(emin), emean, min_ratio, mean_ratio,
                      min_excess, trials);
        rep.add("density size " + std::to_string(s), true, buf);

        if (s >= m_prime) {
            rep.add("size " + std::to_string(s) + ": min e(X) > 0", emin > 0,
                    "min e = " + std::to_string(emin));
            const double floor_ratio = static_cast<double>(emin) * g.q / s2;
            std::snprintf(buf, sizeof buf, "min e q/|X|^2 = %.5f vs floor %.5f", floor_ratio,
                          opt.ratio_floor);
            rep.add("size " + std::to_string(s) + ": density ratio above floor",
                    floor_ratio > opt.ratio_floor, buf);
        }
    }
    return rep;
}

} // namespace ramsey

#include "ramsey/secant_graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ramsey/errors.hpp"
#include "ramsey/rng.hpp"

namespace ramsey {

namespace {

std::uint64_t nc2(std::uint64_t x) { return x * (x - 1) / 2; }

void fill_adjacency_row(const SecantGraph& g, std::uint32_t v, std::uint32_t* row) {
    std::uint32_t* out = row;
    for (std::uint32_t c : g.cliques_of(v))
        for (std::uint32_t w : g.clique_row(c))
            if (w != v) *out++ = w;
    if (out != row + g.d)
        throw InvariantViolation("vertex " + std::to_string(v) + " gathered " +
                                 std::to_string(out - row) + " neighbors, expected d");
    std::sort(row, row + g.d);
    if (std::adjacent_find(row, row + g.d) != row + g.d)
        throw InvariantViolation("vertex " + std::to_string(v) +
                                 " appears twice in one neighborhood: two cliques share an edge");
}

} // namespace

bool SecantGraph::adjacent(std::uint32_t u, std::uint32_t v) const {
    if (u == v) return false;
    if (!bits.empty())
        return (bits[static_cast<std::size_t>(u) * words + v / 64] >> (v % 64)) & 1u;
    const auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
}

std::uint32_t SecantGraph::edge_clique(std::uint32_t u, std::uint32_t v) const {
    const auto a = cliques_of(u), b = cliques_of(v);
    std::uint32_t found = std::numeric_limits<std::uint32_t>::max();
    int count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (a[i] > b[j]) ++j;
        else {
            found = a[i];
            ++count;
            ++i, ++j;
        }
    }
    if (count != 1)
        throw InvariantViolation("{" + std::to_string(u) + "," + std::to_string(v) + "} lies in " +
                                 std::to_string(count) + " cliques, not 1: not an edge");
    return found;
}

SecantGraph build_secant_graph(const Unital& u, ExecPolicy policy) {
    const std::uint64_t q = u.q;
    SecantGraph g;
    g.q = q;
    g.n = static_cast<std::uint32_t>(u.secants.size());
    g.d = static_cast<std::uint32_t>((q + 1) * (q * q - 1));
    g.n_cliques = static_cast<std::uint32_t>(u.point_ids.size());

    // Clique family = transpose of the secant->points rows. Scanning secants
    // in ascending id keeps every clique row sorted.
    const std::size_t csize = q * q;
    g.cliques.assign(static_cast<std::size_t>(g.n_cliques) * csize, 0);
    std::vector<std::uint32_t> cursor(g.n_cliques, 0);
    for (std::uint32_t s = 0; s < g.n; ++s)
        for (std::uint32_t p : u.secant_row(s)) {
            if (cursor[p] >= csize)
                throw InvariantViolation("unital point " + std::to_string(p) +
                                         " lies on more than q^2 secants");
            g.cliques[p * csize + cursor[p]++] = s;
        }
    for (std::uint32_t p = 0; p < g.n_cliques; ++p)
        if (cursor[p] != csize)
            throw InvariantViolation("unital point " + std::to_string(p) + " lies on " +
                                     std::to_string(cursor[p]) + " secants, expected q^2");
    g.vertex_cliques = u.secant_points;

    // Neighbor rows: disjoint union of the vertex's cliques minus itself.
    g.xadj.resize(static_cast<std::size_t>(g.n) + 1);
    for (std::size_t v = 0; v <= g.n; ++v) g.xadj[v] = v * g.d;
    g.adj.resize(static_cast<std::size_t>(g.n) * g.d);
    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
        for (std::int64_t v = 0; v < static_cast<std::int64_t>(g.n); ++v)
            fill_adjacency_row(g, static_cast<std::uint32_t>(v), g.adj.data() + v * g.d);
    } else {
        for (std::uint32_t v = 0; v < g.n; ++v)
            fill_adjacency_row(g, v, g.adj.data() + static_cast<std::size_t>(v) * g.d);
    }

    if (g.n <= kBitsetCap) {
        g.words = (g.n + 63) / 64;
        g.bits.assign(static_cast<std::size_t>(g.n) * g.words, 0);
        for (std::uint32_t v = 0; v < g.n; ++v)
            for (std::uint32_t w : g.neighbors(v))
                g.bits[static_cast<std::size_t>(v) * g.words + w / 64] |= 1ULL << (w % 64);
    }

    const std::uint64_t n_expect = q * q * (q * q - q + 1);
    if (g.n != n_expect)
        throw InvariantViolation("vertex count " + std::to_string(g.n) + " != q^2(q^2-q+1)");
    return g;
}

CheckReport verify_base_properties(const SecantGraph& g, const BaseCheckOptions& opt) {
    CheckReport rep;
    const std::uint64_t q = g.q;
    const std::uint64_t csize = q * q;

    rep.add("n = q^2(q^2-q+1)", g.n == q * q * (q * q - q + 1), "n = " + std::to_string(g.n));

    // (i) regularity.
    {
        bool ok = g.d == (q + 1) * (q * q - 1);
        std::string detail = "d = " + std::to_string(g.d);
        for (std::uint32_t v = 0; ok && v < g.n; ++v)
            if (g.degree(v) != g.d) {
                ok = false;
                detail = "vertex " + std::to_string(v) + " has degree " +
                         std::to_string(g.degree(v));
            }
        rep.add("graph is (q+1)(q^2-1)-regular", ok, detail);
    }

    // (ii) clique count, sizes, and pairwise single shared vertex.
    rep.add("clique count q^3+1", g.n_cliques == q * q * q + 1,
            std::to_string(g.n_cliques) + " cliques");
    {
        bool ok = g.cliques.size() == static_cast<std::size_t>(g.n_cliques) * csize;
        std::string detail;
        for (std::uint32_t c = 0; ok && c < g.n_cliques; ++c) {
            const auto row = g.clique_row(c);
            for (std::size_t j = 0; j < row.size(); ++j)
                if (row[j] >= g.n || (j > 0 && row[j] <= row[j - 1])) {
                    ok = false;
                    detail = "clique " + std::to_string(c) + " row malformed";
                    break;
                }
        }
        rep.add("every clique has q^2 sorted-distinct vertices", ok, detail);
    }
    {
        const std::uint64_t total = nc2(g.n_cliques);
        const bool exhaustive = total <= opt.clique_pair_budget;
        bool ok = true;
        std::string detail;
        auto shared = [&](std::uint32_t c1, std::uint32_t c2) {
            const auto a = g.clique_row(c1), b = g.clique_row(c2);
            std::size_t i = 0, j = 0, cnt = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] < b[j]) ++i;
                else if (a[i] > b[j]) ++j;
                else ++cnt, ++i, ++j;
            }
            return cnt;
        };
        auto test_pair = [&](std::uint32_t c1, std::uint32_t c2) {
            const std::size_t cnt = shared(c1, c2);
            if (cnt != 1) {
                ok = false;
                detail = "cliques " + std::to_string(c1) + "," + std::to_string(c2) +
                         " share " + std::to_string(cnt) + " vertices";
            }
        };
        if (exhaustive) {
            for (std::uint32_t c1 = 0; ok && c1 < g.n_cliques; ++c1)
                for (std::uint32_t c2 = c1 + 1; ok && c2 < g.n_cliques; ++c2) test_pair(c1, c2);
            if (ok) detail = "exhaustive over " + std::to_string(total) + " pairs";
        } else {
            const rng::Stream s(q, "clique-pairs");
            for (std::uint64_t i = 0; ok && i < opt.clique_pair_budget; ++i) {
                const auto c1 = static_cast<std::uint32_t>(s.below(2 * i, g.n_cliques));
                auto c2 = static_cast<std::uint32_t>(s.below(2 * i + 1, g.n_cliques - 1));
                if (c2 >= c1) ++c2;
                test_pair(c1, c2);
            }
            if (ok)
                detail = "sampled " + std::to_string(opt.clique_pair_budget) + " of " +
                         std::to_string(total) + " pairs";
        }
        rep.add("any two cliques share exactly one vertex", ok, detail);
    }

    // (iii) each vertex in exactly q+1 cliques, lists consistent both ways.
    {
        bool ok = g.vertex_cliques.size() == static_cast<std::size_t>(g.n) * (q + 1);
        std::string detail = ok ? "" : "vertex_cliques size wrong";
        std::vector<std::uint32_t> cnt(g.n, 0);
        for (std::uint32_t c = 0; c < g.n_cliques; ++c)
            for (std::uint32_t v : g.clique_row(c))
                if (v < g.n) ++cnt[v];
        for (std::uint32_t v = 0; ok && v < g.n; ++v) {
            if (cnt[v] != q + 1) {
                ok = false;
                detail = "vertex " + std::to_string(v) + " lies in " + std::to_string(cnt[v]) +
                         " cliques";
                break;
            }
            const auto row = g.cliques_of(v);
            for (std::size_t j = 0; j < row.size(); ++j) {
                const bool in_range = row[j] < g.n_cliques;
                const auto cr = in_range ? g.clique_row(row[j]) : std::span<const std::uint32_t>{};
                if (!in_range || (j > 0 && row[j] <= row[j - 1]) ||
                    !std::binary_search(cr.begin(), cr.end(), v)) {
                    ok = false;
                    detail = "vertex " + std::to_string(v) + " clique list inconsistent";
                    break;
                }
            }
        }
        rep.add("every vertex lies in exactly q+1 cliques", ok, detail);
    }

    // Edge totals: m = n d / 2 = (q^3+1) C(q^2,2).
    {
        const std::uint64_t m = g.adj.size() / 2;
        const std::uint64_t want = static_cast<std::uint64_t>(g.n) * g.d / 2;
        const std::uint64_t clique_total = static_cast<std::uint64_t>(g.n_cliques) * nc2(csize);
        rep.add("edge total n d/2 = (q^3+1) C(q^2,2)", m == want && m == clique_total,
                std::to_string(m) + " edges");
    }

    // Every edge owned by exactly one clique.
    {
        const std::uint64_t m = g.adj.size() / 2;
        const bool exhaustive = m <= opt.edge_check_budget;
        bool ok = true;
        std::string detail;
        auto test_edge = [&](std::uint32_t u, std::uint32_t v) {
            try {
                (void)g.edge_clique(u, v);
            } catch (const InvariantViolation& e) {
                ok = false;
                detail = e.what();
            }
        };
        if (exhaustive) {
            for (std::uint32_t u = 0; ok && u < g.n; ++u)
                for (std::uint32_t v : g.neighbors(u)) {
                    if (v <= u) continue;
                    test_edge(u, v);
                    if (!ok) break;
                }
            if (ok) detail = "exhaustive over " + std::to_string(m) + " edges";
        } else {
            const rng::Stream s(q, "edge-ownership");
            for (std::uint64_t i = 0; ok && i < opt.edge_check_budget; ++i) {
                const auto u = static_cast<std::uint32_t>(s.below(2 * i, g.n));
                const auto row = g.neighbors(u);
                if (row.empty()) continue;
                test_edge(u, row[s.below(2 * i + 1, row.size())]);
            }
            if (ok)
                detail = "sampled " + std::to_string(opt.edge_check_budget) + " of " +
                         std::to_string(m) + " edges";
        }
        rep.add("every edge lies in exactly one clique", ok, detail);
    }

    // (iv) K4 census. Every K4 of H_q must place >= 3 vertices in one clique.
    if (g.n <= opt.k4_cap && !g.bits.empty()) {
        bool ok = true;
        std::string detail;
        std::uint64_t k4s = 0;
        std::vector<std::uint32_t> ids;
        auto scan_word = [&](std::uint64_t w, std::uint32_t base, auto&& fn) {
            while (w) {
                fn(base + static_cast<std::uint32_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        };
        const std::uint32_t W = g.words;
        std::vector<std::uint64_t> uv(W), uvw(W);
        for (std::uint32_t u = 0; ok && u < g.n; ++u)
            for (std::uint32_t v : g.neighbors(u)) {
                if (v <= u || !ok) continue;
                for (std::uint32_t k = 0; k < W; ++k)
                    uv[k] = g.bits[static_cast<std::size_t>(u) * W + k] &
                            g.bits[static_cast<std::size_t>(v) * W + k];
                for (std::uint32_t k = 0; k < W && ok; ++k)
                    scan_word(uv[k], 64 * k, [&](std::uint32_t w) {
                        if (w <= v || !ok) return;
                        for (std::uint32_t t = 0; t < W; ++t)
                            uvw[t] = uv[t] & g.bits[static_cast<std::size_t>(w) * W + t];
                        for (std::uint32_t t = 0; t < W && ok; ++t)
                            scan_word(uvw[t], 64 * t, [&](std::uint32_t x) {
                                if (x <= w || !ok) return;
                                ++k4s;
                                ids.clear();
                                for (std::uint32_t y : {u, v, w, x})
                                    ids.insert(ids.end(), g.cliques_of(y).begin(),
                                               g.cliques_of(y).end());
                                std::sort(ids.begin(), ids.end());
                                int run = 1, best = 1;
                                for (std::size_t z = 1; z < ids.size(); ++z) {
                                    run = ids[z] == ids[z - 1] ? run + 1 : 1;
                                    best = std::max(best, run);
                                }
                                if (best < 3) {
                                    ok = false;
                                    detail = "K4 {" + std::to_string(u) + "," +
                                             std::to_string(v) + "," + std::to_string(w) + "," +
                                             std::to_string(x) + "} has no 3 vertices in a clique";
                                }
                            });
                    });
            }
        if (ok) detail = std::to_string(k4s) + " K4s examined";
        rep.add("every K4 has >=3 vertices in one clique", ok, detail);
    } else {
        rep.add("K4 census skipped", true,
                "n = " + std::to_string(g.n) + " > cap " + std::to_string(opt.k4_cap));
    }
    return rep;
}

CheckReport srg_check(const SecantGraph& g, std::uint64_t pair_budget) {
    CheckReport rep;
    const std::uint64_t q = g.q;
    const std::uint64_t lam = 2 * q * q - 2;
    const std::uint64_t mu = (q + 1) * (q + 1);
    const std::uint64_t n = g.n, d = g.d;

    rep.add("feasibility d(d-lambda-1) = (n-d-1)mu",
            d * (d - lam - 1) == (n - d - 1) * mu,
            std::to_string(d * (d - lam - 1)) + " = " + std::to_string((n - d - 1) * mu));

    auto common = [&](std::uint32_t u, std::uint32_t v) -> std::uint64_t {
        if (!g.bits.empty()) {
            std::uint64_t c = 0;
            const std::uint64_t* a = g.bits.data() + static_cast<std::size_t>(u) * g.words;
            const std::uint64_t* b = g.bits.data() + static_cast<std::size_t>(v) * g.words;
            for (std::uint32_t k = 0; k < g.words; ++k) c += std::popcount(a[k] & b[k]);
            return c;
        }
        const auto a = g.neighbors(u), b = g.neighbors(v);
        std::size_t i = 0, j = 0, c = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) ++i;
            else if (a[i] > b[j]) ++j;
            else ++c, ++i, ++j;
        }
        return c;
    };

    bool adj_ok = true, non_ok = true;
    std::string adj_detail, non_detail;
    std::uint64_t adj_tested = 0, non_tested = 0;
    auto test_pair = [&](std::uint32_t u, std::uint32_t v) {
        const std::uint64_t c = common(u, v);
        if (g.adjacent(u, v)) {
            ++adj_tested;
            if (adj_ok && c != lam) {
                adj_ok = false;
                adj_detail = "pair {" + std::to_string(u) + "," + std::to_string(v) + "}: " +
                             std::to_string(c) + " common, want " + std::to_string(lam);
            }
        } else {
            ++non_tested;
            if (non_ok && c != mu) {
                non_ok = false;
                non_detail = "pair {" + std::to_string(u) + "," + std::to_string(v) + "}: " +
                             std::to_string(c) + " common, want " + std::to_string(mu);
            }
        }
    };

    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    const bool exhaustive = total <= pair_budget;
    if (exhaustive) {
        for (std::uint32_t u = 0; u < g.n; ++u)
            for (std::uint32_t v = u + 1; v < g.n; ++v) test_pair(u, v);
    } else {
        const rng::Stream s(q, "srg-pairs");
        for (std::uint64_t i = 0; i < pair_budget; ++i) {
            const auto u = static_cast<std::uint32_t>(s.below(2 * i, g.n));
            auto v = static_cast<std::uint32_t>(s.below(2 * i + 1, g.n - 1));
            if (v >= u) ++v;
            test_pair(u, v);
        }
    }
    const std::string mode = exhaustive ? "exhaustive" : "sampled";
    rep.add("adjacent pairs share 2q^2-2 common neighbors", adj_ok,
            adj_ok ? mode + ", " + std::to_string(adj_tested) + " pairs" : adj_detail);
    rep.add("non-adjacent pairs share (q+1)^2 common neighbors", non_ok,
            non_ok ? mode + ", " + std::to_string(non_tested) + " pairs" : non_detail);
    return rep;
}

CliqueDecomposition clique_decomposition(const SecantGraph& g,
                                         const std::vector<std::uint32_t>& X,
                                         std::optional<std::uint64_t> m_override) {
    if (X.empty()) throw EmptyX();
    CliqueDecomposition out;
    out.X = X;
    std::sort(out.X.begin(), out.X.end());
    out.X.erase(std::unique(out.X.begin(), out.X.end()), out.X.end());
    if (out.X.back() >= g.n)
        throw InvariantViolation("X names vertex " + std::to_string(out.X.back()) +
                                 " outside the graph");

    // Traces: bucket X by clique, keep buckets of size >= 2.
    std::map<std::uint32_t, std::vector<std::uint32_t>> buckets;
    for (std::uint32_t v : out.X)
        for (std::uint32_t c : g.cliques_of(v)) buckets[c].push_back(v);

    const std::uint64_t k = out.X.size();
    const long double ln_n = std::log(static_cast<long double>(g.n));
    const long double sqrt2k = std::sqrt(2.0L * static_cast<long double>(k));
    for (auto& [c, verts] : buckets) {
        if (verts.size() < 2) continue;
        const std::uint64_t t = verts.size();
        CliqueTrace tr{c, std::move(verts)};
        const std::uint64_t e = t * (t - 1) / 2;
        if (t * t > 2 * k) { // t > sqrt(2k), exact
            out.v_L += t, out.e_L += e;
            out.L.push_back(std::move(tr));
        } else if (static_cast<long double>(t) * ln_n <= sqrt2k) {
            out.v_S += t, out.e_S += e;
            out.S.push_back(std::move(tr));
        } else {
            out.v_M += t, out.e_M += e;
            out.M.push_back(std::move(tr));
        }
    }

    // Mass bounds that hold unconditionally for any X.
    out.l_mass_ok = out.v_L <= 2 * k;
    const std::int64_t qi = static_cast<std::int64_t>(g.q);
    out.sm_rhs = (qi - 1) * static_cast<std::int64_t>(k) - qi * qi * qi - 1;
    out.sm_mass_ok = static_cast<std::int64_t>(out.v_S + out.v_M) >= out.sm_rhs;

    if (m_override) {
        namespace mp = boost::multiprecision;
        CliqueDecomposition::Dichotomy d;
        d.m = *m_override;
        const mp::cpp_int m = d.m;
        d.small_holds = mp::cpp_int(64) * g.q * out.e_S >= m * m;
        const long double mq = static_cast<long double>(d.m);
        d.medium_holds = 16.0L * ln_n * ln_n * static_cast<long double>(out.e_M) >=
                         static_cast<long double>(g.q) * mq * std::sqrt(mq);
        out.dichotomy = d;
    }
    return out;
}

} // namespace ramsey

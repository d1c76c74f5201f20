#include "ramsey/pipeline.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ramsey/errors.hpp"
#include "ramsey/rng.hpp"
#include "ramsey/version.hpp"

namespace ramsey {

namespace {

std::string iso8601_now() {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

std::string fmt(const char* pattern, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

// First K4 in id order, or nothing. Dense bitset walk: for each edge {u,v}
// the word-AND of their rows lists common neighbors; a second AND closes the
// quadruple. Ascending ids mean each K4 is seen exactly once.
std::optional<std::array<std::uint32_t, 4>> find_k4(const BitGraph& g) {
    const std::uint32_t words = g.words;
    std::vector<std::uint64_t> uv(words), uvw(words);
    for (std::uint32_t u = 0; u < g.n; ++u) {
        const auto ru = g.row(u);
        for (std::uint32_t v = u + 1; v < g.n; ++v) {
            if (!g.adjacent(u, v)) continue;
            const auto rv = g.row(v);
            for (std::uint32_t w = 0; w < words; ++w) uv[w] = ru[w] & rv[w];
            for (std::uint32_t w = v + 1; w < g.n; ++w) {
                if (!((uv[w / 64] >> (w % 64)) & 1u)) continue;
                const auto rw = g.row(w);
                for (std::uint32_t i = w / 64; i < words; ++i) uvw[i] = uv[i] & rw[i];
                for (std::uint32_t i = w / 64; i < words; ++i) {
                    std::uint64_t bits = uvw[i];
                    if (i == w / 64) bits &= ~((2ULL << (w % 64)) - 1);
                    if (bits)
                        return std::array<std::uint32_t, 4>{
                            u, v, w, i * 64 + static_cast<std::uint32_t>(std::countr_zero(bits))};
                }
            }
        }
    }
    return std::nullopt;
}

std::vector<std::uint32_t> greedy_independent(const BitGraph& g,
                                              const std::vector<std::uint32_t>& order) {
    std::vector<std::uint64_t> blocked(g.words, 0);
    std::vector<std::uint32_t> out;
    for (std::uint32_t v : order) {
        if ((blocked[v / 64] >> (v % 64)) & 1u) continue;
        out.push_back(v);
        const auto row = g.row(v);
        for (std::uint32_t w = 0; w < g.words; ++w) blocked[w] |= row[w];
        blocked[v / 64] |= 1ULL << (v % 64);
    }
    return out;
}

// Greedy partition of V into cliques (first clique that v extends, lowest
// index). An independent set meets each clique at most once, so the number
// of cliques bounds the independence number from above.
std::uint32_t clique_cover_bound(const BitGraph& g) {
    std::vector<std::vector<std::uint32_t>> cliques;
    for (std::uint32_t v = 0; v < g.n; ++v) {
        bool placed = false;
        for (auto& c : cliques) {
            bool all = true;
            for (std::uint32_t u : c) all = all && g.adjacent(u, v);
            if (all) {
                c.push_back(v);
                placed = true;
                break;
            }
        }
        if (!placed) cliques.push_back({v});
    }
    return static_cast<std::uint32_t>(cliques.size());
}

cpp_int factorial(std::uint64_t t) {
    cpp_int f = 1;
    for (std::uint64_t i = 2; i <= t; ++i) f *= i;
    return f;
}

std::string approx_string(const cpp_rational& v) {
    if (v == 0) return "0";
    const long double num = boost::multiprecision::numerator(v).convert_to<long double>();
    const long double den = boost::multiprecision::denominator(v).convert_to<long double>();
    if (std::isfinite(num) && std::isfinite(den) && den != 0)
        return fmt("%.6Lg", num / den);
    // Too large for long double: report the order of magnitude from bit sizes.
    const auto bits = [](const cpp_int& x) {
        return x == 0 ? 0L : static_cast<long>(boost::multiprecision::msb(x));
    };
    const long exp10 = static_cast<long>(
        (bits(boost::multiprecision::numerator(v)) -
         bits(boost::multiprecision::denominator(v))) * 0.30103L);
    return fmt("~1e%+ld", exp10);
}

} // namespace

SampledSubgraph sample_vertices(const K4FreeGraph& h, double p, std::uint64_t seed) {
    SampledSubgraph out;
    out.p_requested = p;
    out.clamped = !(p > 0.0 && p <= 1.0);
    out.p_used = std::min(std::max(p, 0.0), 1.0);
    out.outside_regime = out.p_used > 0.25;

    const std::uint32_t n = h.base->n;
    const rng::Stream s(seed, "vertex-sample");
    for (std::uint32_t v = 0; v < n; ++v)
        if (s.bernoulli(v, out.p_used)) out.vertices.push_back(v);

    const auto k = static_cast<std::uint32_t>(out.vertices.size());
    out.graph = BitGraph(k);
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = i + 1; j < k; ++j)
            if (h.is_edge(out.vertices[i], out.vertices[j])) out.graph.add_edge(i, j);
    return out;
}

std::uint64_t edge_digest(const BitGraph& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto feed = [&h](std::uint32_t x) {
        for (int b = 0; b < 4; ++b) {
            h ^= (x >> (8 * b)) & 0xffu;
            h *= 0x100000001b3ULL;
        }
    };
    for (std::uint32_t u = 0; u < g.n; ++u)
        for (std::uint32_t v = u + 1; v < g.n; ++v)
            if (g.adjacent(u, v)) {
                feed(u);
                feed(v);
            }
    return h;
}

Certificate certify_witness(const K4FreeGraph& h, const SampledSubgraph& s, std::uint32_t t,
                            CertifyMode mode, const CertifyOptions& opt) {
    Certificate c;
    c.version = kToolVersion;
    c.q = h.base->q;
    c.seed = h.seed;
    if (opt.field) c.modulus = opt.field->modulus;
    c.p = s.p_used;
    c.n = s.graph.n;
    c.edges = s.graph.edge_count();
    c.digest = edge_digest(s.graph);
    c.t = t;
    c.timestamp = iso8601_now();
    if (s.clamped)
        c.transcript.push_back(fmt("sampling probability %.6g clamped to %.6g", s.p_requested,
                                   s.p_used));
    if (s.outside_regime)
        c.transcript.push_back(fmt("p = %.6g > 0.25: outside the intended sampling regime",
                                   s.p_used));

    // K4-freeness of the sampled graph.
    const bool want_exhaustive = mode == CertifyMode::Exact;
    if (want_exhaustive && c.n > opt.k4_cap)
        c.transcript.push_back(fmt("exhaustive K4 scan refused: n = %u exceeds cap %u; "
                                   "falling back to structural masks",
                                   c.n, opt.k4_cap));
    if (want_exhaustive && c.n <= opt.k4_cap) {
        c.k4_mode = "exhaustive";
        if (const auto k4 = find_k4(s.graph)) {
            c.k4_free = false;
            c.transcript.push_back(fmt("K4 found on sampled vertices {%u,%u,%u,%u}", (*k4)[0],
                                       (*k4)[1], (*k4)[2], (*k4)[3]));
        } else {
            c.k4_free = true;
            c.transcript.push_back(fmt("exhaustive K4 scan over n = %u found none", c.n));
        }
    } else {
        c.k4_mode = "structural";
        const CheckReport rep = verify_k4_free(h, K4Mode::Structural);
        c.k4_free = rep.all_pass();
        if (c.k4_free)
            c.transcript.push_back(
                "structural bipartition masks verified on the parent graph; induced "
                "subgraphs inherit K4-freeness");
        else
            for (const auto& chk : rep.checks)
                if (!chk.pass)
                    c.transcript.push_back("structural check failed: " + chk.name +
                                           (chk.detail.empty() ? "" : " (" + chk.detail + ")"));
    }

    // Independence bound.
    bool exact = mode == CertifyMode::Exact && c.n <= opt.alpha_cap;
    if (mode == CertifyMode::Exact && c.n > opt.alpha_cap)
        c.transcript.push_back(fmt("exact independence number refused: n = %u exceeds cap %u; "
                                   "falling back to sampled bounds",
                                   c.n, opt.alpha_cap));
    if (exact) {
        try {
            const AlphaResult a = independence_number(s.graph, opt.alpha_budget, opt.alpha_cap);
            c.alpha_mode = "exact";
            c.alpha_lo = c.alpha_hi = a.alpha;
            c.alpha_witness = a.witness;
            c.transcript.push_back(fmt("exact alpha = %u (branch and bound, %llu nodes)",
                                       a.alpha, static_cast<unsigned long long>(a.nodes)));
        } catch (const Timeout&) {
            exact = false;
            c.transcript.push_back("branch and bound node budget exhausted; falling back to "
                                   "sampled bounds");
        }
    }
    if (!exact) {
        c.alpha_mode = "sampled";
        std::vector<std::uint32_t> best;
        for (std::uint32_t k = 0; k < opt.sampled_tries; ++k) {
            const auto order =
                rng::permutation(rng::Stream(h.seed, "alpha-sample", k), s.graph.n);
            auto found = greedy_independent(s.graph, order);
            if (found.size() > best.size()) best = std::move(found);
        }
        std::sort(best.begin(), best.end());
        c.alpha_lo = static_cast<std::uint32_t>(best.size());
        c.alpha_hi = clique_cover_bound(s.graph);
        c.alpha_witness = best;
        c.transcript.push_back(fmt("sampled alpha bounds: best independent set %u over %u "
                                   "greedy restarts; clique-cover upper bound %u",
                                   c.alpha_lo, opt.sampled_tries, c.alpha_hi));
    }

    if (!c.k4_free) {
        c.pass = false;
        c.transcript.push_back("verdict: FAIL (K4 check failed)");
    } else if (c.alpha_hi < t) {
        c.pass = true;
        c.transcript.push_back(fmt("verdict: PASS (alpha <= %u < t = %u)", c.alpha_hi, t));
    } else if (c.alpha_lo >= t) {
        c.pass = false;
        c.transcript.push_back(fmt("verdict: FAIL (independent set of size %u >= t = %u found)",
                                   c.alpha_lo, t));
    } else {
        c.pass = false;
        c.transcript.push_back(fmt("verdict: FAIL (inconclusive: alpha in [%u,%u] straddles "
                                   "t = %u)",
                                   c.alpha_lo, c.alpha_hi, t));
    }
    return c;
}

BitGraph blowup(const BitGraph& g, std::uint32_t r) {
    if (r == 0) throw ConditionViolated("blowup factor must be at least 1");
    const std::uint64_t n = static_cast<std::uint64_t>(g.n) * r;
    if (n > 4096)
        throw TooLarge(fmt("blowup has %llu vertices; cap is 4096",
                           static_cast<unsigned long long>(n)));
    BitGraph out(static_cast<std::uint32_t>(n));
    for (std::uint32_t x = 0; x < g.n; ++x)
        for (std::uint32_t y = x + 1; y < g.n; ++y) {
            if (!g.adjacent(x, y)) continue;
            for (std::uint32_t i = 0; i < r; ++i)
                for (std::uint32_t j = 0; j < r; ++j) out.add_edge(x * r + i, y * r + j);
        }
    return out;
}

std::vector<std::uint64_t> ColoredGraph::count_by_color() const {
    std::vector<std::uint64_t> counts(k + 1, 0);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) {
            const std::uint8_t c = color_of(u, v);
            if (c >= 1 && c <= k) ++counts[c];
        }
    return counts;
}

BitGraph ColoredGraph::color_class(std::uint8_t c) const {
    BitGraph g(n);
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (color_of(u, v) == c) g.add_edge(u, v);
    return g;
}

ColoredGraph blowup_multicolor(const BitGraph& g_t, std::uint32_t r, std::uint32_t k,
                               std::uint64_t seed) {
    if (k < 2 || k > 200)
        throw ConditionViolated(fmt("color count %u outside [2,200]", k));
    if (r == 0) throw ConditionViolated("blowup factor must be at least 1");
    const std::uint64_t n = static_cast<std::uint64_t>(g_t.n) * r;
    if (n > 4096)
        throw TooLarge(fmt("blowup has %llu vertices; cap is 4096",
                           static_cast<unsigned long long>(n)));
    std::vector<std::vector<std::uint32_t>> perms;
    for (std::uint32_t i = 1; i < k; ++i)
        perms.push_back(rng::permutation(rng::Stream(seed, "blowup-perm", i),
                                         static_cast<std::uint32_t>(n)));
    return blowup_multicolor(g_t, r, k, std::move(perms));
}

ColoredGraph blowup_multicolor(const BitGraph& g_t, std::uint32_t r, std::uint32_t k,
                               std::vector<std::vector<std::uint32_t>> perms) {
    if (k < 2 || k > 200)
        throw ConditionViolated(fmt("color count %u outside [2,200]", k));
    ColoredGraph c;
    c.base_blowup = blowup(g_t, r);
    c.n = c.base_blowup.n;
    c.k = k;
    c.r = r;
    if (perms.size() != k - 1)
        throw ConditionViolated(fmt("need %u permutations, got %zu", k - 1, perms.size()));
    for (const auto& perm : perms) {
        std::vector<std::uint32_t> sorted = perm;
        std::sort(sorted.begin(), sorted.end());
        bool ok = sorted.size() == c.n;
        for (std::uint32_t i = 0; ok && i < c.n; ++i) ok = sorted[i] == i;
        if (!ok)
            throw ConditionViolated("supplied sequence is not a permutation of the blown-up "
                                    "vertex set");
    }
    c.perms = std::move(perms);

    c.colors.assign(static_cast<std::size_t>(c.n) * c.n, 0);
    const auto paint = [&](std::uint32_t a, std::uint32_t b, std::uint8_t col) {
        auto& slot = c.colors[static_cast<std::size_t>(a) * c.n + b];
        if (slot != 0) return;
        slot = col;
        c.colors[static_cast<std::size_t>(b) * c.n + a] = col;
    };
    // Ascending color order makes "lowest color wins" a plain first-write rule.
    for (std::uint32_t i = 0; i + 1 < k; ++i) {
        const auto& sigma = c.perms[i];
        const auto col = static_cast<std::uint8_t>(i + 1);
        for (std::uint32_t u = 0; u < c.n; ++u)
            for (std::uint32_t v = u + 1; v < c.n; ++v)
                if (c.base_blowup.adjacent(u, v)) paint(sigma[u], sigma[v], col);
    }
    for (std::uint32_t u = 0; u < c.n; ++u)
        for (std::uint32_t v = u + 1; v < c.n; ++v)
            paint(u, v, static_cast<std::uint8_t>(k));
    return c;
}

CheckReport verify_coloring(const ColoredGraph& c, std::uint32_t t,
                            const ColoringCheckOptions& opt) {
    CheckReport rep;
    const std::uint64_t pairs = static_cast<std::uint64_t>(c.n) * (c.n - 1) / 2;

    bool well_formed = true;
    std::string detail;
    for (std::uint32_t u = 0; u < c.n && well_formed; ++u) {
        if (c.colors[static_cast<std::size_t>(u) * c.n + u] != 0) {
            well_formed = false;
            detail = fmt("diagonal entry at vertex %u is colored", u);
        }
        for (std::uint32_t v = u + 1; v < c.n && well_formed; ++v) {
            const std::uint8_t col = c.color_of(u, v);
            if (col < 1 || col > c.k) {
                well_formed = false;
                detail = fmt("pair {%u,%u} has color %u outside 1..%u", u, v, col, c.k);
            } else if (c.color_of(v, u) != col) {
                well_formed = false;
                detail = fmt("pair {%u,%u} colored asymmetrically", u, v);
            }
        }
    }
    rep.add("every pair has exactly one color", well_formed, detail);

    const auto counts = c.count_by_color();
    const std::uint64_t total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    std::string breakdown;
    for (std::uint32_t i = 1; i <= c.k; ++i)
        breakdown += fmt("%s|E_%u| = %llu", i == 1 ? "" : ", ", i,
                         static_cast<unsigned long long>(counts[i]));
    rep.add("color counts partition all pairs", total == pairs,
            breakdown + fmt("; total %llu of %llu", static_cast<unsigned long long>(total),
                            static_cast<unsigned long long>(pairs)));

    if (c.n <= opt.k4_cap) {
        for (std::uint32_t i = 1; i < c.k; ++i) {
            const BitGraph cls = c.color_class(static_cast<std::uint8_t>(i));
            const auto k4 = find_k4(cls);
            rep.add(fmt("color %u is K4-free", i), !k4,
                    k4 ? fmt("K4 at {%u,%u,%u,%u}", (*k4)[0], (*k4)[1], (*k4)[2], (*k4)[3])
                       : fmt("exhaustive over %llu edges",
                             static_cast<unsigned long long>(cls.edge_count())));
        }
    } else {
        rep.add("per-color K4 censuses skipped", true,
                fmt("n = %u exceeds exhaustive cap %u", c.n, opt.k4_cap));
    }

    if (t > c.n) {
        rep.add("no independent set of size t in colors 1..k-1", true,
                fmt("t = %u exceeds vertex count %u", t, c.n));
    } else if (c.n <= opt.alpha_cap) {
        BitGraph uni(c.n);
        for (std::uint32_t u = 0; u < c.n; ++u)
            for (std::uint32_t v = u + 1; v < c.n; ++v)
                if (c.color_of(u, v) != c.k) uni.add_edge(u, v);
        try {
            const AlphaResult a = independence_number(uni, opt.alpha_budget, opt.alpha_cap);
            rep.add("no independent set of size t in colors 1..k-1", a.alpha < t,
                    fmt("alpha of the union = %u vs t = %u", a.alpha, t));
        } catch (const Timeout&) {
            rep.add("no independent set of size t in colors 1..k-1", false,
                    "inconclusive: branch and bound budget exhausted");
        }
    } else {
        rep.add("independent set check skipped", true,
                fmt("n = %u exceeds exact-oracle cap %u", c.n, opt.alpha_cap));
    }
    return rep;
}

ExpectedCountReport expected_count(std::uint64_t T, std::uint64_t s, std::uint64_t r,
                                   std::uint64_t t, std::uint32_t k) {
    if (k < 2) throw ConditionViolated("color count k must be at least 2");
    if (r != 0 && T > (std::uint64_t{1} << 40) / r)
        throw TooLarge("r*T overflows the supported range");
    const std::uint64_t rT = r * T;

    const cpp_int per_color_num =
        binomial(T, s) * boost::multiprecision::pow(cpp_int(s) * r, static_cast<unsigned>(t));
    const cpp_rational per_color(per_color_num, factorial(t));

    ExpectedCountReport out;
    out.value = 1;
    for (std::uint32_t i = 1; i < k; ++i) out.value *= per_color;
    if (k > 2) {
        const cpp_int denom = binomial(rT, t);
        if (denom == 0)
            throw ConditionViolated(fmt("C(rT,t) vanishes: t = %llu exceeds rT = %llu",
                                        static_cast<unsigned long long>(t),
                                        static_cast<unsigned long long>(rT)));
        for (std::uint32_t i = 2; i < k; ++i) out.value /= denom;
    }
    out.below_one = out.value < 1;
    out.approx = approx_string(out.value);
    return out;
}

BlowupParams blowup_params(std::uint64_t t, std::uint32_t k, double delta_k) {
    if (t < 3) throw ConditionViolated("blowup parameter t must be at least 3");
    if (k < 3) throw ConditionViolated("blowup parameter k must be at least 3");
    const long double lt = std::log(static_cast<long double>(t));
    BlowupParams out;
    out.s = static_cast<std::uint64_t>(static_cast<long double>(t) / lt);
    const long double raw = static_cast<long double>(delta_k) *
                            std::pow(static_cast<long double>(t), 2.0L * (k - 2)) /
                            std::pow(lt, 6.0L * k - 13.0L);
    if (!(raw < 1e18L)) throw TooLarge("blowup factor r out of desk-scale range");
    out.r = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(raw)));
    return out;
}

ChainParams scaled_chain_params(std::uint32_t q) {
    if (q < 2) throw ConditionViolated("q must be at least 2");
    const long double lq = std::log(static_cast<long double>(q));
    ChainParams p;
    p.alpha = 1.0 / (4.0 * q);
    p.r = static_cast<std::uint32_t>(std::ceil(16.0L * q * lq));
    p.R = 64ULL * q * q;
    p.t = static_cast<std::uint64_t>(std::ceil(32.0L * q * lq * lq));
    return p;
}

ChainReport container_chain_report(std::uint32_t q) {
    ChainReport rep;
    rep.q = q;
    rep.params = scaled_chain_params(q);
    const std::uint64_t q2 = static_cast<std::uint64_t>(q) * q;
    rep.n = q2 * (q2 - q + 1);
    const auto [r, R, t, alpha] = rep.params;
    const long double lq = std::log(static_cast<long double>(q));

    const long double gate = std::exp(-static_cast<long double>(alpha) * r) *
                             static_cast<long double>(rep.n);
    rep.exact_steps.add("survivor gate exp(-alpha r) n <= R", gate <= static_cast<long double>(R),
                        fmt("%.4Lg <= %llu", gate, static_cast<unsigned long long>(R)));
    rep.exact_steps.add("window r <= t <= R/2", r <= t && t <= R / 2,
                        fmt("r = %u, t = %llu, R = %llu", r,
                            static_cast<unsigned long long>(t),
                            static_cast<unsigned long long>(R)));

    const cpp_int lhs_a = binomial(rep.n, r) * binomial(R, t - r);
    const cpp_int rhs_a =
        boost::multiprecision::pow(cpp_int(rep.n), r) * binomial(R, t);
    const auto bits = [](const cpp_int& x) {
        return x == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
    };
    rep.exact_steps.add("C(n,r) C(R,t-r) <= n^r C(R,t)", lhs_a <= rhs_a,
                        fmt("lhs %u bits, rhs %u bits", bits(lhs_a), bits(rhs_a)));

    const cpp_int lhs_b = boost::multiprecision::pow(cpp_int(t), static_cast<unsigned>(t)) *
                          binomial(R, t);
    const cpp_int rhs_b =
        boost::multiprecision::pow(cpp_int(4) * R, static_cast<unsigned>(t));
    rep.exact_steps.add("t^t C(R,t) <= (4R)^t", lhs_b <= rhs_b,
                        fmt("lhs %u bits, rhs %u bits", bits(lhs_b), bits(rhs_b)));

    rep.exact_steps.add("n <= q^4", rep.n <= q2 * q2,
                        fmt("%llu <= %llu", static_cast<unsigned long long>(rep.n),
                            static_cast<unsigned long long>(q2 * q2)));

    rep.asymptotic_steps.add("q^(4r) <= e^(t/2)",
                             4.0L * r * lq <= static_cast<long double>(t) / 2,
                             fmt("4 r ln q = %.4Lg vs t/2 = %.4Lg", 4.0L * r * lq,
                                 static_cast<long double>(t) / 2));
    rep.asymptotic_steps.add("4R/t <= q/(2 ln^2 q)",
                             4.0L * R / t <= q / (2.0L * lq * lq),
                             fmt("%.4Lg vs %.4Lg", 4.0L * R / t, q / (2.0L * lq * lq)));
    // The closing claim: the count itself is below (q / ln^2 q)^t. Compared
    // through bit lengths (the integers dwarf long double range).
    const long double rhs_log2 = static_cast<long double>(t) *
                                 std::log2(static_cast<long double>(q) / (lq * lq));
    rep.asymptotic_steps.add(
        "C(n,r) C(R,t-r) <= (q/ln^2 q)^t",
        lhs_a == 0 || static_cast<long double>(bits(lhs_a)) < rhs_log2 - 1,
        fmt("count has %u bits, target has %.0Lf", bits(lhs_a), rhs_log2));
    return rep;
}

} // namespace ramsey

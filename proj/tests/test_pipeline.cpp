#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "ramsey/errors.hpp"
#include "ramsey/finite_field.hpp"
#include "ramsey/independent_sets.hpp"
#include "ramsey/k4free.hpp"
#include "ramsey/pipeline.hpp"
#include "ramsey/projective_plane.hpp"
#include "ramsey/secant_graph.hpp"
#include "ramsey/small_graph.hpp"
#include "ramsey/unital.hpp"
#include "ramsey/version.hpp"
#include "testutil.hpp"

using namespace ramsey;

namespace {

// One randomized secant graph with everything it points into kept alive.
struct Star {
    Field F;
    Plane P;
    Unital U;
    SecantGraph G;
    K4FreeGraph H;
    Star(std::uint32_t q, std::uint64_t seed)
        : F(make_field_q(q)),
          P(make_plane(F)),
          U(build_unital(F, P)),
          G(build_secant_graph(U)),
          H(randomize(G, seed)) {}
};

bool transcript_mentions(const Certificate& c, const std::string& needle) {
    for (const auto& line : c.transcript)
        if (line.find(needle) != std::string::npos) return true;
    return false;
}

bool is_independent(const BitGraph& g, const std::vector<std::uint32_t>& verts) {
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (g.adjacent(verts[i], verts[j])) return false;
    return true;
}

const CheckResult* find_check(const CheckReport& rep, const std::string& prefix) {
    for (const auto& c : rep.checks)
        if (c.name.rfind(prefix, 0) == 0) return &c;
    return nullptr;
}

std::vector<std::uint32_t> identity_perm(std::uint32_t n) {
    std::vector<std::uint32_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

} // namespace

TEST_CASE("p = 1 keeps every vertex and every edge") {
    const Star star(2, 11);
    const SampledSubgraph s = sample_vertices(star.H, 1.0, 7);
    REQUIRE(s.vertices.size() == 12);
    for (std::uint32_t v = 0; v < 12; ++v) CHECK(s.vertices[v] == v);
    CHECK(s.graph.edge_count() == star.H.edge_count);
    for (std::uint32_t u = 0; u < 12; ++u)
        for (std::uint32_t v = u + 1; v < 12; ++v)
            CHECK(s.graph.adjacent(u, v) == star.H.is_edge(u, v));
    CHECK_FALSE(s.clamped);
    CHECK(s.outside_regime); // 1.0 is far above the intended p range
}

TEST_CASE("sampling keeps vertices at the requested rate") {
    const Star star(3, 5); // 63 vertices
    std::uint64_t total = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        total += sample_vertices(star.H, 0.5, seed).vertices.size();
    const double mean = static_cast<double>(total) / 200.0;
    CHECK(mean > 30.0); // expectation 31.5, spread well under +-1.5
    CHECK(mean < 33.0);

    // Same seed, same subgraph; and the draw really depends on the seed.
    const SampledSubgraph a = sample_vertices(star.H, 0.5, 42);
    const SampledSubgraph b = sample_vertices(star.H, 0.5, 42);
    CHECK(a.vertices == b.vertices);
    CHECK(edge_digest(a.graph) == edge_digest(b.graph));
    CHECK(a.vertices != sample_vertices(star.H, 0.5, 43).vertices);
}

TEST_CASE("out-of-range and out-of-regime probabilities are flagged") {
    const Star star(2, 3);

    const SampledSubgraph hot = sample_vertices(star.H, 1.5, 1);
    CHECK(hot.clamped);
    CHECK(hot.p_used == 1.0);
    CHECK(hot.vertices.size() == 12);

    const SampledSubgraph cold = sample_vertices(star.H, -0.2, 1);
    CHECK(cold.clamped);
    CHECK(cold.p_used == 0.0);
    CHECK(cold.vertices.empty());
    CHECK(cold.graph.n == 0);

    CHECK(sample_vertices(star.H, 0.54, 1).outside_regime);
    CHECK_FALSE(sample_vertices(star.H, 0.54, 1).clamped);
    CHECK_FALSE(sample_vertices(star.H, 0.25, 1).outside_regime);
    CHECK_FALSE(sample_vertices(star.H, 0.20, 1).clamped);
    CHECK_FALSE(sample_vertices(star.H, 0.20, 1).outside_regime);
}

TEST_CASE("edge digests are canonical and edge-sensitive") {
    CHECK(edge_digest(BitGraph(5)) == 0xcbf29ce484222325ULL); // no edges: bare offset basis

    BitGraph p01(3), p12(3);
    p01.add_edge(0, 1);
    p12.add_edge(1, 2);
    CHECK(edge_digest(p01) != edge_digest(p12));

    // Insertion order is invisible: the digest walks the sorted edge list.
    BitGraph x(4), y(4);
    x.add_edge(3, 1);
    x.add_edge(0, 1);
    y.add_edge(0, 1);
    y.add_edge(1, 3);
    CHECK(edge_digest(x) == edge_digest(y));
}

TEST_CASE("exact certificates decide the target strictly") {
    const Star star(3, 42);
    const SampledSubgraph s = sample_vertices(star.H, 0.5, 42);
    const std::uint32_t alpha = independence_number(s.graph).alpha;

    CertifyOptions opt;
    opt.field = &star.F;
    const Certificate good = certify_witness(star.H, s, alpha + 1, CertifyMode::Exact, opt);
    CHECK(good.version == kToolVersion);
    CHECK(good.q == 3);
    CHECK(good.seed == 42);
    CHECK(good.modulus == star.F.modulus);
    CHECK(good.n == s.graph.n);
    CHECK(good.edges == s.graph.edge_count());
    CHECK(good.digest == edge_digest(s.graph));
    CHECK(good.k4_mode == "exhaustive");
    CHECK(good.k4_free);
    CHECK(good.alpha_mode == "exact");
    CHECK(good.alpha_lo == alpha);
    CHECK(good.alpha_hi == alpha);
    CHECK(good.alpha_witness.size() == alpha);
    CHECK(is_independent(s.graph, good.alpha_witness));
    CHECK(std::is_sorted(good.alpha_witness.begin(), good.alpha_witness.end()));
    CHECK(good.pass);

    // Setting the target at alpha itself must fail and hand over the witness.
    const Certificate bad = certify_witness(star.H, s, alpha, CertifyMode::Exact, opt);
    CHECK_FALSE(bad.pass);
    CHECK(bad.k4_free); // the graph is fine; only the target is unreachable
    CHECK(bad.alpha_witness.size() >= alpha);
    CHECK(transcript_mentions(bad, "FAIL"));
}

TEST_CASE("re-certification is deterministic apart from the timestamp") {
    const Star star(3, 9);
    const SampledSubgraph s = sample_vertices(star.H, 0.5, 9);
    const Certificate a = certify_witness(star.H, s, 10, CertifyMode::Exact);
    const Certificate b = certify_witness(star.H, s, 10, CertifyMode::Exact);
    CHECK(a.digest == b.digest);
    CHECK(a.edges == b.edges);
    CHECK(a.k4_free == b.k4_free);
    CHECK(a.alpha_lo == b.alpha_lo);
    CHECK(a.alpha_hi == b.alpha_hi);
    CHECK(a.alpha_witness == b.alpha_witness);
    CHECK(a.pass == b.pass);
    CHECK(a.transcript == b.transcript);
}

TEST_CASE("oversize exact requests fall back loudly") {
    const Star star(5, 17); // 525 vertices: above both exact caps
    const SampledSubgraph s = sample_vertices(star.H, 1.0, 17);
    REQUIRE(s.graph.n == 525);

    const Certificate c = certify_witness(star.H, s, 526, CertifyMode::Exact);
    CHECK(c.k4_mode == "structural");
    CHECK(c.k4_free);
    CHECK(c.alpha_mode == "sampled");
    CHECK(c.alpha_lo <= c.alpha_hi);
    CHECK(is_independent(s.graph, c.alpha_witness));
    CHECK(transcript_mentions(c, "exceeds cap"));
    CHECK(c.pass); // alpha_hi <= 525 < t

    const Certificate tight = certify_witness(star.H, s, 1, CertifyMode::Exact);
    CHECK_FALSE(tight.pass); // any nonempty graph has an independent vertex
}

TEST_CASE("sampled-mode verdicts are three-way honest") {
    const Star star(2, 1);
    SampledSubgraph s;
    s.graph = BitGraph::cycle(5);
    s.vertices = identity_perm(5);
    s.p_used = 1.0;

    // A one-node budget forces the exact oracle to time out and downgrade.
    CertifyOptions opt;
    opt.alpha_budget = 1;

    const Certificate wide = certify_witness(star.H, s, 4, CertifyMode::Exact, opt);
    CHECK(wide.alpha_mode == "sampled");
    CHECK(transcript_mentions(wide, "budget exhausted"));
    CHECK(wide.alpha_lo == 2);  // greedy restarts find a best pair
    CHECK(wide.alpha_hi == 3);  // greedy clique cover of C5: {0,1},{2,3},{4}
    CHECK(wide.pass);           // 3 < 4, proved despite the downgrade

    const Certificate exceeded = certify_witness(star.H, s, 2, CertifyMode::Exact, opt);
    CHECK_FALSE(exceeded.pass); // a found pair already reaches t = 2
    CHECK(transcript_mentions(exceeded, "independent set of size 2"));

    const Certificate fuzzy = certify_witness(star.H, s, 3, CertifyMode::Exact, opt);
    CHECK_FALSE(fuzzy.pass); // bounds [2,3] cannot decide t = 3
    CHECK(transcript_mentions(fuzzy, "straddles"));
}

TEST_CASE("blowup reproduces the textbook small cases") {
    const BitGraph pet = testutil::random_graph(3, 9, 0.4);
    const BitGraph same = blowup(pet, 1);
    CHECK(same.n == pet.n);
    CHECK(edge_digest(same) == edge_digest(pet));

    const BitGraph c4 = blowup(BitGraph::from_edges(2, {{0, 1}}), 2);
    REQUIRE(c4.n == 4);
    CHECK(c4.edge_count() == 4);
    CHECK_FALSE(c4.adjacent(0, 1)); // inside a block
    CHECK_FALSE(c4.adjacent(2, 3));
    CHECK(c4.adjacent(0, 2));
    CHECK(c4.adjacent(1, 3));

    const BitGraph octa = blowup(BitGraph::complete(3), 2);
    REQUIRE(octa.n == 6);
    CHECK(octa.edge_count() == 12);
    CHECK(independence_number(octa).alpha == 2);

    CHECK_THROWS_AS(blowup(BitGraph::cycle(4), 0), ConditionViolated);
    CHECK_THROWS_AS(blowup(BitGraph(2049), 2), TooLarge);
}

TEST_CASE("blowup multiplies independence numbers and squares edge counts") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const std::uint32_t n = 6 + static_cast<std::uint32_t>(seed % 3);
        const BitGraph g = testutil::random_graph(seed, n, 0.35);
        const std::uint32_t alpha = independence_number(g).alpha;
        for (std::uint32_t r = 2; r <= 3; ++r) {
            const BitGraph big = blowup(g, r);
            CHECK(big.n == n * r);
            CHECK(big.edge_count() == g.edge_count() * r * r);
            CHECK(independence_number(big).alpha == r * alpha);
        }
    }
    CHECK(independence_number(blowup(BitGraph(5), 3)).alpha == 15); // empty stays empty
}

TEST_CASE("a three-coloring of the blown-up five-cycle partitions the pairs") {
    const ColoredGraph c = blowup_multicolor(BitGraph::cycle(5), 1, 3, 99);
    REQUIRE(c.n == 5);
    const auto counts = c.count_by_color();
    CHECK(counts[1] == 5); // the first copy always lands whole
    CHECK(counts[1] + counts[2] + counts[3] == 10);

    // Any independent set avoiding colors 1 and 2 is independent inside the
    // color-1 copy of the cycle, so size 3 is already impossible.
    const CheckReport rep = verify_coloring(c, 3);
    CHECK(rep.all_pass());

    // Seeded construction is reproducible.
    const ColoredGraph again = blowup_multicolor(BitGraph::cycle(5), 1, 3, 99);
    CHECK(c.colors == again.colors);
    CHECK(c.perms == again.perms);

    // Degenerate two-coloring: one blowup copy and its complement.
    const ColoredGraph two = blowup_multicolor(BitGraph::cycle(5), 2, 2, 7);
    const auto tc = two.count_by_color();
    CHECK(tc[1] == 20); // 5 edges times r^2
    CHECK(tc[2] == 25); // the other pairs of K10
    CHECK(verify_coloring(two, 9).all_pass()); // alpha = 2*2 = 4 < 9
}

TEST_CASE("identical permutations starve the second color") {
    const std::vector<std::vector<std::uint32_t>> same(2, identity_perm(5));
    const ColoredGraph c = blowup_multicolor(BitGraph::cycle(5), 1, 3, same);
    const auto counts = c.count_by_color();
    CHECK(counts[1] == 5);
    CHECK(counts[2] == 0); // every pair it wants is already taken
    CHECK(counts[3] == 5);
}

TEST_CASE("malformed permutation sets are rejected") {
    const BitGraph c5 = BitGraph::cycle(5);
    CHECK_THROWS_AS(blowup_multicolor(c5, 1, 3, {identity_perm(5)}), ConditionViolated);
    CHECK_THROWS_AS(blowup_multicolor(c5, 1, 3,
                                      {identity_perm(5), identity_perm(4)}),
                    ConditionViolated);
    std::vector<std::uint32_t> repeat(5, 0);
    CHECK_THROWS_AS(blowup_multicolor(c5, 1, 3, {identity_perm(5), repeat}),
                    ConditionViolated);
    CHECK_THROWS_AS(blowup_multicolor(c5, 1, 1, 4), ConditionViolated);
    CHECK_THROWS_AS(blowup_multicolor(c5, 0, 3, 4), ConditionViolated);
}

TEST_CASE("a planted clique of four is caught and named") {
    const std::vector<std::vector<std::uint32_t>> ids(2, identity_perm(4));
    const ColoredGraph c = blowup_multicolor(BitGraph::complete(4), 1, 3, ids);
    const CheckReport rep = verify_coloring(c, 5);
    CHECK_FALSE(rep.all_pass());
    const CheckResult* chk = find_check(rep, "color 1 is K4-free");
    REQUIRE(chk != nullptr);
    CHECK_FALSE(chk->pass);
    CHECK(chk->detail.find("{0,1,2,3}") != std::string::npos);

    // t above the vertex count is trivially unreachable.
    const CheckResult* triv = find_check(rep, "no independent set");
    REQUIRE(triv != nullptr);
    CHECK(triv->pass);
    CHECK(triv->detail.find("exceeds vertex count") != std::string::npos);
}

TEST_CASE("expected counts are exact rationals") {
    const ExpectedCountReport a = expected_count(4, 2, 1, 2, 3);
    CHECK(a.value == 24); // (C(4,2) * 2^2 / 2!)^2 / C(4,2)
    CHECK_FALSE(a.below_one);

    const ExpectedCountReport b = expected_count(4, 2, 1, 2, 2);
    CHECK(b.value == 12); // the k = 2 exponent on the correction is zero

    const ExpectedCountReport c = expected_count(2, 2, 1, 3, 2);
    CHECK(c.value == cpp_rational(4, 3)); // C(2,2) * 2^3 / 3!

    const ExpectedCountReport tiny = expected_count(10, 1, 1, 8, 4);
    const cpp_int denom = boost::multiprecision::pow(cpp_int(4032), 3) * 2025;
    CHECK(tiny.value == cpp_rational(1, denom)); // (10/8!)^3 / C(10,8)^2
    CHECK(tiny.below_one);

    CHECK(expected_count(3, 5, 1, 2, 3).value == 0); // s > T kills C(T,s)

    CHECK_THROWS_AS(expected_count(4, 2, 1, 2, 1), ConditionViolated);
    CHECK_THROWS_AS(expected_count(2, 2, 1, 3, 3), ConditionViolated); // C(2,3) = 0
}

TEST_CASE("blowup parameter helper matches hand calculations") {
    const BlowupParams a = blowup_params(16, 3);
    CHECK(a.s == 5); // floor(16 / ln 16) = floor(5.77)
    CHECK(a.r == 2); // ceil(256 / ln^5 16) = ceil(1.56)

    const BlowupParams b = blowup_params(100, 3);
    CHECK(b.s == 21); // floor(100 / 4.605)
    CHECK(b.r == 5);  // ceil(10^4 / 4.605^5) = ceil(4.83)

    CHECK(blowup_params(16, 4).r == 1);       // raw value 0.88 floors at 1
    CHECK(blowup_params(16, 3, 10.0).r == 16); // delta scales linearly

    CHECK_THROWS_AS(blowup_params(2, 3), ConditionViolated);
    CHECK_THROWS_AS(blowup_params(16, 2), ConditionViolated);
}

TEST_CASE("scaled chain parameters are frozen") {
    const ChainParams a = scaled_chain_params(2);
    CHECK(a.r == 23);
    CHECK(a.R == 256);
    CHECK(a.t == 31);
    CHECK(a.alpha == doctest::Approx(0.125));

    const ChainParams b = scaled_chain_params(3);
    CHECK(b.r == 53);
    CHECK(b.R == 576);
    CHECK(b.t == 116);

    const ChainParams c = scaled_chain_params(8);
    CHECK(c.r == 267);
    CHECK(c.R == 4096);
    CHECK(c.t == 1107);
    CHECK(c.alpha == doctest::Approx(0.03125));

    CHECK_THROWS_AS(scaled_chain_params(1), ConditionViolated);
}

TEST_CASE("the exact chain steps hold at every desk q") {
    for (const std::uint32_t q : {2u, 3u, 4u, 5u, 8u}) {
        const ChainReport rep = container_chain_report(q);
        INFO("q = ", q, ": ", rep.exact_steps.summary());
        REQUIRE(rep.exact_steps.all_pass());
        REQUIRE(rep.asymptotic_steps.checks.size() == 3);
    }
    CHECK(container_chain_report(2).n == 12);
    CHECK(container_chain_report(3).n == 63);
    CHECK(container_chain_report(8).n == 3648);
}

TEST_CASE("the asymptotic closers genuinely fail at desk scale") {
    // The full-scale chain needs q beyond any desk run; the report says so
    // honestly instead of pretending the bound closes.
    const ChainReport rep = container_chain_report(3);
    for (const auto& chk : rep.asymptotic_steps.checks) CHECK_FALSE(chk.pass);

    // At q = 2 the scaled r exceeds n, so the count side is literally zero
    // and the final comparison holds vacuously.
    const ChainReport edge = container_chain_report(2);
    CHECK_FALSE(edge.asymptotic_steps.checks[0].pass);
    CHECK_FALSE(edge.asymptotic_steps.checks[1].pass);
    CHECK(edge.asymptotic_steps.checks[2].pass);
}

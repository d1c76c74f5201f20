#include "ramsey/onan.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct SearchIndex {
    std::uint32_t n = 0;                                // points
    const std::vector<std::vector<std::uint32_t>>* lines = nullptr;
    std::vector<std::vector<std::uint32_t>> pencil;     // point -> sorted line ids
    std::vector<std::uint32_t> pair_line;               // n*n, kNone where uncovered

    std::uint32_t line_of(std::uint32_t a, std::uint32_t b) const {
        return pair_line[static_cast<std::size_t>(a) * n + b];
    }
};

SearchIndex build_index(const LineSystem& ls) {
    SearchIndex ix;
    ix.n = ls.n_points;
    ix.lines = &ls.lines;
    ix.pencil.resize(ix.n);
    ix.pair_line.assign(static_cast<std::size_t>(ix.n) * ix.n, kNone);
    for (std::uint32_t l = 0; l < ls.lines.size(); ++l) {
        const auto& pts = ls.lines[l];
        if (!std::is_sorted(pts.begin(), pts.end()) ||
            std::adjacent_find(pts.begin(), pts.end()) != pts.end())
            throw InvariantViolation("line " + std::to_string(l) + " is not sorted-distinct");
        for (std::uint32_t p : pts) {
            if (p >= ix.n)
                throw InvariantViolation("line " + std::to_string(l) + " names point " +
                                         std::to_string(p) + " out of range");
            ix.pencil[p].push_back(l); // sorted: l ascends
        }
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = a + 1; b < pts.size(); ++b) {
                auto& slot1 = ix.pair_line[static_cast<std::size_t>(pts[a]) * ix.n + pts[b]];
                auto& slot2 = ix.pair_line[static_cast<std::size_t>(pts[b]) * ix.n + pts[a]];
                if (slot1 == kNone) slot1 = slot2 = l; // first wins on malformed input
            }
    }
    return ix;
}

// Unique common point of two sorted lines; kNone when empty or when they
// share more than one point (degenerate input -- not a proper meet).
std::uint32_t meet(const std::vector<std::uint32_t>& A, const std::vector<std::uint32_t>& B) {
    std::uint32_t found = kNone;
    std::size_t i = 0, j = 0;
    while (i < A.size() && j < B.size()) {
        if (A[i] < B[j]) ++i;
        else if (A[i] > B[j]) ++j;
        else {
            if (found != kNone) return kNone;
            found = A[i];
            ++i, ++j;
        }
    }
    return found;
}

// Recompute a candidate quadruple's six meets in canonical order and emit it
// if all exist and are distinct. Runs only on closure hits, so the O(line)
// meets are cheap.
void emit(const SearchIndex& ix, std::array<std::uint32_t, 4> ls,
          std::vector<OnanWitness>& out) {
    std::sort(ls.begin(), ls.end());
    OnanWitness w;
    w.lines = ls;
    int k = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const std::uint32_t p = meet((*ix.lines)[ls[i]], (*ix.lines)[ls[j]]);
            if (p == kNone) return;
            w.points[k++] = p;
        }
    auto sorted = w.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return;
    out.push_back(w);
}

// Try every closing fourth line of the triple (l1, l2, l3) with meets
// P12, P13, P23: l4 joins a point a of l1 and b of l2 (both off the shared
// points) and must cross l3 in a sixth fresh point.
void close_triple(const SearchIndex& ix, std::uint32_t l1, std::uint32_t l2, std::uint32_t l3,
                  std::uint32_t p12, std::uint32_t p13, std::uint32_t p23,
                  std::vector<OnanWitness>& out) {
    const auto& L1 = (*ix.lines)[l1];
    const auto& L2 = (*ix.lines)[l2];
    const auto& L3 = (*ix.lines)[l3];
    for (std::uint32_t a : L1) {
        if (a == p12 || a == p13) continue;
        for (std::uint32_t b : L2) {
            if (b == p12 || b == p23) continue;
            const std::uint32_t l4 = ix.line_of(a, b);
            if (l4 == kNone || l4 == l1 || l4 == l2 || l4 == l3) continue;
            const std::uint32_t c = meet((*ix.lines)[l4], L3);
            if (c == kNone || c == p13 || c == p23) continue;
            emit(ix, {l1, l2, l3, l4}, out);
        }
    }
}

// Visit every candidate triple anchored at l1: pairs (l1 < l2) meeting at
// p12 (a point of l1), third lines l3 > l2 through some other point of l1.
// Returns false when the triple budget ran out mid-scan.
bool scan_anchor(const SearchIndex& ix, std::uint32_t l1, std::uint64_t budget,
                 std::uint64_t& triples, std::vector<OnanWitness>& out) {
    const auto& L1 = (*ix.lines)[l1];
    for (std::uint32_t p12 : L1) {
        for (std::uint32_t l2 : ix.pencil[p12]) {
            if (l2 <= l1) continue;
            for (std::uint32_t p13 : L1) {
                if (p13 == p12) continue;
                for (std::uint32_t l3 : ix.pencil[p13]) {
                    if (l3 <= l2) continue;
                    if (triples == budget) return false;
                    ++triples;
                    const std::uint32_t p23 = meet((*ix.lines)[l2], (*ix.lines)[l3]);
                    if (p23 == kNone || p23 == p12 || p23 == p13) continue;
                    close_triple(ix, l1, l2, l3, p12, p13, p23, out);
                }
            }
        }
    }
    return true;
}

void finalize(OnanSearchResult& r) {
    std::sort(r.witnesses.begin(), r.witnesses.end());
    r.witnesses.erase(std::unique(r.witnesses.begin(), r.witnesses.end()), r.witnesses.end());
}

} // namespace

LineSystem line_system_of(const Unital& u) {
    LineSystem ls;
    ls.n_points = static_cast<std::uint32_t>(u.point_ids.size());
    ls.lines.resize(u.secants.size());
    for (std::uint32_t i = 0; i < u.secants.size(); ++i) {
        const auto row = u.secant_row(i);
        ls.lines[i].assign(row.begin(), row.end());
    }
    return ls;
}

OnanSearchResult find_onan_configurations(const LineSystem& ls, OnanMode mode,
                                          std::uint64_t budget, ExecPolicy policy) {
    if (mode == OnanMode::Exhaustive) {
        namespace mp = boost::multiprecision;
        const mp::cpp_int L = ls.lines.size();
        const mp::cpp_int quads = L * (L - 1) * (L - 2) * (L - 3) / 24;
        if (quads > budget)
            throw BudgetExceeded("exhaustive mode needs C(lines,4) = " + quads.str() +
                                 " <= budget " + std::to_string(budget));
    }
    const SearchIndex ix = build_index(ls);
    const auto nl = static_cast<std::uint32_t>(ls.lines.size());
    OnanSearchResult r;

    if (mode == OnanMode::Exhaustive && policy == ExecPolicy::Parallel) {
        // Complete search: anchors are independent, so the triple total and
        // the sorted witness set are schedule independent.
        std::uint64_t triples = 0;
#pragma omp parallel
        {
            std::uint64_t my_triples = 0;
            std::vector<OnanWitness> mine;
#pragma omp for schedule(dynamic, 16) nowait
            for (std::int64_t l1 = 0; l1 < static_cast<std::int64_t>(nl); ++l1)
                scan_anchor(ix, static_cast<std::uint32_t>(l1),
                            std::numeric_limits<std::uint64_t>::max(), my_triples, mine);
#pragma omp critical
            {
                triples += my_triples;
                r.witnesses.insert(r.witnesses.end(), mine.begin(), mine.end());
            }
        }
        r.triples_examined = triples;
    } else {
        const std::uint64_t cap =
            mode == OnanMode::Pruned ? budget : std::numeric_limits<std::uint64_t>::max();
        for (std::uint32_t l1 = 0; l1 < nl; ++l1) {
            if (!scan_anchor(ix, l1, cap, r.triples_examined, r.witnesses)) {
                r.complete = false;
                break;
            }
        }
    }
    finalize(r);
    return r;
}

} // namespace ramsey

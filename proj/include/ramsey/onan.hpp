#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "ramsey/exec.hpp"
#include "ramsey/unital.hpp"

namespace ramsey {

// Point-line incidence system on points 0..n_points-1; each line is a sorted
// point list (sizes may vary). The O'Nan search runs on this shape so that
// synthetic Steiner triple systems can exercise it alongside unitals.
struct LineSystem {
    std::uint32_t n_points = 0;
    std::vector<std::vector<std::uint32_t>> lines;
};

LineSystem line_system_of(const Unital& u);

// Four lines meeting pairwise in six distinct points (so each line carries
// exactly three of the six, and each point sits on exactly two of the four).
// lines is sorted ascending; points[k] for the k-th pair (i,j) in
// lexicographic order holds the meet of lines[i] and lines[j]:
//   points = [P01, P02, P03, P12, P13, P23].
struct OnanWitness {
    std::array<std::uint32_t, 4> lines{};
    std::array<std::uint32_t, 6> points{};
    friend bool operator==(const OnanWitness&, const OnanWitness&) = default;
    friend auto operator<=>(const OnanWitness&, const OnanWitness&) = default;
};

enum class OnanMode { Exhaustive, Pruned };

struct OnanSearchResult {
    std::vector<OnanWitness> witnesses; // sorted, deduplicated
    std::uint64_t triples_examined = 0; // candidate third lines visited
    bool complete = true;               // false iff the budget cut the frontier
};

// Search for the four-line pattern, triple-first: enumerate meeting line
// pairs (l1 < l2), extend to triples (l3 > l2) whose pairwise meets are
// three distinct points, then close each triple over the remaining point
// pairs of l1 x l2 via the unique-line lookup. Every witness is found from
// each of its four sub-triples and deduplicated afterwards.
//
// The budget means different things per mode. Exhaustive demands
// C(#lines, 4) <= budget up front (BudgetExceeded otherwise) and always runs
// to completion. Pruned visits candidate triples in ascending
// (l1, point-of-l1, l3) order and stops after `budget` of them, a
// deterministic prefix of the full search; it ignores `policy` and runs
// serially, because a parallel cut of the frontier would not be reproducible.
OnanSearchResult find_onan_configurations(const LineSystem& ls, OnanMode mode,
                                          std::uint64_t budget,
                                          ExecPolicy policy = ExecPolicy::Serial);

inline OnanSearchResult find_onan_configurations(const Unital& u, OnanMode mode,
                                                 std::uint64_t budget,
                                                 ExecPolicy policy = ExecPolicy::Serial) {
    return find_onan_configurations(line_system_of(u), mode, budget, policy);
}

} // namespace ramsey

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ramsey/projective_plane.hpp"
#include "ramsey/report.hpp"

namespace ramsey {

// Hermitian unital in PG(2, q^2): the q^3 + 1 absolute points of the form
// sigma(x, x) = x1^{q+1} + x2^{q+1} + x3^{q+1}, together with the
// tangent/secant classification of every line of the plane.
//
// Id spaces: point_ids, tangents and secants hold plane ids. Everything else
// speaks "unital point ids" (indices into point_ids) and "secant ids"
// (indices into secants) -- the compact handles the graph layer builds on.
struct Unital {
    std::uint64_t q = 0; // base order; the ambient field is GF(q^2)

    std::vector<Pid> point_ids; // sorted plane point ids with sigma(x,x) = 0
    std::vector<Pid> tangents;  // plane line ids meeting the point set once
    std::vector<Pid> secants;   // plane line ids meeting it in q+1 points

    // Flat rows of stride q+1: row i lists the unital point ids on
    // secants[i], sorted ascending.
    std::vector<std::uint32_t> secant_points;
    // Per tangent, the unital point id of its point of tangency.
    std::vector<std::uint32_t> tangent_point;

    std::uint32_t stride() const { return static_cast<std::uint32_t>(q + 1); }
    std::span<const std::uint32_t> secant_row(std::uint32_t s) const {
        return {secant_points.data() + static_cast<std::size_t>(s) * stride(), stride()};
    }
};

// Enumerate the absolute points and classify every line. Throws
// InvariantViolation if any count disagrees with the q^3+1 / q^2(q^2-q+1)
// formulas, or if some line meets the point set in anything but 1 or q+1
// points -- such a mismatch means the field or plane underneath is broken,
// and nothing downstream may run on it.
Unital build_unital(const Field& F, const Plane& pl);

// Design-level audit. Unlike build_unital this never throws: it reports, so
// deliberately corrupted fixtures can be examined. Checks the counts, that
// every pair of unital points lies on exactly one secant, that every point
// carries q^2 secants and exactly 1 tangent, and that the secant rows are
// well formed. Each failing check names its first counterexample.
CheckReport verify_design(const Unital& u);

} // namespace ramsey

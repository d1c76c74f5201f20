#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ramsey/exec.hpp"
#include "ramsey/finite_field.hpp"

namespace ramsey {

// Point or line id in PG(2, q^2). Points and lines share one id scheme
// (the plane is self-dual): the id encodes the canonical homogeneous triple
// whose leftmost nonzero coordinate is 1, enumerated in shape-class order
//   (0,0,1)  ->  id 0
//   (0,1,z)  ->  id 1 + z
//   (1,y,z)  ->  id 1 + q2 + y*q2 + z
// which is exactly lexicographic order on (x,y,z). Ids are the stable
// handles everything downstream (unitals, graphs, certificates) refers to.
using Pid = std::uint32_t;

class Plane {
public:
    Field F;
    Pid n = 0; // q^4 + q^2 + 1 points; the same number of lines

    // Incidence lists: for line L, the sorted ids of its q^2+1 points,
    // stored flat at stride q^2+1. Kept materialized: secant classification
    // and graph construction are incidence-scan bound.
    std::vector<Pid> line_pts;
    std::uint32_t stride = 0; // q^2 + 1

    std::span<const Pid> points_of_line(Pid line) const {
        return {line_pts.data() + static_cast<std::size_t>(line) * stride, stride};
    }

    std::array<Fe, 3> coords(Pid id) const;

    // Canonicalize an arbitrary nonzero triple and return its id.
    Pid id_of(Fe x, Fe y, Fe z) const;

    bool incident(Pid point, Pid line) const;

    // The unique line through two distinct points (cross product), and the
    // unique meet point of two distinct lines (dual). Throws
    // InvariantViolation when the arguments coincide.
    Pid line_through(Pid p1, Pid p2) const;
    Pid meet(Pid l1, Pid l2) const;

    // All q^2+1 lines through a point, sorted (dual of points_of_line,
    // computed on demand).
    std::vector<Pid> lines_through(Pid point) const;
};

// Enumerate the canonical points in id order (mostly useful for dumps and
// tests; coords(id) is the O(1) equivalent).
std::vector<std::array<Fe, 3>> enumerate_points(const Field& F);

// Build the plane: validates q^4+q^2+1 fits an id, fills every line's
// incidence list. The parallel policy splits over lines; each line's block
// is written independently, so output is bit-identical to serial.
Plane make_plane(const Field& F, ExecPolicy policy = ExecPolicy::Serial);

// sigma(a,b) = a1*b1^q + a2*b2^q + a3*b3^q, the Hermitian sesquilinear form
// on representative triples. sigma(b,a) = sigma(a,b)^q; sigma(a,a) lies in
// GF(q), and sigma(a,a)=0 is invariant under rescaling a.
Fe hermitian_form(const Field& F, const std::array<Fe, 3>& a, const std::array<Fe, 3>& b);

} // namespace ramsey

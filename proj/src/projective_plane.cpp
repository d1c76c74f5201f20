#include "ramsey/projective_plane.hpp"

#include <algorithm>
#include <cassert>

#include "ramsey/errors.hpp"

namespace ramsey {

std::array<Fe, 3> Plane::coords(Pid id) const {
    const auto q2 = static_cast<Pid>(F.q2);
    if (id == 0) return {0, 0, 1};
    if (id <= q2) return {0, 1, static_cast<Fe>(id - 1)};
    const Pid rest = id - 1 - q2;
    return {1, static_cast<Fe>(rest / q2), static_cast<Fe>(rest % q2)};
}

Pid Plane::id_of(Fe x, Fe y, Fe z) const {
    const auto q2 = static_cast<Pid>(F.q2);
    if (x != 0) {
        const Fe s = F.inv(x);
        return 1 + q2 + static_cast<Pid>(F.mul(y, s)) * q2 + static_cast<Pid>(F.mul(z, s));
    }
    if (y != 0) return 1 + static_cast<Pid>(F.mul(z, F.inv(y)));
    if (z != 0) return 0;
    throw InvariantViolation("zero triple has no projective class");
}

bool Plane::incident(Pid point, Pid line) const {
    const auto p = coords(point), l = coords(line);
    const Fe dot = F.add(F.add(F.mul(p[0], l[0]), F.mul(p[1], l[1])), F.mul(p[2], l[2]));
    return dot == 0;
}

namespace {

// Cross product over the field: simultaneously "line through two points"
// and "meet of two lines" by duality.
std::array<Fe, 3> cross(const Field& F, const std::array<Fe, 3>& u, const std::array<Fe, 3>& v) {
    return {
        F.sub(F.mul(u[1], v[2]), F.mul(u[2], v[1])),
        F.sub(F.mul(u[2], v[0]), F.mul(u[0], v[2])),
        F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])),
    };
}

// The q^2+1 points of the line with dual coordinates (a,b,c): kernel of one
// linear form, parametrized by a basis of the 2-dimensional solution space.
// Appended unsorted; the caller sorts.
void solve_line(const Plane& pl, const std::array<Fe, 3>& l, Pid* out) {
    const Field& F = pl.F;
    const auto q2 = static_cast<Fe>(F.q2);
    std::size_t k = 0;
    const Fe a = l[0], b = l[1], c = l[2];
    if (a != 0) {
        const Fe ia = F.inv(a);
        // x = -(b*y + c*z)/a; projective (y:z) of shapes (1,0) and (t,1).
        out[k++] = pl.id_of(F.neg(F.mul(b, ia)), 1, 0);
        for (Fe t = 0; t < q2; ++t)
            out[k++] = pl.id_of(F.neg(F.mul(F.add(F.mul(b, t), c), ia)), t, 1);
    } else if (b != 0) {
        const Fe ib = F.inv(b);
        // y = -c*z/b; projective (x:z) of shapes (1,0) and (t,1).
        out[k++] = pl.id_of(1, 0, 0);
        for (Fe t = 0; t < q2; ++t)
            out[k++] = pl.id_of(t, F.neg(F.mul(c, ib)), 1);
    } else {
        // z = 0; projective (x:y) of shapes (0,1) and (1,t).
        out[k++] = pl.id_of(0, 1, 0);
        for (Fe t = 0; t < q2; ++t)
            out[k++] = pl.id_of(1, t, 0);
    }
    assert(k == F.q2 + 1);
}

} // namespace

Pid Plane::line_through(Pid p1, Pid p2) const {
    const auto c = cross(F, coords(p1), coords(p2));
    if (c[0] == 0 && c[1] == 0 && c[2] == 0)
        throw InvariantViolation("line_through requires two distinct points");
    return id_of(c[0], c[1], c[2]);
}

Pid Plane::meet(Pid l1, Pid l2) const {
    const auto c = cross(F, coords(l1), coords(l2));
    if (c[0] == 0 && c[1] == 0 && c[2] == 0)
        throw InvariantViolation("meet requires two distinct lines");
    return id_of(c[0], c[1], c[2]);
}

std::vector<Pid> Plane::lines_through(Pid point) const {
    // Lines [a:b:c] through (x,y,z) solve the same linear equation as
    // points on the line [x:y:z]; reuse the solver on the dual side.
    std::vector<Pid> out(stride);
    solve_line(*this, coords(point), out.data());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::array<Fe, 3>> enumerate_points(const Field& F) {
    const auto q2 = static_cast<Fe>(F.q2);
    std::vector<std::array<Fe, 3>> pts;
    pts.reserve(static_cast<std::size_t>(F.q2) * F.q2 + F.q2 + 1);
    pts.push_back({0, 0, 1});
    for (Fe z = 0; z < q2; ++z) pts.push_back({0, 1, z});
    for (Fe y = 0; y < q2; ++y)
        for (Fe z = 0; z < q2; ++z) pts.push_back({1, y, z});
    return pts;
}

Plane make_plane(const Field& F, ExecPolicy policy) {
    const std::uint64_t n64 = F.q2 * F.q2 + F.q2 + 1;
    if (n64 > 0xffffffffULL)
        throw CapExceeded("plane has " + std::to_string(n64) + " points; ids are 32-bit");

    Plane pl;
    pl.F = F;
    pl.n = static_cast<Pid>(n64);
    pl.stride = static_cast<std::uint32_t>(F.q2 + 1);
    pl.line_pts.resize(static_cast<std::size_t>(pl.n) * pl.stride);

    const auto fill = [&](Pid line) {
        Pid* block = pl.line_pts.data() + static_cast<std::size_t>(line) * pl.stride;
        solve_line(pl, pl.coords(line), block);
        std::sort(block, block + pl.stride);
    };

    if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::int64_t line = 0; line < static_cast<std::int64_t>(pl.n); ++line)
            fill(static_cast<Pid>(line));
    } else {
        for (Pid line = 0; line < pl.n; ++line) fill(line);
    }
    return pl;
}

Fe hermitian_form(const Field& F, const std::array<Fe, 3>& a, const std::array<Fe, 3>& b) {
    return F.add(F.add(F.mul(a[0], F.frobenius_q(b[0])), F.mul(a[1], F.frobenius_q(b[1]))),
                 F.mul(a[2], F.frobenius_q(b[2])));
}

} // namespace ramsey

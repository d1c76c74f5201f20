#include "ramsey/unital.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "ramsey/errors.hpp"

namespace ramsey {

namespace {
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
}

Unital build_unital(const Field& F, const Plane& pl) {
    const std::uint64_t q = F.q;
    Unital u;
    u.q = q;

    // Absolute points. The predicate is representative independent
    // (sigma(la, la) = norm(l) * sigma(a, a)), so testing the canonical
    // coordinates of each id is enough.
    std::vector<std::uint32_t> upt(pl.n, kNone); // plane point id -> unital point id
    for (Pid id = 0; id < pl.n; ++id) {
        const auto c = pl.coords(id);
        if (hermitian_form(F, c, c) == 0) {
            upt[id] = static_cast<std::uint32_t>(u.point_ids.size());
            u.point_ids.push_back(id);
        }
    }
    const std::uint64_t np_expect = q * q * q + 1;
    if (u.point_ids.size() != np_expect)
        throw InvariantViolation("unital point count " + std::to_string(u.point_ids.size()) +
                                 " != q^3+1 = " + std::to_string(np_expect));

    // Classify every line by how many absolute points it carries. Rows come
    // out sorted because line points are sorted by plane id and upt is
    // increasing along plane ids.
    const std::uint32_t s = u.stride();
    std::vector<std::uint32_t> row;
    row.reserve(s);
    for (Pid l = 0; l < pl.n; ++l) {
        row.clear();
        for (Pid p : pl.points_of_line(l))
            if (upt[p] != kNone) row.push_back(upt[p]);
        if (row.size() == 1) {
            u.tangents.push_back(l);
            u.tangent_point.push_back(row[0]);
        } else if (row.size() == s) {
            u.secants.push_back(l);
            u.secant_points.insert(u.secant_points.end(), row.begin(), row.end());
        } else {
            throw InvariantViolation("line " + std::to_string(l) + " meets the unital in " +
                                     std::to_string(row.size()) + " points (want 1 or q+1)");
        }
    }

    const std::uint64_t ns_expect = q * q * (q * q - q + 1);
    if (u.tangents.size() != np_expect)
        throw InvariantViolation("tangent count " + std::to_string(u.tangents.size()) +
                                 " != q^3+1 = " + std::to_string(np_expect));
    if (u.secants.size() != ns_expect)
        throw InvariantViolation("secant count " + std::to_string(u.secants.size()) +
                                 " != q^2(q^2-q+1) = " + std::to_string(ns_expect));
    return u;
}

CheckReport verify_design(const Unital& u) {
    CheckReport rep;
    const std::uint64_t q = u.q;
    const std::uint64_t np = u.point_ids.size();
    const std::uint64_t ns = u.secants.size();
    const std::uint32_t s = u.stride();

    const std::uint64_t np_expect = q * q * q + 1;
    const std::uint64_t ns_expect = q * q * (q * q - q + 1);
    const std::uint64_t lines_expect = q * q * q * q + q * q + 1;
    rep.add("point count q^3+1", np == np_expect,
            std::to_string(np) + " vs " + std::to_string(np_expect));
    rep.add("tangent count q^3+1", u.tangents.size() == np_expect,
            std::to_string(u.tangents.size()) + " vs " + std::to_string(np_expect));
    rep.add("secant count q^2(q^2-q+1)", ns == ns_expect,
            std::to_string(ns) + " vs " + std::to_string(ns_expect));
    rep.add("tangents + secants = q^4+q^2+1",
            u.tangents.size() + ns == lines_expect,
            std::to_string(u.tangents.size() + ns) + " vs " + std::to_string(lines_expect));

    // Row shape: right length, entries sorted, distinct and in range.
    bool rows_ok = u.secant_points.size() == ns * s && u.tangent_point.size() == u.tangents.size();
    std::string rows_detail = rows_ok ? "" : "flat array sizes disagree with line counts";
    for (std::uint32_t i = 0; rows_ok && i < ns; ++i) {
        const auto r = u.secant_row(i);
        for (std::uint32_t j = 0; j < s; ++j) {
            if (r[j] >= np || (j > 0 && r[j] <= r[j - 1])) {
                rows_ok = false;
                rows_detail = "secant " + std::to_string(i) + " row malformed";
                break;
            }
        }
    }
    for (std::size_t i = 0; rows_ok && i < u.tangent_point.size(); ++i) {
        if (u.tangent_point[i] >= np) {
            rows_ok = false;
            rows_detail = "tangent " + std::to_string(i) + " names point out of range";
        }
    }
    rep.add("incidence rows well formed", rows_ok, rows_detail);
    if (!rows_ok) return rep; // nothing below is meaningful on malformed rows

    // Pair coverage: every unordered pair of unital points on exactly one
    // secant. Multiplicity per ordered slot, saturating.
    std::vector<std::uint8_t> cover(np * np, 0);
    for (std::uint32_t i = 0; i < ns; ++i) {
        const auto r = u.secant_row(i);
        for (std::uint32_t a = 0; a < s; ++a)
            for (std::uint32_t b = a + 1; b < s; ++b) {
                auto& c = cover[static_cast<std::size_t>(r[a]) * np + r[b]];
                if (c < 255) ++c;
            }
    }
    bool pairs_ok = true;
    std::string pair_detail;
    for (std::uint64_t a = 0; pairs_ok && a < np; ++a)
        for (std::uint64_t b = a + 1; b < np; ++b) {
            const std::uint8_t c = cover[a * np + b];
            if (c != 1) {
                pairs_ok = false;
                pair_detail = "pair {" + std::to_string(a) + "," + std::to_string(b) +
                              "} on " + std::to_string(c) + " secants";
                break;
            }
        }
    rep.add("every point pair on exactly one secant", pairs_ok, pair_detail);

    // Degrees: q^2 secants and exactly one tangent through every point.
    std::vector<std::uint32_t> sec_deg(np, 0), tan_deg(np, 0);
    for (std::uint32_t i = 0; i < ns; ++i)
        for (std::uint32_t p : u.secant_row(i)) ++sec_deg[p];
    for (std::uint32_t p : u.tangent_point) ++tan_deg[p];
    bool deg_ok = true;
    std::string deg_detail;
    for (std::uint64_t p = 0; p < np; ++p) {
        if (sec_deg[p] != q * q || tan_deg[p] != 1) {
            deg_ok = false;
            deg_detail = "point " + std::to_string(p) + ": " + std::to_string(sec_deg[p]) +
                         " secants, " + std::to_string(tan_deg[p]) + " tangents";
            break;
        }
    }
    rep.add("q^2 secants and 1 tangent per point", deg_ok, deg_detail);
    return rep;
}

} // namespace ramsey

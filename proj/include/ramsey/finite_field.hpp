#pragma once

#include <cstdint>
#include <vector>

#include "ramsey/errors.hpp"

namespace ramsey {

// A field element is its packed index: the polynomial c0 + c1*x + ... over
// GF(p) packed little-endian base p, so index 0 is the zero element, 1 is
// the multiplicative identity, and p is x itself. Ascending index is the
// canonical element order everywhere a smallest representative is needed.
using Fe = std::uint32_t;

// GF(q^2) for a prime power q = p^a, realized as GF(p)[x] / (f) with f the
// lexicographically least monic irreducible of degree 2a (coefficients
// compared from the constant term upward). Fixing f this way makes every
// derived object -- points, lines, graphs, certificates -- reproducible
// across runs and machines.
class Field {
public:
    std::uint64_t p = 0;  // characteristic
    std::uint32_t a = 0;  // q = p^a
    std::uint32_t deg = 0; // 2a = [GF(q^2) : GF(p)]
    std::uint64_t q = 0;
    std::uint64_t q2 = 0; // q^2, number of elements
    std::vector<std::uint32_t> modulus; // little-endian, length deg+1, monic

    Fe add(Fe x, Fe y) const;
    Fe sub(Fe x, Fe y) const;
    Fe neg(Fe x) const;
    Fe mul(Fe x, Fe y) const;
    Fe inv(Fe x) const; // throws DivisionByZero on x == 0
    Fe pow(Fe x, std::uint64_t e) const;

    // x -> x^q, the involutory automorphism fixing exactly GF(q).
    Fe frobenius_q(Fe x) const;

    // x -> x^{q+1} = x * x^q; lands in the base subfield GF(q).
    Fe hermitian_norm(Fe x) const;

    bool in_base_field(Fe x) const { return frobenius_q(x) == x; }

    bool has_tables() const { return !mul_tab_.empty(); }

private:
    friend Field make_field(std::uint64_t p, std::uint32_t a, std::uint64_t cap);

    Fe mul_poly(Fe x, Fe y) const;
    Fe add_poly(Fe x, Fe y) const;
    void build_tables();

    // Flat q2 x q2 lookup tables, built only when q2 <= kTableCap; larger
    // fields fall back to on-the-fly polynomial arithmetic.
    std::vector<Fe> mul_tab_, add_tab_;
    std::vector<Fe> inv_tab_, frob_tab_, norm_tab_, neg_tab_;
};

// Largest q2 for which full multiplication/addition tables are cached.
// 4096^2 entries x 4 bytes = 64 MiB per table; beyond that the quadratic
// tables stop paying for themselves and ops run on unpacked digits.
inline constexpr std::uint64_t kTableCap = 4096;

// Hard ceiling on the field size a build will attempt (element indices must
// fit in 32 bits, and anything near this is far outside desk scale anyway).
inline constexpr std::uint64_t kFieldCap = 1ULL << 32;

// Build GF(q^2) for q = p^a. Throws NotPrime unless p is prime,
// InvariantViolation when a = 0, and CapExceeded when p^{2a} > cap.
Field make_field(std::uint64_t p, std::uint32_t a, std::uint64_t cap = kFieldCap);

// Factor a prime power: q = p^a. Throws NotPrime when q is not one.
struct PrimePower {
    std::uint64_t p;
    std::uint32_t a;
};
PrimePower factor_prime_power(std::uint64_t q);

// Convenience: make_field for q given as a prime power.
inline Field make_field_q(std::uint64_t q, std::uint64_t cap = kFieldCap) {
    const PrimePower pp = factor_prime_power(q);
    return make_field(pp.p, pp.a, cap);
}

} // namespace ramsey

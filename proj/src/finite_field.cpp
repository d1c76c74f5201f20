#include "ramsey/finite_field.hpp"

#include <algorithm>
#include <cassert>

namespace ramsey {

namespace {

// Little-endian coefficient vectors over GF(p). These helpers only run on
// the slow path (no tables) and during construction, so clarity wins.
using Digits = std::vector<std::uint32_t>;

Digits unpack(std::uint64_t idx, std::uint64_t p, std::uint32_t len) {
    Digits d(len, 0);
    for (std::uint32_t i = 0; i < len && idx; ++i) {
        d[i] = static_cast<std::uint32_t>(idx % p);
        idx /= p;
    }
    return d;
}

std::uint64_t pack(const Digits& d, std::uint64_t p) {
    std::uint64_t idx = 0;
    for (std::size_t i = d.size(); i-- > 0;) idx = idx * p + d[i];
    return idx;
}

int degree_of(const Digits& d) {
    for (std::size_t i = d.size(); i-- > 0;)
        if (d[i]) return static_cast<int>(i);
    return -1;
}

std::uint64_t inv_mod_p(std::uint64_t x, std::uint64_t p) {
    // Extended Euclid on integers; p prime, 0 < x < p.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(x);
    while (new_r != 0) {
        const std::int64_t quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

// rem <- rem mod div, where div need not be monic. Digit arithmetic mod p.
void poly_mod_inplace(Digits& rem, const Digits& div, std::uint64_t p) {
    const int dd = degree_of(div);
    assert(dd >= 0);
    const std::uint64_t lead_inv = inv_mod_p(div[static_cast<std::size_t>(dd)], p);
    for (int i = degree_of(rem); i >= dd; i = degree_of(rem)) {
        const std::uint64_t c = rem[static_cast<std::size_t>(i)] * lead_inv % p;
        const int shift = i - dd;
        for (int j = 0; j <= dd; ++j) {
            std::uint32_t& slot = rem[static_cast<std::size_t>(shift + j)];
            slot = static_cast<std::uint32_t>((slot + p * c - c * div[static_cast<std::size_t>(j)] % p) % p);
        }
    }
}

bool divides(const Digits& div, Digits f, std::uint64_t p) {
    poly_mod_inplace(f, div, p);
    return degree_of(f) < 0;
}

std::uint64_t eval_poly(const Digits& f, std::uint64_t x, std::uint64_t p) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    return acc;
}

bool is_irreducible(const Digits& f, std::uint64_t p) {
    const int d = degree_of(f);
    if (d < 1) return false;
    if (d == 1) return true;
    // Linear factors first, by scanning for roots: O(p * deg) instead of
    // dividing by all p monic linear polynomials.
    for (std::uint64_t x = 0; x < p; ++x)
        if (eval_poly(f, x, p) == 0) return false;
    // Then trial division by every monic polynomial of degree 2..d/2.
    for (int t = 2; 2 * t <= d; ++t) {
        Digits div(static_cast<std::size_t>(t) + 1, 0);
        div[static_cast<std::size_t>(t)] = 1;
        std::uint64_t count = 1;
        for (int i = 0; i < t; ++i) count *= p;
        for (std::uint64_t m = 0; m < count; ++m) {
            std::uint64_t rest = m;
            for (int i = 0; i < t; ++i) {
                div[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rest % p);
                rest /= p;
            }
            if (div[0] == 0) continue; // has factor x; f already root-free
            if (divides(div, f, p)) return false;
        }
    }
    return true;
}

// Least monic irreducible of degree d over GF(p), under coefficient order
// (c0, c1, ..., c_{d-1}) compared from the constant term up. The constant
// term can start at 1: c0 = 0 means a root at 0.
Digits least_irreducible(std::uint64_t p, std::uint32_t d) {
    Digits f(d + 1, 0);
    f[d] = 1;
    f[0] = 1;
    for (;;) {
        if (is_irreducible(f, p)) return f;
        // Successor in low-first lex: bump the highest non-leading slot,
        // carrying downward toward the constant term.
        std::size_t i = d;
        while (i-- > 0) {
            if (++f[i] < p) break;
            f[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1) || (i == 0 && f[0] == 0)) {
            // Wrapped around; cannot happen (irreducibles of every degree
            // exist), but fail loudly rather than spin.
            throw InvariantViolation("no irreducible polynomial found");
        }
    }
}

} // namespace

Fe Field::add_poly(Fe x, Fe y) const {
    const Digits a_ = unpack(x, p, deg), b_ = unpack(y, p, deg);
    Digits c(deg);
    for (std::uint32_t i = 0; i < deg; ++i)
        c[i] = static_cast<std::uint32_t>((a_[i] + b_[i]) % p);
    return static_cast<Fe>(pack(c, p));
}

Fe Field::mul_poly(Fe x, Fe y) const {
    const Digits a_ = unpack(x, p, deg), b_ = unpack(y, p, deg);
    Digits c(2 * static_cast<std::size_t>(deg) - 1, 0);
    for (std::uint32_t i = 0; i < deg; ++i) {
        if (!a_[i]) continue;
        for (std::uint32_t j = 0; j < deg; ++j)
            c[i + j] = static_cast<std::uint32_t>((c[i + j] + static_cast<std::uint64_t>(a_[i]) * b_[j]) % p);
    }
    // Reduce by the monic modulus from the top down.
    for (std::size_t i = c.size(); i-- > deg;) {
        const std::uint64_t coef = c[i];
        if (!coef) continue;
        c[i] = 0;
        for (std::uint32_t j = 0; j < deg; ++j) {
            std::uint32_t& slot = c[i - deg + j];
            slot = static_cast<std::uint32_t>((slot + p * coef - coef * modulus[j] % p) % p);
        }
    }
    c.resize(deg);
    return static_cast<Fe>(pack(c, p));
}

Fe Field::add(Fe x, Fe y) const {
    assert(x < q2 && y < q2);
    if (!add_tab_.empty()) return add_tab_[static_cast<std::size_t>(x) * q2 + y];
    return add_poly(x, y);
}

Fe Field::neg(Fe x) const {
    assert(x < q2);
    if (!neg_tab_.empty()) return neg_tab_[x];
    Digits d = unpack(x, p, deg);
    for (auto& c : d) c = static_cast<std::uint32_t>((p - c) % p);
    return static_cast<Fe>(pack(d, p));
}

Fe Field::sub(Fe x, Fe y) const { return add(x, neg(y)); }

Fe Field::mul(Fe x, Fe y) const {
    assert(x < q2 && y < q2);
    if (!mul_tab_.empty()) return mul_tab_[static_cast<std::size_t>(x) * q2 + y];
    return mul_poly(x, y);
}

Fe Field::pow(Fe x, std::uint64_t e) const {
    Fe acc = 1, base = x;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

Fe Field::inv(Fe x) const {
    if (x == 0) throw DivisionByZero();
    if (!inv_tab_.empty()) return inv_tab_[x];
    return pow(x, q2 - 2); // x^{q^2-1} = 1 in the unit group
}

Fe Field::frobenius_q(Fe x) const {
    if (!frob_tab_.empty()) return frob_tab_[x];
    // x^q = x^{p^a}: apply the p-th power map a times.
    Fe y = x;
    for (std::uint32_t i = 0; i < a; ++i) y = pow(y, p);
    return y;
}

Fe Field::hermitian_norm(Fe x) const {
    if (!norm_tab_.empty()) return norm_tab_[x];
    return mul(x, frobenius_q(x));
}

void Field::build_tables() {
    const auto n = static_cast<std::size_t>(q2);
    mul_tab_.assign(n * n, 0);
    add_tab_.assign(n * n, 0);
    neg_tab_.assign(n, 0);
    inv_tab_.assign(n, 0);
    frob_tab_.assign(n, 0);
    norm_tab_.assign(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x; y < n; ++y) {
            const Fe m = mul_poly(static_cast<Fe>(x), static_cast<Fe>(y));
            mul_tab_[x * n + y] = m;
            mul_tab_[y * n + x] = m;
            const Fe s = add_poly(static_cast<Fe>(x), static_cast<Fe>(y));
            add_tab_[x * n + y] = s;
            add_tab_[y * n + x] = s;
        }
    }
    for (std::size_t x = 0; x < n; ++x) {
        Digits d = unpack(x, p, deg);
        for (auto& c : d) c = static_cast<std::uint32_t>((p - c) % p);
        neg_tab_[x] = static_cast<Fe>(pack(d, p));
        Fe y = static_cast<Fe>(x);
        for (std::uint32_t i = 0; i < a; ++i) y = pow(y, p);
        frob_tab_[x] = y;
        norm_tab_[x] = mul(static_cast<Fe>(x), y);
        if (x) inv_tab_[x] = pow(static_cast<Fe>(x), q2 - 2);
    }
    // inv_tab_[0] stays 0 but is never consulted: inv() throws first.
}

PrimePower factor_prime_power(std::uint64_t q) {
    if (q < 2) throw NotPrime(q);
    std::uint64_t p = 0, rest = q;
    for (std::uint64_t d = 2; d * d <= rest; ++d) {
        if (rest % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = rest; // q itself is prime
    std::uint32_t a = 0;
    while (rest % p == 0) {
        rest /= p;
        ++a;
    }
    if (rest != 1) throw NotPrime(q);
    return {p, a};
}

Field make_field(std::uint64_t p, std::uint32_t a, std::uint64_t cap) {
    if (p < 2) throw NotPrime(p);
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw NotPrime(p);
    if (a == 0) throw InvariantViolation("extension degree a must be >= 1");

    // q = p^a with q^2 <= cap, guarding overflow along the way.
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < a; ++i) {
        if (q > cap / p) throw CapExceeded("field size p^2a exceeds cap " + std::to_string(cap));
        q *= p;
    }
    if (q > cap / q) throw CapExceeded("field size " + std::to_string(q) + "^2 exceeds cap " +
                                       std::to_string(cap));

    Field F;
    F.p = p;
    F.a = a;
    F.deg = 2 * a;
    F.q = q;
    F.q2 = q * q;
    F.modulus = least_irreducible(p, F.deg);
    if (F.q2 <= kTableCap) F.build_tables();
    return F;
}

} // namespace ramsey

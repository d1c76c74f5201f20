#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace ramsey::rng {

// SplitMix64 finalizer. Stateless: every output word is a pure function of
// its input, which is what makes the substreams below order-independent.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Counter-based stream keyed by (master seed, label, entity id). word(i)
// never depends on any other word, so parallel consumers and reordered
// loops produce identical values. Adding a new labeled consumer never
// perturbs existing streams.
class Stream {
public:
    Stream(std::uint64_t master, std::string_view label, std::uint64_t id = 0)
        : key_(mix(mix(master ^ fnv1a64(label)) ^ id)) {}

    std::uint64_t word(std::uint64_t counter) const { return mix(key_ ^ mix(counter)); }

    // [0,1) with 53 random bits.
    double unit(std::uint64_t counter) const {
        return static_cast<double>(word(counter) >> 11) * 0x1.0p-53;
    }

    bool bernoulli(std::uint64_t counter, double p) const { return unit(counter) < p; }

    // Unbiased value in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const {
        const std::uint64_t limit = bound * ((~0ULL) / bound);
        std::uint64_t w = word(counter);
        std::uint64_t salt = 1;
        while (w >= limit) w = word(counter ^ (salt++ << 48));
        return w % bound;
    }

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
};

// Fisher-Yates permutation of {0,...,n-1} drawn from one stream.
inline std::vector<std::uint32_t> permutation(const Stream& s, std::uint32_t n) {
    std::vector<std::uint32_t> perm(n);
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    for (std::uint32_t i = n; i > 1; --i) {
        const auto j = static_cast<std::uint32_t>(s.below(i, i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

// Uniform k-subset of {0,...,n-1}, returned sorted.
inline std::vector<std::uint32_t> subset(const Stream& s, std::uint32_t n, std::uint32_t k,
                                         std::vector<std::uint32_t>& scratch) {
    scratch.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) scratch[i] = i;
    std::vector<std::uint32_t> out(k);
    for (std::uint32_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::uint32_t>(s.below(i, n - i));
        std::swap(scratch[i], scratch[j]);
        out[i] = scratch[i];
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace ramsey::rng

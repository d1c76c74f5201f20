#include "ramsey/config.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "ramsey/errors.hpp"
#include "ramsey/finite_field.hpp"

namespace ramsey {

namespace {

std::string fmt(const char* pattern, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

// log of the binomial coefficient, -inf when it is zero.
long double lchoose(long double n, long double k) {
    if (k < 0 || k > n) return -std::numeric_limits<long double>::infinity();
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

} // namespace

const char* profile_name(Profile p) { return p == Profile::Paper ? "paper" : "desk"; }

Profile parse_profile(const std::string& s) {
    if (s == "paper") return Profile::Paper;
    if (s == "desk") return Profile::Desk;
    throw ConditionViolated("unknown profile '" + s + "' (expected paper or desk)");
}

RunConfig make_config(std::uint32_t q, std::uint64_t master_seed, Profile profile) {
    factor_prime_power(q); // throws NotPrime unless q = p^a
    RunConfig cfg;
    cfg.q = q;
    cfg.master_seed = master_seed;
    cfg.profile = profile;
    if (profile == Profile::Paper) {
        const std::uint64_t q3 = static_cast<std::uint64_t>(q) * q * q;
        cfg.pair_budget = q3 > (std::numeric_limits<std::uint64_t>::max() >> 40)
                              ? std::numeric_limits<std::uint64_t>::max()
                              : q3 << 40;
    }
    return cfg;
}

ChainParams chain_params_for(std::uint32_t q, Profile profile) {
    if (profile == Profile::Desk) return scaled_chain_params(q);
    if (q < 2) throw ConditionViolated("q must be at least 2");
    const long double lq = std::log(static_cast<long double>(q));
    ChainParams p;
    p.alpha = 1.0 / (256.0 * q);
    p.r = static_cast<std::uint32_t>(std::ceil(1024.0L * q * lq));
    p.R = (std::uint64_t{1} << 24) * q * q;
    p.t = static_cast<std::uint64_t>(std::ceil((std::uint64_t{1} << 30) * q * lq * lq));
    return p;
}

ChainReport profile_chain_report(std::uint32_t q, Profile profile) {
    if (profile == Profile::Desk) return container_chain_report(q);

    ChainReport rep;
    rep.q = q;
    rep.params = chain_params_for(q, Profile::Paper);
    const std::uint64_t q2 = static_cast<std::uint64_t>(q) * q;
    rep.n = q2 * (q2 - q + 1);
    const auto [r, R, t, alpha] = rep.params;
    const long double lq = std::log(static_cast<long double>(q));
    const long double ln_n = std::log(static_cast<long double>(rep.n));

    rep.exact_steps.add(
        "paper profile: integer steps below q = 2^40 are not asserted", true,
        "all chain steps downgraded to report-only log-space evaluation");

    auto& steps = rep.asymptotic_steps;
    const long double gate = -static_cast<long double>(alpha) * r + ln_n;
    steps.add("survivor gate exp(-alpha r) n <= R",
              gate <= std::log(static_cast<long double>(R)),
              fmt("ln lhs = %.4Lg vs ln R = %.4Lg", gate,
                  std::log(static_cast<long double>(R))));
    steps.add("window r <= t <= R/2", r <= t && t <= R / 2,
              fmt("r = %u, t = %llu, R = %llu", r, static_cast<unsigned long long>(t),
                  static_cast<unsigned long long>(R)));

    const long double nf = static_cast<long double>(rep.n);
    const long double Rf = static_cast<long double>(R);
    const long double tf = static_cast<long double>(t);
    const long double lhs_a = lchoose(nf, r) + lchoose(Rf, tf - r);
    const long double rhs_a = r * ln_n + lchoose(Rf, tf);
    steps.add("C(n,r) C(R,t-r) <= n^r C(R,t)", lhs_a <= rhs_a,
              fmt("ln lhs = %.4Lg vs ln rhs = %.4Lg", lhs_a, rhs_a));

    const long double lhs_b = tf * std::log(tf) + lchoose(Rf, tf);
    const long double rhs_b = tf * std::log(4.0L * Rf);
    steps.add("t^t C(R,t) <= (4R)^t", lhs_b <= rhs_b,
              fmt("ln lhs = %.4Lg vs ln rhs = %.4Lg", lhs_b, rhs_b));

    steps.add("n <= q^4", rep.n <= q2 * q2,
              fmt("%llu <= %llu", static_cast<unsigned long long>(rep.n),
                  static_cast<unsigned long long>(q2 * q2)));

    steps.add("q^(4r) <= e^(t/2)", 4.0L * r * lq <= tf / 2,
              fmt("4 r ln q = %.4Lg vs t/2 = %.4Lg", 4.0L * r * lq, tf / 2));
    steps.add("4R/t <= q/(2 ln^2 q)", 4.0L * Rf / tf <= q / (2.0L * lq * lq),
              fmt("%.4Lg vs %.4Lg", 4.0L * Rf / tf, q / (2.0L * lq * lq)));
    steps.add("C(n,r) C(R,t-r) <= (q/ln^2 q)^t",
              lhs_a <= tf * std::log(static_cast<long double>(q) / (lq * lq)),
              fmt("ln count = %.4Lg vs ln target = %.4Lg", lhs_a,
                  tf * std::log(static_cast<long double>(q) / (lq * lq))));
    return rep;
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    char seed[20];
    std::snprintf(seed, sizeof seed, "0x%016llx",
                  static_cast<unsigned long long>(cfg.master_seed));
    nlohmann::json j;
    j["q"] = cfg.q;
    j["master_seed"] = seed;
    j["profile"] = profile_name(cfg.profile);
    j["k4_cap"] = cfg.k4_cap;
    j["alpha_cap"] = cfg.alpha_cap;
    j["pair_budget"] = cfg.pair_budget;
    j["inclique_pair_budget"] = cfg.inclique_pair_budget;
    j["m_prime"] = cfg.m_prime;
    j["density_floor"] = cfg.density_floor;
    j["out_dir"] = cfg.out_dir;
    return j;
}

} // namespace ramsey

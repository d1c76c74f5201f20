#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "ramsey/pipeline.hpp"

namespace ramsey {

// Two constant sets. "desk" uses the scaled parameters whose integer steps
// are checkable on small q; "paper" carries the full-scale constants
// (alpha = 1/256q, r = 1024 q ln q, R = 2^24 q^2, t = 2^30 q ln^2 q), which
// only close for astronomically large q -- under that profile every chain
// step is evaluated into a report instead of being asserted.
enum class Profile { Paper, Desk };

const char* profile_name(Profile p);
Profile parse_profile(const std::string& s); // "paper" or "desk"

struct RunConfig {
    std::uint32_t q = 3;
    std::uint64_t master_seed = 0;
    Profile profile = Profile::Desk;

    // Exact-oracle caps: largest graphs the exhaustive K4 scan and the
    // branch-and-bound independence oracle will accept.
    std::uint32_t k4_cap = 250;
    std::uint32_t alpha_cap = 400;

    // Sampled-check budgets (pair draws).
    std::uint64_t pair_budget = 1'000'000;
    std::uint64_t inclique_pair_budget = 2'000'000;

    // Density-audit calibration; m_prime = 0 means the audit default 4 q^2.
    std::uint64_t m_prime = 0;
    double density_floor = 1.0 / 256.0;

    std::string out_dir = ".";
};

// Validates q by prime-power factorization (throws NotPrime otherwise) and
// applies the profile's budgets: paper scales the pair budget to 2^40 q^3
// (saturating), desk keeps the defaults above.
RunConfig make_config(std::uint32_t q, std::uint64_t master_seed, Profile profile);

// The container-chain parameters this profile prescribes at order q.
ChainParams chain_params_for(std::uint32_t q, Profile profile);

// Desk: exact big-integer chain steps, safe to assert (all_pass holds for
// every q >= 2). Paper: the same steps evaluated in log space and filed
// under asymptotic_steps as report-only -- several genuinely fail at desk
// q, and exact_steps carries a single marker entry saying they were
// downgraded rather than checked.
ChainReport profile_chain_report(std::uint32_t q, Profile profile);

// Everything a report must echo for the run to be reproducible.
nlohmann::json config_to_json(const RunConfig& cfg);

} // namespace ramsey

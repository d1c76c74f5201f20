#pragma once

#include <string>
#include <vector>

namespace ramsey {

// One named check with a human-readable detail line. Verification routines
// accumulate these instead of throwing, so a caller sees every failure at
// once rather than the first.
struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckResult> checks;

    void add(std::string name, bool pass, std::string detail = {}) {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    std::string summary() const {
        std::string out;
        for (const auto& c : checks) {
            out += c.pass ? "[pass] " : "[FAIL] ";
            out += c.name;
            if (!c.detail.empty()) {
                out += ": ";
                out += c.detail;
            }
            out += '\n';
        }
        return out;
    }
};

} // namespace ramsey

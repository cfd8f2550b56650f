#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qpmd/linalg.hpp"

namespace qpmd {

/// Outcome of an exhaustive check: pass, or the first failing rule with the
/// subspaces that witness it.
struct Verdict {
    bool ok = true;
    std::string rule;    // e.g. "R3", "F2", "semimodular"
    std::string detail;  // human-readable description of the failure
    std::vector<Subspace> witnesses;

    static Verdict pass() { return {}; }
    static Verdict fail(std::string rule, std::string detail, std::vector<Subspace> witnesses = {}) {
        return {false, std::move(rule), std::move(detail), std::move(witnesses)};
    }
    explicit operator bool() const noexcept { return ok; }
    std::string str() const;
};

inline std::string Verdict::str() const {
    if (ok) return "pass";
    std::string s = "fail " + rule + ": " + detail;
    for (const auto& w : witnesses) s += " [" + format_subspace(w) + "]";
    return s;
}

}  // namespace qpmd

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wged/report.hpp"

namespace wged {

struct VerifyCheck {
    std::string label;
    double expected;
    double actual;
    double tolerance;  // absolute unless relative is set
    bool relative;
    bool pass;
};

struct VerifySummary {
    std::string suite;
    std::vector<VerifyCheck> checks;

    int failures() const {
        int n = 0;
        for (const auto& c : checks) n += c.pass ? 0 : 1;
        return n;
    }
    bool all_pass() const { return failures() == 0; }
};

/// Golden comparison of the full estimator grid on the electric data
/// against the 108 published reference cells (three plans, nine
/// estimators, four targets). Closed-form cells at 5e-5 absolute,
/// quadrature-backed cells at 5e-4.
VerifySummary verify_table2();

/// Closed-form vs quadrature equivalence on random configurations:
/// E-Bayes alpha (both losses, three priors) against brute nested (a, b)
/// quadrature at 1e-8 relative; Bayes SELF alpha and series reliability
/// against numerically integrated posterior expectations at 1e-7.
VerifySummary verify_oracles(int trials, uint64_t seed);

/// Random-configuration sweep of the ordering/spacing/contraction
/// property layer under the hypothesis 0 < c < S_m.
VerifySummary verify_theorems(int trials, uint64_t seed);

}  // namespace wged

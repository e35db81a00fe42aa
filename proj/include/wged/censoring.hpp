#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "wged/rng.hpp"

namespace wged {

/// A progressive type-II censoring plan: n units on test, m observed
/// failures, R_i surviving units removed at the i-th failure.
/// Invariant: sum(removals) + m = n.
struct CensoringScheme {
    int n = 0;
    std::vector<int> removals;

    int m() const { return static_cast<int>(removals.size()); }

    /// Parses the compressed grammar `item ("," item)*` with
    /// `item := INT | INT "*" INT` (e.g. "4,4,1,0*7"), then validates
    /// against n. Whitespace is ignored.
    static CensoringScheme parse(std::string_view text, int n);

    /// Compressed `v*k` rendering; parse(render(), n) round-trips.
    std::string render() const;

    void validate() const;
};

/// The observed ordered failure times under a scheme.
struct CensoredSample {
    CensoringScheme scheme;
    std::vector<double> times;  // x_1 <= ... <= x_m, all positive

    void validate() const;
};

/// The sufficient statistic S_m = sum (R_i + 1) (e^{lambda x_i} - 1)^theta.
struct SampleSummary {
    int m;
    double s_m;
};

SampleSummary compute_s_m(const CensoredSample& sample, double lambda, double theta);

/// Exact progressive type-II sample via the uniform-spacings construction:
/// W_i ~ U(0,1), V_i = W_i^{1/(i + R_m + ... + R_{m-i+1})},
/// U_i = 1 - V_m V_{m-1} ... V_{m-i+1}, x_i = quantile(U_i).
/// Deterministic for a fixed stream; exact double ties are redrawn.
CensoredSample generate_sample(const CensoringScheme& scheme,
                               const std::function<double(double)>& quantile_fn,
                               RngStream& stream);

/// Applies a plan retrospectively to a complete ordered dataset: at each
/// observed failure the next R_i listed values are the removed ones, so the
/// observed sample is a subsequence of the data.
CensoredSample apply_scheme_to_data(const CensoringScheme& scheme,
                                    const std::vector<double>& ordered_data);

}  // namespace wged

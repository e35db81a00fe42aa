#pragma once

#include <functional>

#include "wged/errors.hpp"

namespace wged {

/// Controls for the adaptive Gauss-Legendre engine.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 200;
    int fixed_order = 64;  // nodes per panel

    void validate() const;
};

/// Controls for guarded series summation.
struct SeriesSpec {
    double term_tol = 1e-13;  // relative to the running partial sum
    int max_terms = 500;

    void validate() const;
};

struct SeriesResult {
    double value;
    int terms_used;  // index of the last term added
};

/// ln Gamma(z), z > 0.
double log_gamma(double z);

/// ln B(u, v) = ln Gamma(u) + ln Gamma(v) - ln Gamma(u+v).
double log_beta(double u, double v);

/// Adaptive Gauss-Legendre integration of f over (lo, hi).
double integrate_finite(const std::function<double(double)>& f, double lo, double hi,
                        const QuadratureSpec& spec = {});

/// (1/B(u,v)) * integral over (0,1) of g(a) a^{u-1} (1-a)^{v-1} da.
/// Endpoint singularities (u < 1 at a=0, v < 1 at a=1) are removed by the
/// power substitutions a = s^{1/u} and 1-a = s^{1/v}; the domain is never
/// clipped.
double integrate_beta_weighted(const std::function<double(double)>& g, double u, double v,
                               const QuadratureSpec& spec = {});

/// Integral of f over (0, inf) via the rational map x = t/(1-t).
/// Requires f to decay at least exponentially.
double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec = {});

/// Sums term(0) + term(1) + ... with factorial-type decay assumed.
/// Truncates once |term_j| <= term_tol * |partial sum| for two consecutive j.
SeriesResult sum_alternating_series(const std::function<double(int)>& term,
                                    const SeriesSpec& spec = {});

}  // namespace wged

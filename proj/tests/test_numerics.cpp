#include <doctest.h>

#include <cmath>

#include "wged/numerics.hpp"

using namespace wged;

TEST_CASE("log_gamma and log_beta match reference values") {
    CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(log_beta(0.13, 2.0) == doctest::Approx(1.9180031958023054).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_beta(1.0, -1.0), std::domain_error);
}

TEST_CASE("integrate_finite resolves smooth integrands to tolerance") {
    const double exact = 0.6580912216610734;  // int_0^1 ((b+5)/(b+6))^2.5 db
    const double got = integrate_finite(
        [](double b) { return std::pow((b + 5.0) / (b + 6.0), 2.5); }, 0.0, 1.0);
    CHECK(got == doctest::Approx(exact).epsilon(1e-12));
    CHECK(integrate_finite([](double x) { return std::exp(x); }, 0.0, 1.0) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("integrate_finite reports budget exhaustion with a best estimate") {
    QuadratureSpec starved;
    starved.abs_tol = 1e-16;
    starved.rel_tol = 1e-16;
    starved.max_subdivisions = 1;
    starved.fixed_order = 2;
    try {
        integrate_finite([](double x) { return std::sin(50.0 * x * x); }, 0.0, 3.0,
                         starved);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("integrate_beta_weighted handles singular endpoints exactly once") {
    // E[1] = 1 and E[a] = u/(u+v) under beta(u, v), u < 1 singular at 0.
    const double u = 0.13, v = 2.0;
    CHECK(integrate_beta_weighted([](double) { return 1.0; }, u, v) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate_beta_weighted([](double a) { return a; }, u, v) ==
          doctest::Approx(u / (u + v)).epsilon(1e-10));
    // Both-sided singularity.
    CHECK(integrate_beta_weighted([](double a) { return a; }, 0.4, 0.7) ==
          doctest::Approx(0.4 / 1.1).epsilon(1e-10));
}

TEST_CASE("integrate_semi_infinite handles exponential decay") {
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // int_0^inf a^{18.3} e^{-20.49 a} da = Gamma(19.3)/20.49^19.3
    const double exact = 7.4954734476581856e-10;
    const double got = integrate_semi_infinite(
        [](double a) { return std::exp(18.3 * std::log(a) - 20.49 * a); });
    CHECK(got == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("sum_alternating_series reaches factorial-decay sums") {
    // exp(-2) = sum (-2)^j / j!
    auto exp_term = [](int j) {
        return std::exp(j * std::log(2.0) - std::lgamma(j + 1.0)) * (j % 2 ? -1.0 : 1.0);
    };
    const SeriesResult r = sum_alternating_series(exp_term);
    CHECK(r.value == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(r.terms_used > 3);

    // Posterior-ratio series frozen from a 50-digit evaluation.
    const double w = 0.20106542213804441;
    auto ratio_term = [&](int j) {
        const double mag = std::exp(j * std::log(2.0) - std::lgamma(j + 1.0) -
                                    19.3 * std::log1p(j * w / 20.49));
        return j % 2 ? -mag : mag;
    };
    CHECK(sum_alternating_series(ratio_term).value ==
          doctest::Approx(0.19129525219845598).epsilon(1e-12));
}

TEST_CASE("quadrature spec validation rejects nonsense") {
    QuadratureSpec bad;
    bad.abs_tol = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    SeriesSpec bad_series;
    bad_series.max_terms = 0;
    CHECK_THROWS_AS(bad_series.validate(), std::domain_error);
}

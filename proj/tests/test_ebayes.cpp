#include <doctest.h>

#include <cmath>

#include "wged/dataset.hpp"
#include "wged/ebayes.hpp"
#include "wged/verify.hpp"

using namespace wged;

namespace {

SampleSummary electric_summary() {
    const ElectricDefaults d;
    const CensoringScheme plan = CensoringScheme::parse("0*19", 19);
    return compute_s_m(apply_scheme_to_data(plan, electric_data()), d.lambda, d.theta);
}

}  // namespace

TEST_CASE("E-Bayes alpha closed forms match the published values") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary();
    const std::array<double, 3> self_expected = {0.9332954, 0.9418252, 0.9247657};
    const std::array<double, 3> linex_expected = {0.9111610, 0.9192925, 0.9030294};
    for (int id = 1; id <= 3; ++id) {
        CHECK(ebayes_alpha_self(s, d.hyper.with_prior(id)) ==
              doctest::Approx(self_expected[id - 1]).epsilon(5e-7));
        CHECK(ebayes_alpha_linex(s, d.hyper.with_prior(id), 1.0) ==
              doctest::Approx(linex_expected[id - 1]).epsilon(5e-7));
    }
}

TEST_CASE("spacing identity holds to near round-off") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary();
    for (auto loss : {LossSpec::self(), LossSpec::linex(1.0)}) {
        const EbayesTriple t = ebayes_alpha_triple(s, d.hyper, loss);
        const double g23 = t.by_prior[1] - t.by_prior[2];
        const double g13 = t.by_prior[0] - t.by_prior[2];
        CHECK(std::abs(g23 - 2.0 * g13) <= 1e-12 * std::abs(g23));
    }
}

TEST_CASE("LINEX alpha approaches SELF as q vanishes") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary();
    for (int id = 1; id <= 3; ++id) {
        const HyperPrior hp = d.hyper.with_prior(id);
        const double self = ebayes_alpha_self(s, hp);
        CHECK(std::abs(ebayes_alpha_linex(s, hp, 1e-9) - self) <= 1e-9);
        CHECK(std::abs(ebayes_alpha_linex(s, hp, -1e-9) - self) <= 1e-9);
    }
}

TEST_CASE("closed forms agree with brute nested quadrature") {
    const VerifySummary oracle = verify_oracles(20, 2024);
    for (const auto& c : oracle.checks) {
        INFO(c.label << ": expected " << c.expected << " got " << c.actual);
        CHECK(c.pass);
    }
}

TEST_CASE("E-Bayes SELF series reliabilities match the published values") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary();
    const SystemQuery qs{8.0, 5, Topology::series};
    const std::array<double, 3> expected = {0.8296637, 0.8282548, 0.8310727};
    for (int id = 1; id <= 3; ++id) {
        CHECK(ebayes_reliability_self(s, d.hyper.with_prior(id), qs, d.lambda, d.theta) ==
              doctest::Approx(expected[id - 1]).epsilon(1e-4));
    }
}

TEST_CASE("E-Bayes reliability is a weighted average of Bayes values") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary();
    const SystemQuery qs{8.0, 5, Topology::series};
    for (int id = 1; id <= 3; ++id) {
        const HyperPrior hp = d.hyper.with_prior(id);
        const double eb = ebayes_reliability_self(s, hp, qs, d.lambda, d.theta);
        double lo = 1.0, hi = 0.0;
        for (int i = 1; i < 20; ++i) {
            for (int j = 1; j < 20; ++j) {
                const double a = i / 20.0;
                const double b = hp.c * j / 20.0;
                const double v = bayes_reliability(s, {a, b}, LossSpec::self(), qs,
                                                   d.lambda, d.theta);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        }
        CHECK(eb >= lo);
        CHECK(eb <= hi);
    }
}

TEST_CASE("LINEX reliability nested paths agree at k = 1 and small q") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary();
    for (int id = 1; id <= 3; ++id) {
        const HyperPrior hp = d.hyper.with_prior(id);
        const double series_path = ebayes_reliability_linex(
            s, hp, {8.0, 1, Topology::series}, d.lambda, d.theta, 2.0);
        const double parallel_path = ebayes_reliability_linex(
            s, hp, {8.0, 1, Topology::parallel}, d.lambda, d.theta, 2.0);
        CHECK(series_path == doctest::Approx(parallel_path).epsilon(1e-6));

        const SystemQuery q5{8.0, 5, Topology::series};
        const double self = ebayes_reliability_self(s, hp, q5, d.lambda, d.theta);
        const double linex =
            ebayes_reliability_linex(s, hp, q5, d.lambda, d.theta, 1e-6);
        CHECK(std::abs(linex - self) <= 1e-4);
    }
}

TEST_CASE("E-Bayes hazard scales alpha by the kernel") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary();
    const double kernel = hazard_kernel(d.lambda, d.theta, 100.0);
    CHECK(ebayes_hazard(s, d.hyper.with_prior(1), 100.0, d.lambda, d.theta,
                        LossSpec::self()) ==
          doctest::Approx(kernel * ebayes_alpha_self(s, d.hyper.with_prior(1)))
              .epsilon(1e-14));
    CHECK(ebayes_hazard(s, d.hyper.with_prior(1), 100.0, d.lambda, d.theta,
                        LossSpec::self()) == doctest::Approx(2.613050).epsilon(5e-7));
}

TEST_CASE("theorem property report on the electric data") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary();
    const TheoremReport report = check_theorem_properties(
        s, d.hyper, {8.0, 5, Topology::series}, 100.0, d.lambda, d.theta);
    CHECK(report.hypothesis_met);  // c = 1.12 < S_m ~ 20.5
    CHECK(report.orderings_hold);
    CHECK(report.spacing_holds);
    // Quadratic contraction: 10x the statistic shrinks the gap ~100x.
    const double ratio = report.contraction[0].alpha_gap / report.contraction[1].alpha_gap;
    CHECK(ratio > 50.0);
    CHECK(ratio < 200.0);

    const SampleSummary tiny{19, 0.5};  // c >= S_m: hypothesis not met
    const TheoremReport no_claim = check_theorem_properties(
        tiny, d.hyper, {8.0, 5, Topology::series}, 100.0, d.lambda, d.theta);
    CHECK_FALSE(no_claim.hypothesis_met);
}

TEST_CASE("hyperprior validation and densities") {
    CHECK_THROWS_AS((HyperPrior{0.0, 2.0, 1.0, 1}.validate()), std::domain_error);
    CHECK_THROWS_AS((HyperPrior{1.0, 2.0, 1.0, 4}.validate()), std::domain_error);
    const HyperPrior hp{0.13, 2.0, 1.12, 2};
    // Each b-density integrates to one over (0, c).
    for (int id = 1; id <= 3; ++id) {
        const HyperPrior p = hp.with_prior(id);
        const double mass =
            integrate_finite([&](double b) { return p.b_density(b); }, 0.0, p.c);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    }
}

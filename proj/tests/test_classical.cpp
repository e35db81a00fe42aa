#include <doctest.h>

#include <cmath>

#include "wged/classical.hpp"
#include "wged/dataset.hpp"
#include "wged/errors.hpp"

using namespace wged;

namespace {

SampleSummary electric_summary(const char* scheme) {
    const ElectricDefaults d;
    const CensoringScheme plan = CensoringScheme::parse(scheme, 19);
    return compute_s_m(apply_scheme_to_data(plan, electric_data()), d.lambda, d.theta);
}

}  // namespace

TEST_CASE("MLE of alpha on the electric data matches the published values") {
    CHECK(mle_alpha(electric_summary("0*19")) == doctest::Approx(0.9562884).epsilon(5e-7));
    CHECK(mle_alpha(electric_summary("1*4,0*11")) ==
          doctest::Approx(0.7551532).epsilon(5e-7));
    CHECK(mle_alpha(electric_summary("4,4,1,0*7")) ==
          doctest::Approx(0.5046544).epsilon(5e-7));
    CHECK_THROWS_AS(mle_alpha({5, 0.0}), std::domain_error);
}

TEST_CASE("Bayes alpha closed forms match the published values") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary("0*19");
    CHECK(bayes_alpha(s, d.prior, LossSpec::self()) ==
          doctest::Approx(0.9419926).epsilon(5e-7));
    CHECK(bayes_alpha(s, d.prior, LossSpec::linex(1.0)) ==
          doctest::Approx(0.9197259).epsilon(5e-7));
}

TEST_CASE("LINEX alpha approaches the SELF value as q vanishes") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary("0*19");
    const double self = bayes_alpha(s, d.prior, LossSpec::self());
    CHECK(std::abs(bayes_alpha(s, d.prior, LossSpec::linex(1e-9)) - self) <= 1e-9);
    CHECK(std::abs(bayes_alpha(s, d.prior, LossSpec::linex(-1e-9)) - self) <= 1e-9);
    CHECK_THROWS_AS(LossSpec::linex(0.0), std::domain_error);
    // b + S_m + q must stay positive for the posterior MGF to exist.
    CHECK_THROWS_AS(bayes_alpha(s, d.prior, {Loss::linex, -30.0}), std::domain_error);
}

TEST_CASE("Bayes SELF reliabilities agree with posterior expectations") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary("0*19");
    const PosteriorSummary post = PosteriorSummary::from(s, d.prior);
    const QuadratureSpec tight{1e-14, 1e-11, 400, 48};
    for (auto topology : {Topology::series, Topology::parallel}) {
        const SystemQuery q{8.0, 5, topology};
        const double w = transformed_time(d.lambda, d.theta, 8.0);
        const double closed =
            bayes_reliability(s, d.prior, LossSpec::self(), q, d.lambda, d.theta, tight);
        const double brute = posterior_expectation(
            post,
            [&](double a) {
                return topology == Topology::series
                           ? series_reliability_from_exponent(a * w, 5)
                           : parallel_reliability_from_exponent(a * w, 5);
            },
            tight);
        CHECK(closed == doctest::Approx(brute).epsilon(1e-9));
    }
}

TEST_CASE("LINEX reliability series and integral paths agree at k = 1") {
    // A one-component system is both series and parallel, but the two
    // topologies use entirely different evaluation machinery.
    const ElectricDefaults d;
    const SampleSummary s = electric_summary("0*19");
    const QuadratureSpec tight{1e-13, 1e-10, 300, 48};
    for (double q : {2.0, 1.0, -0.5, 1e-6}) {
        const double series_path =
            bayes_reliability(s, d.prior, LossSpec::linex(q),
                              {8.0, 1, Topology::series}, d.lambda, d.theta, tight);
        const double parallel_path =
            bayes_reliability(s, d.prior, LossSpec::linex(q),
                              {8.0, 1, Topology::parallel}, d.lambda, d.theta, tight);
        CHECK(series_path == doctest::Approx(parallel_path).epsilon(1e-7));
    }
}

TEST_CASE("LINEX reliability approaches SELF as q vanishes") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary("0*19");
    for (auto topology : {Topology::series, Topology::parallel}) {
        const SystemQuery q{8.0, 5, topology};
        const double self =
            bayes_reliability(s, d.prior, LossSpec::self(), q, d.lambda, d.theta);
        const double linex = bayes_reliability(s, d.prior, LossSpec::linex(1e-6), q,
                                               d.lambda, d.theta);
        CHECK(std::abs(linex - self) <= 1e-6);
    }
}

TEST_CASE("Bayes hazard is the kernel times the alpha estimate") {
    const ElectricDefaults d;
    const SampleSummary s = electric_summary("0*19");
    const double kernel = hazard_kernel(d.lambda, d.theta, 100.0);
    CHECK(bayes_hazard(s, d.prior, LossSpec::self(), 100.0, d.lambda, d.theta) ==
          doctest::Approx(kernel * bayes_alpha(s, d.prior, LossSpec::self()))
              .epsilon(1e-14));
    CHECK(bayes_hazard(s, d.prior, LossSpec::self(), 100.0, d.lambda, d.theta) ==
          doctest::Approx(2.637401).epsilon(5e-7));
    CHECK(mle_hazard(s, d.lambda, d.theta, 100.0) ==
          doctest::Approx(2.677426).epsilon(5e-7));
}

TEST_CASE("posterior expectation normalizes correctly") {
    const PosteriorSummary post{19.3, 20.49};
    CHECK(posterior_expectation(post, [](double) { return 1.0; }) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(posterior_expectation(post, [](double a) { return a; }) ==
          doctest::Approx(19.3 / 20.49).epsilon(1e-9));
}

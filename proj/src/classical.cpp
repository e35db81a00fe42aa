#include "wged/classical.hpp"

#include <cmath>

#include "wged/errors.hpp"

namespace wged {

namespace {

// Reject anything outside [0,1] by more than round-off instead of clamping,
// then clip the round-off itself.
double checked_probability(double value, const char* what) {
    if (!(value > -1e-9) || !(value < 1.0 + 1e-9))
        throw NumericalIntegrityError(std::string(what) + ": value outside [0,1]");
    return std::min(1.0, std::max(0.0, value));
}

}  // namespace

double mle_alpha(const SampleSummary& summary) {
    if (!(summary.s_m > 0.0))
        throw std::domain_error("mle_alpha: degenerate sample, S_m must be positive");
    return summary.m / summary.s_m;
}

double mle_reliability(const SampleSummary& summary, double lambda, double theta,
                       const SystemQuery& query) {
    return reliability_system({mle_alpha(summary), lambda, theta}, query);
}

double mle_hazard(const SampleSummary& summary, double lambda, double theta, double t) {
    return mle_alpha(summary) * hazard_kernel(lambda, theta, t);
}

double bayes_alpha(const SampleSummary& summary, const GammaPrior& prior,
                   const LossSpec& loss) {
    const auto post = PosteriorSummary::from(summary, prior);
    if (loss.kind == Loss::squared_error) return post.shape / post.rate;
    if (loss.q == 0.0) throw std::domain_error("bayes_alpha: LINEX requires q != 0");
    if (!(post.rate + loss.q > 0.0))
        throw std::domain_error("bayes_alpha: LINEX requires b + S_m + q > 0");
    // -(shape/q) ln(rate/(rate+q))
    return post.shape / loss.q * std::log1p(loss.q / post.rate);
}

double bayes_reliability(const SampleSummary& summary, const GammaPrior& prior,
                         const LossSpec& loss, const SystemQuery& query, double lambda,
                         double theta, const QuadratureSpec& quad, const SeriesSpec& series) {
    query.validate();
    const auto post = PosteriorSummary::from(summary, prior);
    const double w = transformed_time(lambda, theta, query.t);
    double value;
    if (loss.kind == Loss::squared_error) {
        if (query.topology == Topology::series) {
            value = std::exp(-post.shape * std::log1p(query.k * w / post.rate));
        } else {
            // Alternating sum of series-type posterior ratios, compensated.
            double binom = 1.0, sum = 0.0, comp = 0.0, sign = 1.0;
            for (int i = 1; i <= query.k; ++i) {
                binom *= static_cast<double>(query.k - i + 1) / i;
                const double term =
                    sign * binom * std::exp(-post.shape * std::log1p(i * w / post.rate));
                const double y = term - comp;
                const double s = sum + y;
                comp = (s - sum) - y;
                sum = s;
                sign = -sign;
            }
            value = sum;
        }
    } else {
        const double q = loss.q;
        if (q == 0.0) throw std::domain_error("bayes_reliability: LINEX requires q != 0");
        double excess;  // E[e^{-q R}] - 1, kept separate for small |q|
        if (query.topology == Topology::series) {
            const double logq = std::log(std::abs(q));
            auto term = [&](int idx) {
                const int j = idx + 1;  // the j = 0 term is the 1 split off
                const double mag = std::exp(j * logq - log_gamma(j + 1.0) -
                                            post.shape *
                                                std::log1p(j * query.k * w / post.rate));
                const bool negative = (q > 0.0) && (j % 2 == 1);
                return negative ? -mag : mag;
            };
            excess = sum_alternating_series(term, series).value;
        } else {
            const int k = query.k;
            excess = posterior_expectation(
                post,
                [&](double alpha) {
                    return std::expm1(-q * parallel_reliability_from_exponent(alpha * w, k));
                },
                quad);
        }
        if (!(excess > -1.0))
            throw std::domain_error("bayes_reliability: log of non-positive LINEX expectation");
        value = -std::log1p(excess) / q;
    }
    return checked_probability(value, "bayes_reliability");
}

double bayes_hazard(const SampleSummary& summary, const GammaPrior& prior,
                    const LossSpec& loss, double t, double lambda, double theta) {
    return hazard_kernel(lambda, theta, t) * bayes_alpha(summary, prior, loss);
}

double posterior_expectation(const PosteriorSummary& post,
                             const std::function<double(double)>& f,
                             const QuadratureSpec& quad) {
    if (!(post.shape > 0.0) || !(post.rate > 0.0))
        throw std::domain_error("posterior_expectation: invalid posterior");
    const double mean = post.shape / post.rate;
    const double log_norm = post.shape * std::log(post.rate) - log_gamma(post.shape);
    return integrate_semi_infinite(
        [&](double z) {
            const double alpha = mean * z;
            if (alpha <= 0.0) return 0.0;
            const double log_density =
                log_norm + (post.shape - 1.0) * std::log(alpha) - post.rate * alpha;
            const double weight = mean * std::exp(log_density);
            return weight == 0.0 ? 0.0 : weight * f(alpha);
        },
        quad);
}

}  // namespace wged

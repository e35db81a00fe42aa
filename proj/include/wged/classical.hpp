#pragma once

#include <functional>

#include "wged/censoring.hpp"
#include "wged/numerics.hpp"
#include "wged/wged_core.hpp"

namespace wged {

/// Gamma conjugate prior on alpha: shape a, rate b.
struct GammaPrior {
    double a;
    double b;

    void validate() const {
        if (!(a > 0.0) || !(b > 0.0))
            throw std::domain_error("GammaPrior: a, b must be positive");
    }
};

enum class Loss { squared_error, linex };

struct LossSpec {
    Loss kind = Loss::squared_error;
    double q = 0.0;  // LINEX shape; unused for squared error

    static LossSpec self() { return {Loss::squared_error, 0.0}; }
    static LossSpec linex(double q) {
        if (q == 0.0) throw std::domain_error("LossSpec: LINEX requires q != 0");
        return {Loss::linex, q};
    }
};

/// The gamma posterior: shape m + a, rate b + S_m.
struct PosteriorSummary {
    double shape;
    double rate;

    static PosteriorSummary from(const SampleSummary& summary, const GammaPrior& prior) {
        prior.validate();
        return {summary.m + prior.a, prior.b + summary.s_m};
    }
};

/// m / S_m.
double mle_alpha(const SampleSummary& summary);

/// MLE of system reliability by the invariance property (plug-in).
double mle_reliability(const SampleSummary& summary, double lambda, double theta,
                       const SystemQuery& query);

/// MLE of the hazard rate (plug-in).
double mle_hazard(const SampleSummary& summary, double lambda, double theta, double t);

/// Bayes estimate of alpha: posterior mean under squared error, the
/// log-transformed posterior MGF under LINEX.
double bayes_alpha(const SampleSummary& summary, const GammaPrior& prior, const LossSpec& loss);

/// Bayes estimate of series/parallel system reliability. Series SELF and
/// parallel SELF are closed forms; series LINEX sums the factorial series
/// in the posterior-ratio terms; parallel LINEX integrates
/// exp(-q R_p(alpha)) against the posterior.
double bayes_reliability(const SampleSummary& summary, const GammaPrior& prior,
                         const LossSpec& loss, const SystemQuery& query, double lambda,
                         double theta, const QuadratureSpec& quad = {},
                         const SeriesSpec& series = {});

/// Hazard kernel at t times bayes_alpha under the same loss.
double bayes_hazard(const SampleSummary& summary, const GammaPrior& prior,
                    const LossSpec& loss, double t, double lambda, double theta);

/// E[f(alpha)] under a gamma posterior, computed by scaled semi-infinite
/// quadrature (integration variable alpha = mean * z).
double posterior_expectation(const PosteriorSummary& post,
                             const std::function<double(double)>& f,
                             const QuadratureSpec& quad = {});

}  // namespace wged

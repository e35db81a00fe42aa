#pragma once

#include <stdexcept>

namespace wged {

/// Distribution parameters (alpha, lambda, theta), all strictly positive.
/// lambda and theta are treated as known throughout; alpha is the quantity
/// being estimated.
struct WgedParams {
    double alpha;
    double lambda;
    double theta;

    void validate() const {
        if (!(alpha > 0.0) || !(lambda > 0.0) || !(theta > 0.0))
            throw std::domain_error("WgedParams: alpha, lambda, theta must be positive");
    }
};

enum class Topology { series, parallel };

/// A system reliability query: k independent components at time t.
struct SystemQuery {
    double t;
    int k;
    Topology topology;

    void validate() const {
        if (!(t > 0.0)) throw std::domain_error("SystemQuery: t must be positive");
        if (k < 1) throw std::domain_error("SystemQuery: k must be a positive integer");
        if (k > 10000)
            throw std::domain_error("SystemQuery: k capped at 10000 (alternating sum)");
    }
};

/// The recurring kernel w(t) = (exp(lambda t) - 1)^theta. Every estimator
/// depends on the data and on time only through this transform.
double transformed_time(double lambda, double theta, double t);

/// d/dt of transformed_time.
double transformed_time_derivative(double lambda, double theta, double t);

double pdf(const WgedParams& params, double x);
double cdf(const WgedParams& params, double x);
double reliability(const WgedParams& params, double t);
double reliability_system(const WgedParams& params, const SystemQuery& q);
double hazard(const WgedParams& params, double t);

/// Inverse of cdf: (1/lambda) ln(1 + (-ln(1-p)/alpha)^{1/theta}), p in [0,1).
double quantile(const WgedParams& params, double p);

/// The data-free factor lambda*theta*e^{lambda t}(e^{lambda t}-1)^{theta-1}
/// that turns any alpha estimate into a hazard estimate.
double hazard_kernel(double lambda, double theta, double t);

/// exp(-k * s) with s = alpha * w(t): series system reliability as a
/// function of the exponent product.
double series_reliability_from_exponent(double alpha_w, int k);

/// Alternating binomial sum for a k-component parallel system, compensated.
double parallel_reliability_from_exponent(double alpha_w, int k);

}  // namespace wged

#include "wged/wged_core.hpp"

#include <cmath>

namespace wged {

double transformed_time(double lambda, double theta, double t) {
    if (t < 0.0) throw std::domain_error("transformed_time: t must be nonnegative");
    if (t == 0.0) return 0.0;
    return std::pow(std::expm1(lambda * t), theta);
}

double transformed_time_derivative(double lambda, double theta, double t) {
    if (!(t > 0.0)) throw std::domain_error("transformed_time_derivative: t must be positive");
    const double e = std::expm1(lambda * t);
    return theta * lambda * (e + 1.0) * std::pow(e, theta - 1.0);
}

double pdf(const WgedParams& params, double x) {
    params.validate();
    if (x < 0.0) throw std::domain_error("pdf: x must be nonnegative");
    if (x == 0.0) {
        if (params.theta < 1.0) throw std::domain_error("pdf: diverges at x = 0 for theta < 1");
        if (params.theta > 1.0) return 0.0;
        return params.alpha * params.lambda;  // theta == 1
    }
    const double e = std::expm1(params.lambda * x);
    const double w = std::pow(e, params.theta);
    return params.alpha * params.lambda * params.theta * (e + 1.0) *
           std::pow(e, params.theta - 1.0) * std::exp(-params.alpha * w);
}

double cdf(const WgedParams& params, double x) {
    params.validate();
    if (x < 0.0) throw std::domain_error("cdf: x must be nonnegative");
    return -std::expm1(-params.alpha * transformed_time(params.lambda, params.theta, x));
}

double reliability(const WgedParams& params, double t) {
    params.validate();
    if (t < 0.0) throw std::domain_error("reliability: t must be nonnegative");
    return std::exp(-params.alpha * transformed_time(params.lambda, params.theta, t));
}

double series_reliability_from_exponent(double alpha_w, int k) {
    return std::exp(-static_cast<double>(k) * alpha_w);
}

double parallel_reliability_from_exponent(double alpha_w, int k) {
    // sum_{i=1..k} (-1)^{i-1} C(k,i) exp(-i*alpha_w), Kahan compensated.
    const double x = std::exp(-alpha_w);
    double binom = 1.0;  // C(k, i) built by recurrence
    double xi = 1.0;
    double sum = 0.0, comp = 0.0;
    double sign = 1.0;
    for (int i = 1; i <= k; ++i) {
        binom *= static_cast<double>(k - i + 1) / i;
        xi *= x;
        const double term = sign * binom * xi;
        const double y = term - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        sign = -sign;
    }
    return sum;
}

double reliability_system(const WgedParams& params, const SystemQuery& q) {
    params.validate();
    q.validate();
    const double aw = params.alpha * transformed_time(params.lambda, params.theta, q.t);
    return q.topology == Topology::series ? series_reliability_from_exponent(aw, q.k)
                                          : parallel_reliability_from_exponent(aw, q.k);
}

double hazard_kernel(double lambda, double theta, double t) {
    if (!(t > 0.0)) {
        if (t == 0.0 && theta >= 1.0)
            return theta == 1.0 ? lambda * theta : 0.0;
        throw std::domain_error("hazard_kernel: t = 0 requires theta >= 1");
    }
    const double e = std::expm1(lambda * t);
    return lambda * theta * (e + 1.0) * std::pow(e, theta - 1.0);
}

double hazard(const WgedParams& params, double t) {
    params.validate();
    return params.alpha * hazard_kernel(params.lambda, params.theta, t);
}

double quantile(const WgedParams& params, double p) {
    params.validate();
    if (!(p >= 0.0) || !(p < 1.0))
        throw std::domain_error("quantile: p must lie in [0, 1)");
    if (p == 0.0) return 0.0;
    const double w = std::pow(-std::log1p(-p) / params.alpha, 1.0 / params.theta);
    return std::log1p(w) / params.lambda;
}

}  // namespace wged

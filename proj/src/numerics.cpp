#include "wged/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

namespace wged {

namespace {

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

// Nodes as roots of the Legendre polynomial, found by Newton iteration on
// the three-term recurrence.
GaussRule build_gauss_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = wgt;
        rule.weights[n - 1 - i] = wgt;
    }
    return rule;
}

const GaussRule& gauss_rule(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss_rule(n)).first;
    return it->second;
}

struct Panel {
    double lo, hi;
    double refined;    // GL on the two halves
    double err;        // |refined - GL on the whole panel|
    double left_val;   // GL on (lo, mid), kept so a split reuses it
    double right_val;  // GL on (mid, hi)
};

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::domain_error("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 1 || fixed_order < 2)
        throw std::domain_error("QuadratureSpec: max_subdivisions >= 1, fixed_order >= 2 required");
}

void SeriesSpec::validate() const {
    if (!(term_tol > 0.0) || max_terms < 1)
        throw std::domain_error("SeriesSpec: term_tol > 0 and max_terms >= 1 required");
}

double log_gamma(double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::domain_error("log_gamma: argument must be positive and finite");
    return std::lgamma(z);
}

double log_beta(double u, double v) {
    if (!(u > 0.0) || !(v > 0.0))
        throw std::domain_error("log_beta: arguments must be positive");
    return log_gamma(u) + log_gamma(v) - log_gamma(u + v);
}

double integrate_finite(const std::function<double(double)>& f, double lo, double hi,
                        const QuadratureSpec& spec) {
    spec.validate();
    if (!(lo < hi)) throw std::domain_error("integrate_finite: requires lo < hi");

    const GaussRule& rule = gauss_rule(spec.fixed_order);
    auto gl = [&](double a, double b) {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        double acc = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i) {
            const double fx = f(c + h * rule.nodes[i]);
            if (std::isnan(fx))
                throw std::domain_error("integrate_finite: integrand evaluated to NaN");
            acc += rule.weights[i] * fx;
        }
        return h * acc;
    };
    auto make_panel = [&](double a, double b, double coarse) {
        const double mid = 0.5 * (a + b);
        Panel p;
        p.lo = a;
        p.hi = b;
        p.left_val = gl(a, mid);
        p.right_val = gl(mid, b);
        p.refined = p.left_val + p.right_val;
        p.err = std::abs(p.refined - coarse);
        return p;
    };

    std::vector<Panel> panels;
    panels.push_back(make_panel(lo, hi, gl(lo, hi)));
    int splits = 0;
    for (;;) {
        double total = 0.0, toterr = 0.0;
        size_t worst = 0;
        for (size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].refined;
            toterr += panels[i].err;
            if (panels[i].err > panels[worst].err) worst = i;
        }
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (toterr <= tol) return total;
        if (splits >= spec.max_subdivisions)
            throw ConvergenceError("integrate_finite: subdivision budget exhausted", total, toterr);
        Panel p = panels[worst];
        const double mid = 0.5 * (p.lo + p.hi);
        panels[worst] = make_panel(p.lo, mid, p.left_val);
        panels.push_back(make_panel(mid, p.hi, p.right_val));
        ++splits;
    }
}

double integrate_beta_weighted(const std::function<double(double)>& g, double u, double v,
                               const QuadratureSpec& spec) {
    if (!(u > 0.0) || !(v > 0.0))
        throw std::domain_error("integrate_beta_weighted: shape parameters must be positive");
    // Split at 1/2; substitute a = s^{1/u} on the left and 1-a = s^{1/v} on
    // the right so both endpoint weights become bounded.
    auto left = [&](double s) {
        const double a = std::pow(s, 1.0 / u);
        return g(a) * std::pow(1.0 - a, v - 1.0) / u;
    };
    auto right = [&](double s) {
        const double a = 1.0 - std::pow(s, 1.0 / v);
        return g(a) * std::pow(a, u - 1.0) / v;
    };
    const double raw = integrate_finite(left, 0.0, std::pow(0.5, u), spec) +
                       integrate_finite(right, 0.0, std::pow(0.5, v), spec);
    return raw * std::exp(-log_beta(u, v));
}

double integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec) {
    auto mapped = [&](double t) {
        const double onemt = 1.0 - t;
        const double x = t / onemt;
        const double fx = f(x);
        if (std::isnan(fx))
            throw std::domain_error("integrate_semi_infinite: non-finite integrand sample");
        const double jac = 1.0 / (onemt * onemt);
        const double val = fx * jac;
        // Exponential decay beats the polynomial Jacobian; an inf here means
        // the integrand itself overflowed.
        return std::isfinite(val) ? val : 0.0;
    };
    return integrate_finite(mapped, 0.0, 1.0, spec);
}

SeriesResult sum_alternating_series(const std::function<double(int)>& term,
                                    const SeriesSpec& spec) {
    spec.validate();
    double sum = 0.0, comp = 0.0;  // Kahan
    int small_streak = 0;
    for (int j = 0; j < spec.max_terms; ++j) {
        const double t = term(j);
        const double y = t - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if (std::abs(t) <= spec.term_tol * std::abs(sum)) {
            if (++small_streak >= 2) return {sum, j};
        } else {
            small_streak = 0;
        }
    }
    throw ConvergenceError("sum_alternating_series: max_terms exceeded", sum, 0.0);
}

}  // namespace wged

#include "wged/ebayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "wged/errors.hpp"

namespace wged {

namespace {

// The quadrature can legitimately overshoot [0,1] by its own tolerance;
// anything beyond that is treated as a hard failure.
double checked_probability(double value, double slack, const char* what) {
    if (!(value > -slack) || !(value < 1.0 + slack))
        throw NumericalIntegrityError(std::string(what) + ": value outside [0,1]");
    return std::min(1.0, std::max(0.0, value));
}

// m + u/(u+v): the expected posterior shape once a is averaged out.
double mean_shape(const SampleSummary& summary, const HyperPrior& hp) {
    return summary.m + hp.u / (hp.u + hp.v);
}

// The three SELF brackets share L = ln((c+S)/S); evaluating them together
// keeps the rounding of the spacing identity correlated.
EbayesTriple alpha_self_triple(const SampleSummary& summary, const HyperPrior& hp) {
    const double A = mean_shape(summary, hp);
    const double S = summary.s_m;
    const double c = hp.c;
    const double L = std::log1p(c / S);
    return {{A / c * L,                                  // uniform b
             2.0 * A / c * ((c + S) / c * L - 1.0),      // decreasing b
             2.0 * A / c * (1.0 - S / c * L)}};          // increasing b
}

// LINEX brackets of the closed forms, regrouped so every term is O(q):
//   (c+S) l1 - S l2 = (c+S) D1 + c l2,   D1 = ln1p(cq / (S(c+S+q)))
//   (S+q)^2 LA - S^2 LB = q(2S+q) LA + S^2 D,  D = ln1p(-cq / ((S+q)(c+S)))
// Algebraically identical to the printed x ln(x) combinations.
EbayesTriple alpha_linex_triple(const SampleSummary& summary, const HyperPrior& hp,
                                double q) {
    if (q == 0.0) throw std::domain_error("ebayes_alpha_linex: q must be nonzero");
    const double S = summary.s_m;
    const double c = hp.c;
    if (!(S + q > 0.0))
        throw std::domain_error("ebayes_alpha_linex: requires s_m + q > 0");
    const double A = mean_shape(summary, hp);
    const double l2 = -std::log1p(q / S);            // ln(S/(S+q))
    const double l3 = -std::log1p(c / (S + q));      // ln((S+q)/(c+S+q))
    const double LA = -l3;                           // ln((c+S+q)/(S+q))
    const double P = std::log1p(q / (c + S));        // ln((c+S+q)/(c+S))
    const double D1 = std::log1p(c * q / (S * (c + S + q)));
    const double D = std::log1p(-q * c / ((S + q) * (c + S)));

    const double b1 = (c + S) * D1 + c * l2 + q * l3;
    const double b2 = q * (2.0 * S + q + 2.0 * c) * LA + (S * S + 2.0 * c * S) * D +
                      c * c * P - q * c;
    const double b3 = q * (2.0 * S + q) * LA + S * S * D - c * c * P - q * c;
    return {{-A / (c * q) * b1, A / (q * c * c) * b2, -A / (q * c * c) * b3}};
}

double max_pairwise_gap(const EbayesTriple& t) {
    const auto [lo, hi] = std::minmax_element(t.by_prior.begin(), t.by_prior.end());
    return *hi - *lo;
}

double relative_spacing_residual(const EbayesTriple& t) {
    const double g23 = t.by_prior[1] - t.by_prior[2];
    const double g13 = t.by_prior[0] - t.by_prior[2];
    const double denom = std::max(std::abs(g23), 1e-300);
    return std::abs(g23 - 2.0 * g13) / denom;
}

double spacing_round_off_tolerance(const EbayesTriple& t) {
    const double scale = std::max(
        {std::abs(t.by_prior[0]), std::abs(t.by_prior[1]), std::abs(t.by_prior[2])});
    const double gap = std::max(max_pairwise_gap(t), 1e-300);
    const double eps = std::numeric_limits<double>::epsilon();
    return std::max(1e-12, 256.0 * eps * scale / gap);
}

}  // namespace

void HyperPrior::validate() const {
    if (!(u > 0.0) || !(v > 0.0) || !(c > 0.0))
        throw std::domain_error("HyperPrior: u, v, c must be positive");
    if (prior_id < 1 || prior_id > 3)
        throw std::domain_error("HyperPrior: prior_id must be 1, 2, or 3");
}

double HyperPrior::b_density(double b) const {
    if (b <= 0.0 || b >= c) return 0.0;
    switch (prior_id) {
        case 1: return 1.0 / c;
        case 2: return 2.0 * (c - b) / (c * c);
        case 3: return 2.0 * b / (c * c);
        default: throw std::domain_error("HyperPrior: prior_id must be 1, 2, or 3");
    }
}

EbayesQuadSpec EbayesQuadSpec::precise() {
    EbayesQuadSpec spec;
    spec.outer_a = {1e-12, 1e-9, 200, 32};
    spec.inner_b = {1e-12, 1e-7, 200, 32};
    spec.alpha = {1e-12, 1e-8, 200, 64};
    spec.series = {};
    return spec;
}

EbayesQuadSpec EbayesQuadSpec::fast() {
    EbayesQuadSpec spec;
    spec.outer_a = {1e-8, 1e-5, 12, 10};
    spec.inner_b = {1e-8, 1e-5, 12, 10};
    spec.alpha = {1e-9, 1e-6, 24, 24};
    spec.series = {1e-10, 500};
    return spec;
}

double ebayes_alpha_self(const SampleSummary& summary, const HyperPrior& hp) {
    hp.validate();
    if (!(summary.s_m > 0.0))
        throw std::domain_error("ebayes_alpha_self: s_m must be positive");
    return alpha_self_triple(summary, hp).by_prior[hp.prior_id - 1];
}

double ebayes_alpha_linex(const SampleSummary& summary, const HyperPrior& hp, double q) {
    hp.validate();
    if (!(summary.s_m > 0.0))
        throw std::domain_error("ebayes_alpha_linex: s_m must be positive");
    return alpha_linex_triple(summary, hp, q).by_prior[hp.prior_id - 1];
}

namespace {

// Shared nested (a, b) quadrature: the E-Bayes value is the expectation of
// the Bayes estimate over the hyperprior, with the b-density as a
// first-class weight so all three priors run through one path.
double nested_expectation(const SampleSummary& summary, const HyperPrior& hp,
                          const LossSpec& loss, const SystemQuery& query, double lambda,
                          double theta, const EbayesQuadSpec& spec, const char* what) {
    hp.validate();
    auto bayes_at = [&](double a, double b) {
        try {
            return bayes_reliability(summary, {a, b}, loss, query, lambda, theta,
                                     spec.alpha, spec.series);
        } catch (const ConvergenceError& e) {
            std::ostringstream os;
            os << e.what() << " [at a=" << a << ", b=" << b << "]";
            throw ConvergenceError(os.str(), e.best_estimate(), e.error_bound());
        }
    };
    const double value = integrate_beta_weighted(
        [&](double a) {
            return integrate_finite(
                [&](double b) { return hp.b_density(b) * bayes_at(a, b); }, 0.0, hp.c,
                spec.inner_b);
        },
        hp.u, hp.v, spec.outer_a);
    const double slack =
        std::max(1e-9, 10.0 * (spec.outer_a.rel_tol + spec.inner_b.rel_tol));
    return checked_probability(value, slack, what);
}

}  // namespace

double ebayes_reliability_self(const SampleSummary& summary, const HyperPrior& hp,
                               const SystemQuery& query, double lambda, double theta,
                               const EbayesQuadSpec& spec) {
    return nested_expectation(summary, hp, LossSpec::self(), query, lambda, theta, spec,
                              "ebayes_reliability_self");
}

double ebayes_reliability_linex(const SampleSummary& summary, const HyperPrior& hp,
                                const SystemQuery& query, double lambda, double theta,
                                double q, const EbayesQuadSpec& spec) {
    return nested_expectation(summary, hp, LossSpec::linex(q), query, lambda, theta, spec,
                              "ebayes_reliability_linex");
}

double ebayes_hazard(const SampleSummary& summary, const HyperPrior& hp, double t,
                     double lambda, double theta, const LossSpec& loss) {
    const double alpha = loss.kind == Loss::squared_error
                             ? ebayes_alpha_self(summary, hp)
                             : ebayes_alpha_linex(summary, hp, loss.q);
    return hazard_kernel(lambda, theta, t) * alpha;
}

EbayesTriple ebayes_alpha_triple(const SampleSummary& summary, const HyperPrior& hp,
                                 const LossSpec& loss) {
    hp.validate();
    if (!(summary.s_m > 0.0))
        throw std::domain_error("ebayes_alpha_triple: s_m must be positive");
    return loss.kind == Loss::squared_error ? alpha_self_triple(summary, hp)
                                            : alpha_linex_triple(summary, hp, loss.q);
}

namespace {

// 1 - R under SELF, evaluated without forming the near-one reliability:
// series via expm1, parallel via the full alternating sum whose i = 0 term
// cancels the 1. Keeps relative accuracy when the triples sit within
// round-off of 1, which is where the ordering checks live.
double bayes_unreliability_self(const PosteriorSummary& post, const SystemQuery& query,
                                double w, const QuadratureSpec& alpha_quad) {
    if (query.topology == Topology::series)
        return -std::expm1(-post.shape * std::log1p(query.k * w / post.rate));
    double binom = 1.0, sum = 0.0, comp = 0.0, sign = 1.0;
    for (int i = 0; i <= query.k; ++i) {
        const double term = sign * binom * std::exp(-post.shape * std::log1p(i * w / post.rate));
        const double y = term - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        sign = -sign;
        binom *= static_cast<double>(query.k - i) / (i + 1);
    }
    if (sum >= 1e-8) return sum;
    // Below ~1e-8 the alternating sum is limited by cancellation among its
    // O(1) terms; integrate the pointwise-stable (1 - e^{-alpha w})^k
    // against the posterior instead.
    return posterior_expectation(
        post,
        [&](double alpha) {
            const double one_minus = -std::expm1(-alpha * w);
            return one_minus > 0.0 ? std::exp(query.k * std::log(one_minus)) : 0.0;
        },
        alpha_quad);
}

double ebayes_unreliability_self(const SampleSummary& summary, const HyperPrior& hp,
                                 const SystemQuery& query, double lambda, double theta,
                                 const EbayesQuadSpec& spec) {
    const double w = transformed_time(lambda, theta, query.t);
    return integrate_beta_weighted(
        [&](double a) {
            return integrate_finite(
                [&](double b) {
                    const PosteriorSummary post{summary.m + a, b + summary.s_m};
                    return hp.b_density(b) *
                           bayes_unreliability_self(post, query, w, spec.alpha);
                },
                0.0, hp.c, spec.inner_b);
        },
        hp.u, hp.v, spec.outer_a);
}

}  // namespace

TheoremReport check_theorem_properties(const SampleSummary& summary, const HyperPrior& hp,
                                       const SystemQuery& query, double t, double lambda,
                                       double theta, const EbayesQuadSpec& spec) {
    hp.validate();
    TheoremReport report;
    report.hypothesis_met = hp.c > 0.0 && hp.c < summary.s_m;

    const double kernel = hazard_kernel(lambda, theta, t);
    const EbayesTriple alpha = alpha_self_triple(summary, hp);
    EbayesTriple haz;
    for (int i = 0; i < 3; ++i) haz.by_prior[i] = kernel * alpha.by_prior[i];

    auto increasing_chain = [](const EbayesTriple& v) {
        return v.by_prior[2] < v.by_prior[0] && v.by_prior[0] < v.by_prior[1];
    };
    report.alpha = {alpha, increasing_chain(alpha), relative_spacing_residual(alpha),
                    spacing_round_off_tolerance(alpha)};
    report.hazard = {haz, increasing_chain(haz), relative_spacing_residual(haz),
                     spacing_round_off_tolerance(haz)};

    SystemQuery series_q = query, parallel_q = query;
    series_q.topology = Topology::series;
    parallel_q.topology = Topology::parallel;
    // The reliability ordering gaps scale with min(R, 1 - R), so judge each
    // triple on whichever of R and 1 - R is the small (relatively accurate)
    // side: for R near 1 use the complements (R2 < R1 < R3 is equivalent to
    // U3 < U1 < U2), for R near 0 integrate R directly.
    auto reliability_check = [&](const SystemQuery& q) -> OrderingCheck {
        EbayesTriple un;
        for (int id = 1; id <= 3; ++id)
            un.by_prior[id - 1] =
                ebayes_unreliability_self(summary, hp.with_prior(id), q, lambda, theta, spec);
        if (un.by_prior[0] <= 0.5) {
            EbayesTriple rel;
            for (int i = 0; i < 3; ++i) rel.by_prior[i] = 1.0 - un.by_prior[i];
            return {rel, increasing_chain(un), relative_spacing_residual(un),
                    spacing_round_off_tolerance(un)};
        }
        EbayesTriple rel;
        for (int id = 1; id <= 3; ++id)
            rel.by_prior[id - 1] =
                ebayes_reliability_self(summary, hp.with_prior(id), q, lambda, theta, spec);
        const bool ordered =
            rel.by_prior[1] < rel.by_prior[0] && rel.by_prior[0] < rel.by_prior[2];
        return {rel, ordered, relative_spacing_residual(rel),
                spacing_round_off_tolerance(rel)};
    };
    report.reliability = reliability_check(series_q);
    report.reliability_parallel = reliability_check(parallel_q);

    const double scales[3] = {1.0, 10.0, 100.0};
    for (int i = 0; i < 3; ++i) {
        const SampleSummary scaled{summary.m, summary.s_m * scales[i]};
        const double gap = max_pairwise_gap(alpha_self_triple(scaled, hp));
        report.contraction[i] = {scales[i], gap, kernel * gap};
    }

    report.orderings_hold = report.alpha.ordered && report.hazard.ordered &&
                            report.reliability.ordered &&
                            report.reliability_parallel.ordered;
    report.spacing_holds =
        report.alpha.spacing_residual <= report.alpha.spacing_tolerance &&
        report.hazard.spacing_residual <= report.hazard.spacing_tolerance;
    return report;
}

}  // namespace wged

#include "wged/report.hpp"

namespace wged {

ReportGrid compute_report(const SampleSummary& summary, const ReportSettings& s) {
    const SystemQuery qs{s.t_reliability, s.k, Topology::series};
    const SystemQuery qp{s.t_reliability, s.k, Topology::parallel};
    const double kernel = hazard_kernel(s.lambda, s.theta, s.t_hazard);

    ReportGrid grid{};
    auto put = [&](Estimator e, double alpha, double rs, double rp, double h) {
        const size_t col = static_cast<size_t>(e);
        grid[0][col] = alpha;
        grid[1][col] = rs;
        grid[2][col] = rp;
        grid[3][col] = h;
    };

    put(Estimator::mle, mle_alpha(summary), mle_reliability(summary, s.lambda, s.theta, qs),
        mle_reliability(summary, s.lambda, s.theta, qp),
        mle_hazard(summary, s.lambda, s.theta, s.t_hazard));

    const LossSpec self = LossSpec::self();
    const LossSpec la = LossSpec::linex(s.q_alpha);
    const LossSpec lr = LossSpec::linex(s.q_reliability);

    put(Estimator::bs, bayes_alpha(summary, s.prior, self),
        bayes_reliability(summary, s.prior, self, qs, s.lambda, s.theta, s.quad.alpha,
                          s.quad.series),
        bayes_reliability(summary, s.prior, self, qp, s.lambda, s.theta, s.quad.alpha,
                          s.quad.series),
        bayes_hazard(summary, s.prior, self, s.t_hazard, s.lambda, s.theta));
    put(Estimator::bl, bayes_alpha(summary, s.prior, la),
        bayes_reliability(summary, s.prior, lr, qs, s.lambda, s.theta, s.quad.alpha,
                          s.quad.series),
        bayes_reliability(summary, s.prior, lr, qp, s.lambda, s.theta, s.quad.alpha,
                          s.quad.series),
        bayes_hazard(summary, s.prior, la, s.t_hazard, s.lambda, s.theta));

    const std::array<std::pair<Estimator, Estimator>, 3> eb_cols = {
        {{Estimator::ebs1, Estimator::ebl1},
         {Estimator::ebs2, Estimator::ebl2},
         {Estimator::ebs3, Estimator::ebl3}}};
    for (int id = 1; id <= 3; ++id) {
        const HyperPrior hp = s.hyper.with_prior(id);
        const double a_self = ebayes_alpha_self(summary, hp);
        const double a_linex = ebayes_alpha_linex(summary, hp, s.q_alpha);
        put(eb_cols[id - 1].first, a_self,
            ebayes_reliability_self(summary, hp, qs, s.lambda, s.theta, s.quad),
            ebayes_reliability_self(summary, hp, qp, s.lambda, s.theta, s.quad),
            kernel * a_self);
        put(eb_cols[id - 1].second, a_linex,
            ebayes_reliability_linex(summary, hp, qs, s.lambda, s.theta, s.q_reliability,
                                     s.quad),
            ebayes_reliability_linex(summary, hp, qp, s.lambda, s.theta, s.q_reliability,
                                     s.quad),
            kernel * a_linex);
    }
    return grid;
}

bool method_selects(const std::string& method, Estimator e) {
    if (method == "all") return true;
    if (method == "mle") return e == Estimator::mle;
    if (method == "bayes") return e == Estimator::bs || e == Estimator::bl;
    if (method == "ebayes1") return e == Estimator::ebs1 || e == Estimator::ebl1;
    if (method == "ebayes2") return e == Estimator::ebs2 || e == Estimator::ebl2;
    if (method == "ebayes3") return e == Estimator::ebs3 || e == Estimator::ebl3;
    throw ParseError("unknown method selector '" + method + "'");
}

}  // namespace wged

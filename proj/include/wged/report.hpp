#pragma once

#include <array>
#include <string>

#include "wged/dataset.hpp"
#include "wged/montecarlo.hpp"

namespace wged {

/// Everything needed to evaluate the full estimator grid on one sample.
struct ReportSettings {
    double lambda;
    double theta;
    GammaPrior prior;
    HyperPrior hyper;
    double q_alpha = 1.0;        // LINEX shape for alpha and hazard
    double q_reliability = 2.0;  // LINEX shape for reliabilities
    double t_reliability = 8.0;
    int k = 5;
    double t_hazard = 100.0;
    EbayesQuadSpec quad = EbayesQuadSpec::precise();

    static ReportSettings electric() {
        const ElectricDefaults d;
        return {d.lambda, d.theta,        d.prior, d.hyper, d.q_alpha, d.q_reliability,
                d.t_reliability, d.k, d.t_hazard, EbayesQuadSpec::precise()};
    }
};

/// values[target][estimator] with the canonical target and estimator order.
using ReportGrid = std::array<std::array<double, 9>, 4>;

ReportGrid compute_report(const SampleSummary& summary, const ReportSettings& settings);

/// One estimator column restricted by a method selector ("all", "mle",
/// "bayes", "ebayes1".."ebayes3"); true when the estimator is selected.
bool method_selects(const std::string& method, Estimator e);

}  // namespace wged

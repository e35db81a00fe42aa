#pragma once

#include <vector>

#include "wged/classical.hpp"
#include "wged/ebayes.hpp"

namespace wged {

/// The 19 insulating-fluid failure times (minutes), already ordered.
inline const std::vector<double>& electric_data() {
    static const std::vector<double> data = {
        0.19, 0.78, 0.96, 1.31, 2.78, 3.16, 4.15, 4.67, 4.85, 6.50,
        7.35, 8.01, 8.27, 12.06, 31.75, 32.52, 33.91, 36.71, 72.89};
    return data;
}

/// Default analysis settings for the electric data.
struct ElectricDefaults {
    double lambda = 0.022;
    double theta = 1.95;
    GammaPrior prior{0.3, 0.62};
    HyperPrior hyper{0.13, 2.0, 1.12, 1};
    double q_alpha = 1.0;        // LINEX shape for alpha and hazard
    double q_reliability = 2.0;  // LINEX shape for reliabilities
    double t_reliability = 8.0;
    int k = 5;
    double t_hazard = 100.0;
};

/// Default true parameters and priors for the simulation study.
struct SimulationDefaults {
    WgedParams true_params{0.9570615, 3.0, 2.5};
    GammaPrior prior{0.4919733, 0.5308612};
    HyperPrior hyper{0.13, 2.0, 1.12, 1};
    double q_alpha = 1.0;
    double q_reliability = 2.0;
    double t_series = 0.1;
    double t_parallel = 0.25;
    double t_hazard = 0.1;
    int k = 5;
};

}  // namespace wged

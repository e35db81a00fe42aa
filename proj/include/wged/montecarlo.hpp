#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "wged/censoring.hpp"
#include "wged/dataset.hpp"
#include "wged/ebayes.hpp"

namespace wged {

/// The nine estimators in the fixed reporting column order.
enum class Estimator { mle, bs, bl, ebs1, ebl1, ebs2, ebl2, ebs3, ebl3 };

inline constexpr std::array<Estimator, 9> kEstimatorOrder = {
    Estimator::mle,  Estimator::bs,   Estimator::bl,
    Estimator::ebs1, Estimator::ebl1, Estimator::ebs2,
    Estimator::ebl2, Estimator::ebs3, Estimator::ebl3};

const char* to_string(Estimator e);

/// The four estimation targets.
enum class Target { alpha, series, parallel, hazard };

inline constexpr std::array<Target, 4> kTargetOrder = {Target::alpha, Target::series,
                                                       Target::parallel, Target::hazard};

const char* to_string(Target t);

/// Where and how each target is evaluated.
struct SimTargets {
    double t_series = 0.1;
    double t_parallel = 0.25;
    double t_hazard = 0.1;
    int k = 5;
};

struct SimConfig {
    WgedParams true_params;
    GammaPrior prior;
    HyperPrior hyper;  // prior_id ignored; all three are evaluated
    std::vector<CensoringScheme> schemes;
    double q_alpha = 1.0;        // LINEX shape for alpha and hazard
    double q_reliability = 2.0;  // LINEX shape for both reliabilities
    SimTargets targets;
    int replications = 2000;
    uint64_t master_seed = 1;
    bool redraw_truth = false;  // re-sample (a, b, alpha) each replication
    EbayesQuadSpec quad = EbayesQuadSpec::fast();

    void validate() const;

    /// Reads the JSON document described in the docs; missing prior/hyper/
    /// target fields fall back to the simulation defaults.
    static SimConfig from_json(const nlohmann::json& j);
};

struct MseCell {
    double mean;
    double mse;
};

/// Accumulated results: one cell per (scheme, estimator, target).
struct MseTable {
    std::vector<CensoringScheme> schemes;
    std::vector<std::array<std::array<MseCell, 4>, 9>> cells;  // [scheme][est][target]
    std::array<double, 4> truths;  // fixed-truth values by target

    const MseCell& at(size_t scheme, Estimator e, Target t) const {
        return cells[scheme][static_cast<size_t>(e)][static_cast<size_t>(t)];
    }
};

/// Runs the full replication grid. Deterministic for a fixed master_seed
/// regardless of worker count: every replication derives its stream from
/// (master_seed, scheme index, replication index) and reduction is
/// sequential in replication order. workers <= 0 means hardware count.
MseTable run_simulation(const SimConfig& config, int workers = 0);

struct OrderingVerdict {
    std::string description;
    bool pass;
    double lhs;
    double rhs;
};

/// Checks, per target and loss, the five-way MSE chains
/// EB3 < EB1 < EB2 < Bayes < MLE, and the monotone decrease of each MSE
/// in n within a fixed censoring-fraction family.
std::vector<OrderingVerdict> verify_orderings(const MseTable& table);

/// CSV emission: '.' decimal point, 10 significant digits, LF endings.
void write_mse_csv(std::ostream& os, const MseTable& table);
void write_verdicts_csv(std::ostream& os, const std::vector<OrderingVerdict>& verdicts);

/// One plot-ready series per target: MSE against censoring fraction.
void write_figure_csv(std::ostream& os, const MseTable& table, Target target);

}  // namespace wged

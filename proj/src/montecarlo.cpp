#include "wged/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "wged/errors.hpp"

namespace wged {

const char* to_string(Estimator e) {
    switch (e) {
        case Estimator::mle: return "MLE";
        case Estimator::bs: return "BS";
        case Estimator::bl: return "BL";
        case Estimator::ebs1: return "EBS1";
        case Estimator::ebl1: return "EBL1";
        case Estimator::ebs2: return "EBS2";
        case Estimator::ebl2: return "EBL2";
        case Estimator::ebs3: return "EBS3";
        case Estimator::ebl3: return "EBL3";
    }
    return "?";
}

const char* to_string(Target t) {
    switch (t) {
        case Target::alpha: return "alpha";
        case Target::series: return "series_reliability";
        case Target::parallel: return "parallel_reliability";
        case Target::hazard: return "hazard";
    }
    return "?";
}

void SimConfig::validate() const {
    true_params.validate();
    prior.validate();
    hyper.validate();
    if (schemes.empty()) throw ParseError("SimConfig: at least one scheme required");
    for (const auto& s : schemes) s.validate();
    if (replications < 1) throw ParseError("SimConfig: replications must be >= 1");
    if (q_alpha == 0.0 || q_reliability == 0.0)
        throw ParseError("SimConfig: LINEX q values must be nonzero");
    if (!(targets.t_series > 0.0) || !(targets.t_parallel > 0.0) ||
        !(targets.t_hazard > 0.0) || targets.k < 1)
        throw ParseError("SimConfig: target times must be positive and k >= 1");
}

SimConfig SimConfig::from_json(const nlohmann::json& j) {
    const SimulationDefaults defaults;
    SimConfig cfg;
    try {
        const auto& tp = j.at("true_params");
        cfg.true_params = {tp.at("alpha").get<double>(), tp.at("lambda").get<double>(),
                           tp.at("theta").get<double>()};
        cfg.prior = defaults.prior;
        if (j.contains("prior"))
            cfg.prior = {j["prior"].at("a").get<double>(), j["prior"].at("b").get<double>()};
        cfg.hyper = defaults.hyper;
        if (j.contains("hyper")) {
            const auto& h = j["hyper"];
            cfg.hyper = {h.at("u").get<double>(), h.at("v").get<double>(),
                         h.at("c").get<double>(), h.value("prior_id", 1)};
        }
        for (const auto& s : j.at("schemes")) {
            const int n = s.at("n").get<int>();
            cfg.schemes.push_back(
                CensoringScheme::parse(s.at("removals").get<std::string>(), n));
        }
        if (j.contains("loss_qs")) {
            const auto& q = j["loss_qs"];
            cfg.q_alpha = q.value("alpha", defaults.q_alpha);
            cfg.q_reliability = q.value("reliability", defaults.q_reliability);
        }
        cfg.targets = {defaults.t_series, defaults.t_parallel, defaults.t_hazard, defaults.k};
        if (j.contains("targets")) {
            const auto& t = j["targets"];
            if (t.contains("series")) {
                cfg.targets.t_series = t["series"].value("t", cfg.targets.t_series);
                cfg.targets.k = t["series"].value("k", cfg.targets.k);
            }
            if (t.contains("parallel"))
                cfg.targets.t_parallel = t["parallel"].value("t", cfg.targets.t_parallel);
            if (t.contains("hazard"))
                cfg.targets.t_hazard = t["hazard"].value("t", cfg.targets.t_hazard);
        }
        cfg.replications = j.at("replications").get<int>();
        cfg.master_seed = j.value("master_seed", uint64_t{1});
        cfg.redraw_truth = j.value("redraw_truth", false);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("SimConfig: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

namespace {

double sample_normal(RngStream& rng) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Marsaglia-Tsang, with the shape+1 boost below 1; unit rate.
double sample_gamma(RngStream& rng, double shape) {
    if (shape < 1.0)
        return sample_gamma(rng, shape + 1.0) * std::pow(rng.uniform(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = sample_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(RngStream& rng, double u, double v) {
    const double x = sample_gamma(rng, u);
    const double y = sample_gamma(rng, v);
    return x / (x + y);
}

// Inverse-CDF draws for the three b priors on (0, c).
double sample_b(RngStream& rng, const HyperPrior& hp) {
    const double w = rng.uniform();
    switch (hp.prior_id) {
        case 1: return hp.c * w;
        case 2: return hp.c * (1.0 - std::sqrt(1.0 - w));
        case 3: return hp.c * std::sqrt(w);
        default: throw std::domain_error("sample_b: bad prior_id");
    }
}

struct RepResult {
    std::array<double, 36> values;  // [estimator * 4 + target]
    std::array<double, 4> truths;
};

std::array<double, 4> true_values(const WgedParams& params, const SimTargets& targets) {
    const SystemQuery qs{targets.t_series, targets.k, Topology::series};
    const SystemQuery qp{targets.t_parallel, targets.k, Topology::parallel};
    return {params.alpha, reliability_system(params, qs), reliability_system(params, qp),
            hazard(params, targets.t_hazard)};
}

std::array<double, 4> eval_estimator(Estimator e, const SampleSummary& summary,
                                     const SimConfig& cfg, const GammaPrior& prior) {
    const double lam = cfg.true_params.lambda, th = cfg.true_params.theta;
    const SystemQuery qs{cfg.targets.t_series, cfg.targets.k, Topology::series};
    const SystemQuery qp{cfg.targets.t_parallel, cfg.targets.k, Topology::parallel};
    const double th_t = cfg.targets.t_hazard;
    switch (e) {
        case Estimator::mle:
            return {mle_alpha(summary), mle_reliability(summary, lam, th, qs),
                    mle_reliability(summary, lam, th, qp), mle_hazard(summary, lam, th, th_t)};
        case Estimator::bs: {
            const LossSpec self = LossSpec::self();
            return {bayes_alpha(summary, prior, self),
                    bayes_reliability(summary, prior, self, qs, lam, th, cfg.quad.alpha,
                                      cfg.quad.series),
                    bayes_reliability(summary, prior, self, qp, lam, th, cfg.quad.alpha,
                                      cfg.quad.series),
                    bayes_hazard(summary, prior, self, th_t, lam, th)};
        }
        case Estimator::bl: {
            const LossSpec la = LossSpec::linex(cfg.q_alpha);
            const LossSpec lr = LossSpec::linex(cfg.q_reliability);
            return {bayes_alpha(summary, prior, la),
                    bayes_reliability(summary, prior, lr, qs, lam, th, cfg.quad.alpha,
                                      cfg.quad.series),
                    bayes_reliability(summary, prior, lr, qp, lam, th, cfg.quad.alpha,
                                      cfg.quad.series),
                    bayes_hazard(summary, prior, la, th_t, lam, th)};
        }
        default: {
            int prior_id;
            bool linex;
            switch (e) {
                case Estimator::ebs1: prior_id = 1; linex = false; break;
                case Estimator::ebl1: prior_id = 1; linex = true; break;
                case Estimator::ebs2: prior_id = 2; linex = false; break;
                case Estimator::ebl2: prior_id = 2; linex = true; break;
                case Estimator::ebs3: prior_id = 3; linex = false; break;
                default: prior_id = 3; linex = true; break;
            }
            const HyperPrior hp = cfg.hyper.with_prior(prior_id);
            const double a = linex ? ebayes_alpha_linex(summary, hp, cfg.q_alpha)
                                   : ebayes_alpha_self(summary, hp);
            const double rs =
                linex ? ebayes_reliability_linex(summary, hp, qs, lam, th,
                                                 cfg.q_reliability, cfg.quad)
                      : ebayes_reliability_self(summary, hp, qs, lam, th, cfg.quad);
            const double rp =
                linex ? ebayes_reliability_linex(summary, hp, qp, lam, th,
                                                 cfg.q_reliability, cfg.quad)
                      : ebayes_reliability_self(summary, hp, qp, lam, th, cfg.quad);
            return {a, rs, rp, hazard_kernel(lam, th, th_t) * a};
        }
    }
}

RepResult run_replication(const SimConfig& cfg, size_t scheme_idx, size_t rep_idx) {
    RngStream stream =
        RngStream(cfg.master_seed).substream(scheme_idx).substream(rep_idx);
    WgedParams truth = cfg.true_params;
    GammaPrior prior = cfg.prior;
    if (cfg.redraw_truth) {
        // The exploratory protocol: draw (a, b) from the hyperprior and
        // alpha from the implied gamma prior, then estimate with those.
        // Tiny beta shapes can underflow the gamma draw to zero; redraw.
        do {
            prior.a = sample_beta(stream, cfg.hyper.u, cfg.hyper.v);
            prior.b = sample_b(stream, cfg.hyper);
            truth.alpha = sample_gamma(stream, prior.a) / prior.b;
        } while (!(truth.alpha > 1e-200) || !std::isfinite(truth.alpha));
    }
    const CensoringScheme& scheme = cfg.schemes[scheme_idx];
    const CensoredSample sample = generate_sample(
        scheme, [&](double p) { return quantile(truth, p); }, stream);
    const SampleSummary summary =
        compute_s_m(sample, cfg.true_params.lambda, cfg.true_params.theta);

    RepResult result;
    result.truths = true_values(truth, cfg.targets);
    for (size_t ei = 0; ei < kEstimatorOrder.size(); ++ei) {
        const Estimator e = kEstimatorOrder[ei];
        try {
            const auto vals = eval_estimator(e, summary, cfg, prior);
            for (size_t ti = 0; ti < 4; ++ti) result.values[ei * 4 + ti] = vals[ti];
        } catch (const std::exception& ex) {
            throw std::runtime_error(std::string("estimator ") + to_string(e) + ": " +
                                     ex.what());
        }
    }
    return result;
}

struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
};

}  // namespace

MseTable run_simulation(const SimConfig& config, int workers) {
    config.validate();
    const size_t n_schemes = config.schemes.size();
    const size_t reps = static_cast<size_t>(config.replications);
    const size_t total = n_schemes * reps;

    std::vector<RepResult> results(total);
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mu;
    std::string first_error;

    auto worker = [&]() {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= total || failed.load()) return;
            const size_t s = idx / reps, r = idx % reps;
            try {
                results[idx] = run_replication(config, s, r);
            } catch (const std::exception& ex) {
                std::scoped_lock lock(error_mu);
                if (first_error.empty()) {
                    std::ostringstream os;
                    os << "simulation aborted at scheme " << config.schemes[s].render()
                       << " (n=" << config.schemes[s].n << "), replication " << r << ": "
                       << ex.what();
                    first_error = os.str();
                }
                failed.store(true);
                return;
            }
        }
    };

    int n_workers = workers > 0 ? workers
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (n_workers < 1) n_workers = 1;
    if (static_cast<size_t>(n_workers) > total) n_workers = static_cast<int>(total);
    {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw NumericalIntegrityError(first_error);

    MseTable table;
    table.schemes = config.schemes;
    table.cells.resize(n_schemes);
    table.truths = true_values(config.true_params, config.targets);
    // Sequential reduction in replication order keeps the table bit-identical
    // across worker counts.
    for (size_t s = 0; s < n_schemes; ++s) {
        for (size_t ei = 0; ei < 9; ++ei) {
            for (size_t ti = 0; ti < 4; ++ti) {
                KahanSum mean_acc, mse_acc;
                for (size_t r = 0; r < reps; ++r) {
                    const RepResult& rep = results[s * reps + r];
                    const double v = rep.values[ei * 4 + ti];
                    mean_acc.add(v);
                    const double d = v - rep.truths[ti];
                    mse_acc.add(d * d);
                }
                table.cells[s][ei][ti] = {mean_acc.sum / reps, mse_acc.sum / reps};
            }
        }
    }
    return table;
}

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

const char* loss_of(Estimator e) {
    switch (e) {
        case Estimator::mle: return "none";
        case Estimator::bs:
        case Estimator::ebs1:
        case Estimator::ebs2:
        case Estimator::ebs3: return "self";
        default: return "linex";
    }
}

std::string scheme_label(const CensoringScheme& s) {
    std::ostringstream os;
    os << "n=" << s.n << " m=" << s.m() << " R=" << s.render();
    return os.str();
}

}  // namespace

std::vector<OrderingVerdict> verify_orderings(const MseTable& table) {
    std::vector<OrderingVerdict> verdicts;
    auto link = [&](const std::string& where, const char* a, double va, const char* b,
                    double vb) {
        std::ostringstream os;
        os << where << ": MSE(" << a << ") < MSE(" << b << ")";
        verdicts.push_back({os.str(), va < vb, va, vb});
    };
    // Five-way chains per scheme, target, loss.
    const std::array<std::array<Estimator, 5>, 2> chains = {
        {{Estimator::ebs3, Estimator::ebs1, Estimator::ebs2, Estimator::bs, Estimator::mle},
         {Estimator::ebl3, Estimator::ebl1, Estimator::ebl2, Estimator::bl,
          Estimator::mle}}};
    for (size_t s = 0; s < table.schemes.size(); ++s) {
        for (Target t : kTargetOrder) {
            for (const auto& chain : chains) {
                for (size_t i = 0; i + 1 < chain.size(); ++i) {
                    const double va = table.at(s, chain[i], t).mse;
                    const double vb = table.at(s, chain[i + 1], t).mse;
                    link(scheme_label(table.schemes[s]) + " | " + to_string(t),
                         to_string(chain[i]), va, to_string(chain[i + 1]), vb);
                }
            }
        }
    }
    // Monotone decrease in n within a censoring-fraction family.
    for (size_t i = 0; i < table.schemes.size(); ++i) {
        for (size_t j = 0; j < table.schemes.size(); ++j) {
            const auto &si = table.schemes[i], &sj = table.schemes[j];
            const int fi = static_cast<int>(std::lround(100.0 * si.m() / si.n));
            const int fj = static_cast<int>(std::lround(100.0 * sj.m() / sj.n));
            if (fi != fj || si.n >= sj.n) continue;
            for (Target t : kTargetOrder) {
                for (Estimator e : kEstimatorOrder) {
                    const double small_n = table.at(i, e, t).mse;
                    const double large_n = table.at(j, e, t).mse;
                    std::ostringstream os;
                    os << to_string(e) << " | " << to_string(t) << " | MSE(n=" << sj.n
                       << ") < MSE(n=" << si.n << ") at " << fi << "% observed";
                    verdicts.push_back({os.str(), large_n < small_n, large_n, small_n});
                }
            }
        }
    }
    return verdicts;
}

void write_mse_csv(std::ostream& os, const MseTable& table) {
    os << "scheme,estimator,target,loss,mean,mse\n";
    for (size_t s = 0; s < table.schemes.size(); ++s) {
        const std::string label = scheme_label(table.schemes[s]);
        for (Estimator e : kEstimatorOrder) {
            for (Target t : kTargetOrder) {
                const MseCell& cell = table.at(s, e, t);
                os << label << ',' << to_string(e) << ',' << to_string(t) << ','
                   << loss_of(e) << ',' << fmt(cell.mean) << ',' << fmt(cell.mse) << '\n';
            }
        }
    }
}

void write_verdicts_csv(std::ostream& os, const std::vector<OrderingVerdict>& verdicts) {
    os << "check,pass,lhs,rhs\n";
    for (const auto& v : verdicts)
        os << '"' << v.description << "\"," << (v.pass ? "1" : "0") << ',' << fmt(v.lhs)
           << ',' << fmt(v.rhs) << '\n';
}

void write_figure_csv(std::ostream& os, const MseTable& table, Target target) {
    os << "n,fraction,estimator,mse\n";
    for (size_t s = 0; s < table.schemes.size(); ++s) {
        const auto& scheme = table.schemes[s];
        const double fraction = 100.0 * scheme.m() / scheme.n;
        for (Estimator e : kEstimatorOrder)
            os << scheme.n << ',' << fmt(fraction) << ',' << to_string(e) << ','
               << fmt(table.at(s, e, target).mse) << '\n';
    }
}

}  // namespace wged

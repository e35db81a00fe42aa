#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wged/errors.hpp"
#include "wged/montecarlo.hpp"
#include "wged/report.hpp"
#include "wged/verify.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using nlohmann::json;

std::string fmt7(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.7f", x);
    return buf;
}

uint64_t resolve_seed(uint64_t cli_seed) {
    if (const char* env = std::getenv("WGED_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw wged::ParseError("WGED_SEED is not a valid integer: " + std::string(env));
        }
    }
    return cli_seed;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);  // binary: LF endings everywhere
    if (!os) throw wged::ParseError("cannot open output file " + path.string());
    os << content;
}

void write_manifest(const std::filesystem::path& path, const std::string& command,
                    const json& config, double wall_seconds,
                    const std::vector<std::string>& outputs) {
    json manifest = {{"command", command},
                     {"config", config},
                     {"tool_version", kVersion},
                     {"wall_clock_seconds", wall_seconds},
                     {"outputs", outputs}};
    write_text_file(path, manifest.dump(2) + "\n");
}

std::vector<double> read_data_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw wged::ParseError("cannot open data file " + path);
    std::vector<double> data;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(first, last - first + 1);
        try {
            size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            data.push_back(v);
        } catch (const std::exception&) {
            throw wged::ParseError(path + ":" + std::to_string(lineno) +
                                   ": not a decimal value: '" + tok + "'");
        }
    }
    if (data.empty()) throw wged::ParseError(path + ": no data values found");
    return data;
}

struct EstimateOptions {
    std::string builtin;
    std::string data_path;
    int n = 0;
    std::string scheme;
    double lambda = 0.0, theta = 0.0;
    std::vector<double> prior;
    std::vector<double> hyper;
    std::string loss = "both";
    double t = 8.0;
    int k = 5;
    double t_hazard = 100.0;
    std::string method = "all";
    std::string out = "wged_estimate.json";
};

int cmd_estimate(const EstimateOptions& opt) {
    const auto start = std::chrono::steady_clock::now();

    std::vector<double> data;
    wged::ReportSettings settings = wged::ReportSettings::electric();
    if (!opt.builtin.empty()) {
        if (opt.builtin != "electric")
            throw wged::ParseError("unknown builtin dataset '" + opt.builtin + "'");
        data = wged::electric_data();
    } else if (!opt.data_path.empty()) {
        data = read_data_file(opt.data_path);
    } else {
        throw wged::ParseError("estimate: provide --builtin electric or --data FILE");
    }
    if (opt.lambda > 0.0) settings.lambda = opt.lambda;
    if (opt.theta > 0.0) settings.theta = opt.theta;
    if (!opt.prior.empty()) {
        if (opt.prior.size() != 2) throw wged::ParseError("--prior needs two values: a b");
        settings.prior = {opt.prior[0], opt.prior[1]};
    }
    if (!opt.hyper.empty()) {
        if (opt.hyper.size() != 3)
            throw wged::ParseError("--hyper needs three values: u v c");
        settings.hyper = {opt.hyper[0], opt.hyper[1], opt.hyper[2], 1};
    }
    settings.t_reliability = opt.t;
    settings.k = opt.k;
    settings.t_hazard = opt.t_hazard;

    std::string loss_mode = opt.loss;
    if (loss_mode.rfind("linex:", 0) == 0) {
        try {
            settings.q_alpha = settings.q_reliability = std::stod(loss_mode.substr(6));
        } catch (const std::exception&) {
            throw wged::ParseError("--loss linex:Q needs a numeric Q");
        }
        if (settings.q_alpha == 0.0) throw wged::ParseError("--loss linex:Q needs Q != 0");
        loss_mode = "linex";
    } else if (loss_mode != "self" && loss_mode != "both") {
        throw wged::ParseError("--loss must be self, linex:Q, or both");
    }

    const int n = opt.n > 0 ? opt.n : static_cast<int>(data.size());
    const std::string scheme_text =
        opt.scheme.empty() ? "0*" + std::to_string(n) : opt.scheme;
    const wged::CensoringScheme scheme = wged::CensoringScheme::parse(scheme_text, n);
    const wged::CensoredSample sample = wged::apply_scheme_to_data(scheme, data);
    const wged::SampleSummary summary =
        wged::compute_s_m(sample, settings.lambda, settings.theta);

    const wged::ReportGrid grid = wged::compute_report(summary, settings);

    auto column_selected = [&](wged::Estimator e) {
        if (!wged::method_selects(opt.method, e)) return false;
        const char* l = [&] {
            switch (e) {
                case wged::Estimator::mle: return "both";
                case wged::Estimator::bs:
                case wged::Estimator::ebs1:
                case wged::Estimator::ebs2:
                case wged::Estimator::ebs3: return "self";
                default: return "linex";
            }
        }();
        return loss_mode == "both" || std::string(l) == "both" || loss_mode == l;
    };

    // Aligned text table, one block per target, in the published layout.
    std::ostringstream text;
    const std::array<std::string, 4> headers = {
        "alpha (q=" + fmt7(settings.q_alpha) + ")",
        "R(t; s, k) (q=" + fmt7(settings.q_reliability) + ", t=" + fmt7(settings.t_reliability) +
            ", k=" + std::to_string(settings.k) + ")",
        "R(t; p, k) (q=" + fmt7(settings.q_reliability) + ", t=" + fmt7(settings.t_reliability) +
            ", k=" + std::to_string(settings.k) + ")",
        "h(t) (q=" + fmt7(settings.q_alpha) + ", t=" + fmt7(settings.t_hazard) + ")"};
    const std::string row_label =
        "m=" + std::to_string(scheme.m()) + "; R=(" + scheme.render() + ")";
    for (size_t ti = 0; ti < 4; ++ti) {
        text << headers[ti] << "\n";
        std::ostringstream head, row;
        head << "m, R";
        row << row_label;
        for (wged::Estimator e : wged::kEstimatorOrder) {
            if (!column_selected(e)) continue;
            head << "\t" << wged::to_string(e);
            row << "\t" << fmt7(grid[ti][static_cast<size_t>(e)]);
        }
        text << head.str() << "\n" << row.str() << "\n\n";
    }
    std::cout << text.str();

    json report = {{"scheme", scheme.render()},
                   {"n", scheme.n},
                   {"m", scheme.m()},
                   {"s_m", summary.s_m},
                   {"lambda", settings.lambda},
                   {"theta", settings.theta},
                   {"prior", {{"a", settings.prior.a}, {"b", settings.prior.b}}},
                   {"hyper",
                    {{"u", settings.hyper.u},
                     {"v", settings.hyper.v},
                     {"c", settings.hyper.c}}},
                   {"q_alpha", settings.q_alpha},
                   {"q_reliability", settings.q_reliability}};
    json targets = json::object();
    for (size_t ti = 0; ti < 4; ++ti) {
        json block = json::object();
        for (wged::Estimator e : wged::kEstimatorOrder) {
            if (!column_selected(e)) continue;
            block[wged::to_string(e)] = grid[ti][static_cast<size_t>(e)];
        }
        targets[wged::to_string(wged::kTargetOrder[ti])] = block;
    }
    report["estimates"] = targets;
    write_text_file(opt.out, report.dump(2) + "\n");

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json config = report;
    config.erase("estimates");
    config["method"] = opt.method;
    config["loss"] = opt.loss;
    write_manifest(opt.out + ".manifest.json", "estimate", config, wall, {opt.out});
    return 0;
}

struct SimulateOptions {
    std::string config_path;
    int reps = 0;
    uint64_t seed = 0;
    bool seed_given = false;
    int threads = 0;
    bool redraw_truth = false;
    std::string out = "wged_sim";
};

int cmd_simulate(const SimulateOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    std::ifstream is(opt.config_path);
    if (!is) throw wged::ParseError("cannot open config file " + opt.config_path);
    json doc;
    try {
        is >> doc;
    } catch (const json::exception& e) {
        throw wged::ParseError(opt.config_path + ": " + e.what());
    }
    wged::SimConfig config = wged::SimConfig::from_json(doc);
    if (opt.reps > 0) config.replications = opt.reps;
    if (opt.seed_given) config.master_seed = opt.seed;
    config.master_seed = resolve_seed(config.master_seed);
    if (opt.redraw_truth) config.redraw_truth = true;
    config.validate();

    const wged::MseTable table = wged::run_simulation(config, opt.threads);
    const std::vector<wged::OrderingVerdict> verdicts = wged::verify_orderings(table);

    const std::filesystem::path dir(opt.out);
    std::filesystem::create_directories(dir);
    std::vector<std::string> outputs;
    auto emit = [&](const std::string& name, auto&& writer) {
        std::ostringstream os;
        writer(os);
        write_text_file(dir / name, os.str());
        outputs.push_back((dir / name).string());
    };
    emit("mse_table.csv", [&](std::ostream& os) { wged::write_mse_csv(os, table); });
    emit("ordering_verdicts.csv",
         [&](std::ostream& os) { wged::write_verdicts_csv(os, verdicts); });
    for (size_t ti = 0; ti < 4; ++ti) {
        emit("fig" + std::to_string(ti + 1) + ".csv", [&](std::ostream& os) {
            wged::write_figure_csv(os, table, wged::kTargetOrder[ti]);
        });
    }

    int failed_links = 0;
    for (const auto& v : verdicts) failed_links += v.pass ? 0 : 1;
    std::cout << "simulation complete: " << config.schemes.size() << " scheme(s), "
              << config.replications << " replications, seed " << config.master_seed
              << "\nordering verdicts: " << (verdicts.size() - failed_links) << "/"
              << verdicts.size() << " pass\noutputs in " << dir.string() << "\n";

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json config_json = doc;
    config_json["replications"] = config.replications;
    config_json["master_seed"] = config.master_seed;
    config_json["redraw_truth"] = config.redraw_truth;
    config_json["threads"] = opt.threads;
    write_manifest(dir / "manifest.json", "simulate", config_json, wall, outputs);
    return 0;
}

struct VerifyOptions {
    std::string suite;
    int trials = 0;
    uint64_t seed = 1;
    std::string out = "wged_verify.json";
};

int cmd_verify(const VerifyOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    const uint64_t seed = resolve_seed(opt.seed);
    wged::VerifySummary summary;
    if (opt.suite == "table2") {
        summary = wged::verify_table2();
    } else if (opt.suite == "oracles") {
        summary = wged::verify_oracles(opt.trials > 0 ? opt.trials : 100, seed);
    } else if (opt.suite == "theorems") {
        summary = wged::verify_theorems(opt.trials > 0 ? opt.trials : 1000, seed);
    } else {
        throw wged::ParseError("--suite must be theorems, table2, or oracles");
    }

    const int failures = summary.failures();
    std::cout << "suite " << summary.suite << ": " << (summary.checks.size() - failures)
              << "/" << summary.checks.size() << " checks pass\n";
    for (const auto& c : summary.checks) {
        if (c.pass) continue;
        std::cout << "  FAIL " << c.label << ": expected " << c.expected << ", got "
                  << c.actual << " (tolerance " << c.tolerance
                  << (c.relative ? " relative" : " absolute") << ")\n";
    }

    json checks = json::array();
    for (const auto& c : summary.checks)
        checks.push_back({{"label", c.label},
                          {"expected", c.expected},
                          {"actual", c.actual},
                          {"tolerance", c.tolerance},
                          {"relative", c.relative},
                          {"pass", c.pass}});
    json report = {{"suite", summary.suite},
                   {"total", summary.checks.size()},
                   {"failures", failures},
                   {"checks", checks}};
    write_text_file(opt.out, report.dump(2) + "\n");

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(opt.out + ".manifest.json", "verify",
                   {{"suite", opt.suite}, {"trials", opt.trials}, {"seed", seed}}, wall,
                   {opt.out});
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Estimation toolkit for the Weibull Generalized Exponential "
                 "distribution under progressive type-II censoring"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    EstimateOptions est;
    CLI::App* estimate = app.add_subcommand(
        "estimate", "Point estimates for alpha, system reliability, and hazard");
    estimate->add_option("--builtin", est.builtin, "Built-in dataset (electric)");
    estimate->add_option("--data", est.data_path, "Data file, one decimal per line");
    estimate->add_option("--n", est.n, "Units on test (defaults to dataset size)");
    estimate->add_option("--scheme", est.scheme, "Removal plan, e.g. 4,4,1,0*7");
    estimate->add_option("--lambda", est.lambda, "Known lambda");
    estimate->add_option("--theta", est.theta, "Known theta");
    estimate->add_option("--prior", est.prior, "Gamma prior: a b")->expected(2);
    estimate->add_option("--hyper", est.hyper, "Hyperprior: u v c")->expected(3);
    estimate->add_option("--loss", est.loss, "self | linex:Q | both (default both)");
    estimate->add_option("--t", est.t, "Reliability time");
    estimate->add_option("--k", est.k, "Number of system components");
    estimate->add_option("--t-hazard", est.t_hazard, "Hazard evaluation time");
    estimate->add_option("--method", est.method,
                         "all | mle | bayes | ebayes1 | ebayes2 | ebayes3");
    estimate->add_option("--out", est.out, "JSON report path");

    SimulateOptions sim;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Replicated MSE comparison of all estimators");
    simulate->add_option("--config", sim.config_path, "Simulation JSON config")
        ->required();
    simulate->add_option("--reps", sim.reps, "Override replication count");
    simulate->add_option("--seed", sim.seed, "Master seed (WGED_SEED overrides)")
        ->each([&](const std::string&) { sim.seed_given = true; });
    simulate->add_option("--threads", sim.threads, "Worker count (0 = hardware)");
    simulate->add_flag("--redraw-truth", sim.redraw_truth,
                       "Re-sample (a, b, alpha) each replication");
    simulate->add_option("--out", sim.out, "Output directory");

    VerifyOptions ver;
    CLI::App* verify =
        app.add_subcommand("verify", "Self-verification suites (exit 1 on failure)");
    verify->add_option("--suite", ver.suite, "theorems | table2 | oracles")->required();
    verify->add_option("--trials", ver.trials, "Random configurations to sweep");
    verify->add_option("--seed", ver.seed, "Sweep seed (WGED_SEED overrides)");
    verify->add_option("--out", ver.out, "JSON verdict path");

    try {
        app.parse(argc, argv);
        if (estimate->parsed()) return cmd_estimate(est);
        if (simulate->parsed()) return cmd_simulate(sim);
        if (verify->parsed()) return cmd_verify(ver);
        return 2;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion" ? 0 : 2;
    } catch (const wged::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const wged::ConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << " (best estimate "
                  << e.best_estimate() << ", error bound " << e.error_bound() << ")\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

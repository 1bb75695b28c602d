#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "mpadet/config.hpp"
#include "mpadet/engine.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    int m = -1, n = -1, q = -1;
    double rho = -1.0;
    std::vector<double> esn0;
    std::vector<std::string> algs;
    long trials = -1;
    long seed = -1;
    std::string out;
    int workers = -1;
};

void attach_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--M", o.m, "number of unknowns (transmitters)");
    cmd->add_option("--N", o.n, "number of observations (receive antennas)");
    cmd->add_option("--Q", o.q, "QAM order (4, 16, 64)");
    cmd->add_option("--rho", o.rho, "receive correlation coefficient");
    cmd->add_option("--esn0", o.esn0, "Es/N0 points in dB")->delimiter(',');
    cmd->add_option("--alg", o.algs,
                    "algorithms: gabp[-add], mfep[-add], gamp[-add], lmmse, lmmse-ep, mfb")
        ->delimiter(',');
    cmd->add_option("--trials", o.trials, "Monte-Carlo trials per point");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--out", o.out, "output path prefix");
    cmd->add_option("--workers", o.workers, "worker threads");
}

mpadet::ExperimentConfig resolve(const CommonOpts& o) {
    mpadet::ExperimentConfig cfg;
    if (!o.config_path.empty()) cfg = mpadet::load_config(o.config_path);
    if (o.m >= 0) cfg.m = o.m;
    if (o.n >= 0) cfg.n = o.n;
    if (o.q >= 0) cfg.q = o.q;
    if (o.rho >= 0.0) cfg.rho = o.rho;
    if (!o.esn0.empty()) cfg.esn0_db = o.esn0;
    if (!o.algs.empty()) {
        cfg.algorithms.clear();
        for (const auto& tok : o.algs) cfg.algorithms.push_back(mpadet::parse_algorithm(tok));
    }
    if (o.trials >= 0) {
        cfg.trials = o.trials;
        cfg.target_bit_errors = 0;
    }
    if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
    if (!o.out.empty()) cfg.out = o.out;
    if (o.workers >= 0) cfg.workers = o.workers;
    if (cfg.algorithms.empty()) {
        cfg.algorithms = {mpadet::parse_algorithm("gamp-add")};
    }
    return cfg;
}

void report(const std::vector<std::string>& files) {
    for (const auto& f : files) std::cout << "wrote " << f << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-signal estimation via message passing: Monte-Carlo simulator"};
    app.require_subcommand(1);

    CommonOpts ber_opts, rho_opts, iter_opts, corr_opts, hist_opts;
    auto* ber = app.add_subcommand("ber-sweep", "BER vs Es/N0");
    attach_common(ber, ber_opts);
    auto* rho = app.add_subcommand("rho-sweep", "BER vs correlation coefficient");
    attach_common(rho, rho_opts);
    std::vector<double> rho_points;
    rho->add_option("--rho-list", rho_points, "correlation points")->delimiter(',');
    auto* iter = app.add_subcommand("iter-trace", "BER vs iteration index");
    attach_common(iter, iter_opts);
    std::vector<int> t_list;
    iter->add_option("--T-list", t_list, "iteration counts to trace")->delimiter(',');
    auto* corr = app.add_subcommand("corr-diag", "effective-noise correlation snapshots");
    attach_common(corr, corr_opts);
    std::vector<int> snapshot_ts;
    corr->add_option("--snapshots", snapshot_ts, "snapshot iterations")->delimiter(',');
    auto* hist = app.add_subcommand("histogram", "standardized belief-residual histogram");
    attach_common(hist, hist_opts);
    int hist_t = -1;
    hist->add_option("--t", hist_t, "snapshot iteration for the histogram");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ber->parsed()) {
            report(mpadet::ber_sweep_command(resolve(ber_opts)));
        } else if (rho->parsed()) {
            auto cfg = resolve(rho_opts);
            if (!rho_points.empty()) cfg.rho_list = rho_points;
            report(mpadet::rho_sweep_command(cfg));
        } else if (iter->parsed()) {
            auto cfg = resolve(iter_opts);
            if (!t_list.empty()) cfg.iteration_list = t_list;
            report(mpadet::iter_trace_command(cfg));
        } else if (corr->parsed()) {
            auto cfg = resolve(corr_opts);
            if (!snapshot_ts.empty()) cfg.snapshot_ts = snapshot_ts;
            report(mpadet::corr_diag_command(cfg));
        } else if (hist->parsed()) {
            auto cfg = resolve(hist_opts);
            if (hist_t >= 1) cfg.hist_t = hist_t;
            report(mpadet::histogram_command(cfg));
        }
    } catch (const mpadet::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

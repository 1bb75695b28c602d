#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mpadet/config.hpp"
#include "mpadet/diagnostics.hpp"

namespace mpadet {

struct BerRecord {
    std::string algorithm;
    std::string denoiser_mode;
    int m = 0, n = 0, q = 0;
    double rho = 0.0;
    double esn0_db = 0.0;
    int iterations = 0;
    long bits = 0;
    long bit_errors = 0;
    double ber = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    long trials = 0;
    long diverged_trials = 0;
    double wall_seconds = 0.0;  // reported in the metadata JSON, not the CSV body
};

struct IterationBerRecord {
    std::string algorithm;
    std::string denoiser_mode;
    int m = 0, n = 0, q = 0;
    double rho = 0.0;
    double esn0_db = 0.0;
    int iterations = 0;
    int t = 0;  // 0 is the pre-iteration prior-mean decision
    long bits = 0;
    long bit_errors = 0;
    double ber = 0.0;
};

struct GammaSnapshot {
    std::string algorithm;
    std::string denoiser_mode;
    int t = 0;
    long trials = 0;
    Eigen::MatrixXcd gamma;
    double mean_offdiag = 0.0;
    double max_offdiag = 0.0;
};

struct HistogramResult {
    std::string algorithm;
    std::string denoiser_mode;
    int t = 0;
    BeliefHistogram hist;
};

// Monte-Carlo sweeps. Every trial draws a fresh (A, x, w); all algorithms of
// a point consume the identical realization. Trials run in fixed-size chunks
// whose accumulators merge in chunk order, so results do not depend on the
// worker count.
std::vector<BerRecord> run_ber_sweep(const ExperimentConfig& cfg);
std::vector<BerRecord> run_rho_sweep(const ExperimentConfig& cfg);
std::vector<IterationBerRecord> run_iteration_trace(const ExperimentConfig& cfg);
std::vector<GammaSnapshot> run_corr_diagnostic(const ExperimentConfig& cfg);
std::vector<HistogramResult> run_histogram(const ExperimentConfig& cfg);

void write_ber_csv(const std::vector<BerRecord>& records, std::ostream& os);
void write_iteration_csv(const std::vector<IterationBerRecord>& records, std::ostream& os);
void write_gamma_csv(const GammaSnapshot& snap, std::ostream& os);
void write_gamma_summary_csv(const std::vector<GammaSnapshot>& snaps, std::ostream& os);
void write_histogram_csv(const HistogramResult& result, std::ostream& os);
void write_histogram_summary_csv(const std::vector<HistogramResult>& results, std::ostream& os);

// Full CLI commands: run the sweep, write CSV outputs plus a metadata JSON
// next to them, and return the written paths.
std::vector<std::string> ber_sweep_command(const ExperimentConfig& cfg);
std::vector<std::string> rho_sweep_command(const ExperimentConfig& cfg);
std::vector<std::string> iter_trace_command(const ExperimentConfig& cfg);
std::vector<std::string> corr_diag_command(const ExperimentConfig& cfg);
std::vector<std::string> histogram_command(const ExperimentConfig& cfg);

}  // namespace mpadet

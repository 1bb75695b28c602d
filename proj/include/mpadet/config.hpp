#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpadet/detectors.hpp"

namespace mpadet {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlgorithmSpec {
    Algorithm algorithm = Algorithm::GaBP;
    DenoiserMode denoiser_mode = DenoiserMode::Plain;
};

// token forms: gabp, mfep, gamp (optionally with an -add suffix for the
// annealed denoiser), lmmse, lmmse-ep, mfb
AlgorithmSpec parse_algorithm(const std::string& token);
std::string algorithm_name(Algorithm alg);
std::string denoiser_mode_name(DenoiserMode mode);
std::string algorithm_token(const AlgorithmSpec& spec);
bool is_message_passing(Algorithm alg);

struct ExperimentConfig {
    int m = 16;
    int n = 32;
    int q = 4;
    double rho = 0.0;
    std::vector<double> esn0_db = {10.0};
    std::vector<double> rho_list;     // rho-sweep points
    int iterations = 64;              // T
    std::vector<int> iteration_list;  // iter-trace T values; defaults to {T}
    double damping = 0.5;
    double d1 = 3.0;
    double d2 = 2.0;
    std::vector<AlgorithmSpec> algorithms;
    long trials = 0;
    long target_bit_errors = 0;
    long max_trials = 1000000;  // cap when stopping on a bit-error target
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out = "out";
    std::vector<int> snapshot_ts = {4, 20, 40, 60};
    int hist_bins = 161;
    double hist_range_sigma = 8.0;
    int hist_t = 60;

    double xi() const { return static_cast<double>(n) / m; }
    long bits_per_trial() const;

    // throws ConfigError on any invalid field or field combination
    void validate() const;

    DetectorConfig detector_config(const AlgorithmSpec& spec, TraceLevel trace) const;
};

ExperimentConfig load_config(const std::string& json_path);
ExperimentConfig parse_config_json(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace mpadet

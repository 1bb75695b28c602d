#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "mpadet/constellation.hpp"
#include "mpadet/denoiser.hpp"

namespace mpadet {

enum class Algorithm { GaBP, MfEp, Gamp, Lmmse, LmmseEp, Mfb };
enum class DenoiserMode { Plain, Annealed };
enum class TraceLevel { None, BerOnly, Full };

struct DetectorConfig {
    Algorithm algorithm = Algorithm::GaBP;
    int iterations = 64;
    double damping = 0.5;  // blend factor on the LE outputs, 1 disables
    DenoiserMode denoiser_mode = DenoiserMode::Plain;
    double anneal_d1 = 3.0;
    double anneal_d2 = 2.0;
    TraceLevel trace = TraceLevel::None;
    bool damp_variances = true;      // damp LE variances along with the means
    bool annealed_consensus = true;  // GaBP final consensus uses beta(T) when annealed
    bool keep_edge_state = false;    // snapshot the final per-edge state (tests)
    double divergence_limit = 1e6;   // trip when |LE mean| exceeds this times sqrt(Es)
};

struct IterationRecord {
    Eigen::VectorXcd belief_mean;      // per-symbol LE output fed to the denoiser
    Eigen::VectorXd belief_var;        // its estimated variance
    Eigen::VectorXcd effective_noise;  // post-IC residual e^(t)
    long bit_errors = -1;              // instantaneous hard-decision errors, -1 if unknown
};

// Final-iteration per-edge quantities of GaBP / MF-EP, kept for tests and
// belief diagnostics. x_bar/v_bar are the (damped) LE outputs of iteration T;
// x_check/v_check the replicas produced by its NLE.
struct EdgeStateSnapshot {
    Eigen::MatrixXcd y_tilde;
    Eigen::MatrixXd psi;
    Eigen::MatrixXcd x_bar;
    Eigen::MatrixXd v_bar;
    Eigen::MatrixXcd x_check;
    Eigen::MatrixXd v_check;
};

struct DetectorRun {
    Eigen::VectorXcd soft_means;
    std::vector<std::uint8_t> hard_bits;
    bool diverged = false;
    int iterations_completed = 0;
    long prior_bit_errors = -1;  // decisions from the prior mean (iteration 0)
    std::vector<IterationRecord> trace;
    std::optional<EdgeStateSnapshot> edge_state;
};

// Linear damping of LE outputs; the first iteration passes the new values
// through unchanged.
std::pair<cplx, double> apply_damping(cplx new_mean, double new_var, cplx prev_mean,
                                      double prev_var, double delta, bool first_iteration = false);

DetectorRun run_gabp(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& a, double n0,
                     const Constellation& cons, const DetectorConfig& cfg,
                     const Eigen::VectorXcd* x_true = nullptr);

DetectorRun run_mfep(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& a, double n0,
                     const Constellation& cons, const DetectorConfig& cfg,
                     const Eigen::VectorXcd* x_true = nullptr);

DetectorRun run_gamp(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& a, double n0,
                     const Constellation& cons, const DetectorConfig& cfg,
                     const Eigen::VectorXcd* x_true = nullptr);

DetectorRun run_lmmse(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& a, double n0,
                      const Constellation& cons);

DetectorRun run_lmmse_ep(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& a, double n0,
                         const Constellation& cons, const DetectorConfig& cfg,
                         const Eigen::VectorXcd* x_true = nullptr);

// Genie interference cancellation followed by matched filtering; the lower
// bound every detector is measured against.
DetectorRun run_mfb(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& a,
                    const Eigen::VectorXcd& x_true, double n0, const Constellation& cons);

DetectorRun run_detector(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& a, double n0,
                         const Constellation& cons, const DetectorConfig& cfg,
                         const Eigen::VectorXcd* x_true = nullptr);

// Bit errors of hard decisions against the true symbols (exact constellation
// points); used by the harness and by instantaneous BER traces.
long count_bit_errors(const Constellation& cons, const std::vector<std::uint8_t>& hard_bits,
                      const Eigen::VectorXcd& x_true);

}  // namespace mpadet

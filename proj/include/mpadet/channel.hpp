#pragma once

#include <Eigen/Dense>

#include "mpadet/constellation.hpp"
#include "mpadet/rng.hpp"

namespace mpadet {

// Exponential receive-correlation matrix: unit diagonal, rho^|i-j| off it.
Eigen::MatrixXd exp_correlation(double rho, int n);

// Hermitian PSD square root B with B * B^H = R, via eigendecomposition.
// Rejects inputs that are not Hermitian positive definite.
Eigen::MatrixXcd matrix_sqrt(const Eigen::MatrixXcd& r);

// Kronecker-model channel A = R_rx^{1/2} G with i.i.d. CN(0,1) small-scale
// fading G; transmit-side correlation is identity. The correlation root is
// computed once and reused across draws.
class ChannelSampler {
public:
    ChannelSampler(int inputs, int outputs, double rho_rx);

    int inputs() const { return inputs_; }
    int outputs() const { return outputs_; }
    double rho() const { return rho_; }
    const Eigen::MatrixXd& correlation_root() const { return root_; }

    Eigen::MatrixXcd sample(Philox& rng) const;

private:
    int inputs_;
    int outputs_;
    double rho_;
    Eigen::MatrixXd root_;  // empty when rho == 0
};

struct Observation {
    Eigen::VectorXcd y;
    Eigen::VectorXcd x_true;
    Eigen::VectorXcd w;
    std::vector<int> symbol_indices;
    double n0 = 0.0;
};

// N0 = Es * 10^(-EsN0[dB]/10)
double noise_power(double symbol_energy, double esn0_db);

// Draws uniform symbols and AWGN, then forms y = A x + w. Symbols are drawn
// before the noise so a trial's stream is consumed in a fixed order.
Observation make_observation(const Eigen::MatrixXcd& a, const Constellation& cons,
                             double esn0_db, Philox& rng);

}  // namespace mpadet

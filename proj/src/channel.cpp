#include "mpadet/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace mpadet {

Eigen::MatrixXd exp_correlation(double rho, int n) {
    if (!(rho >= 0.0 && rho < 1.0)) {
        throw std::invalid_argument("exp_correlation: rho must lie in [0, 1)");
    }
    if (n < 1) throw std::invalid_argument("exp_correlation: dimension must be positive");
    Eigen::MatrixXd r(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            r(i, j) = (i == j) ? 1.0 : std::pow(rho, std::abs(i - j));
        }
    }
    return r;
}

Eigen::MatrixXcd matrix_sqrt(const Eigen::MatrixXcd& r) {
    if (r.rows() != r.cols()) throw std::invalid_argument("matrix_sqrt: matrix must be square");
    const double scale = r.cwiseAbs().maxCoeff();
    if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1.0)) {
        throw std::invalid_argument("matrix_sqrt: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(r);
    if (eig.info() != Eigen::Success) throw std::runtime_error("matrix_sqrt: eigendecomposition failed");
    const Eigen::VectorXd& ev = eig.eigenvalues();
    if (ev.minCoeff() <= 1e-12 * std::max(ev.maxCoeff(), 1.0)) {
        throw std::invalid_argument("matrix_sqrt: matrix is not positive definite");
    }
    return eig.eigenvectors() * ev.cwiseSqrt().asDiagonal() * eig.eigenvectors().adjoint();
}

ChannelSampler::ChannelSampler(int inputs, int outputs, double rho_rx)
    : inputs_(inputs), outputs_(outputs), rho_(rho_rx) {
    if (inputs < 1 || outputs < 1) throw std::invalid_argument("ChannelSampler: dimensions must be positive");
    if (!(rho_rx >= 0.0 && rho_rx < 1.0)) throw std::invalid_argument("ChannelSampler: rho must lie in [0, 1)");
    if (rho_rx > 0.0) {
        root_ = matrix_sqrt(exp_correlation(rho_rx, outputs).cast<cplx>()).real();
    }
}

Eigen::MatrixXcd ChannelSampler::sample(Philox& rng) const {
    Eigen::MatrixXcd g(outputs_, inputs_);
    for (int n = 0; n < outputs_; ++n) {
        for (int m = 0; m < inputs_; ++m) {
            g(n, m) = rng.next_cgaussian();
        }
    }
    if (rho_ == 0.0) return g;
    return root_ * g;
}

double noise_power(double symbol_energy, double esn0_db) {
    return symbol_energy * std::pow(10.0, -esn0_db / 10.0);
}

Observation make_observation(const Eigen::MatrixXcd& a, const Constellation& cons,
                             double esn0_db, Philox& rng) {
    const int m_dim = static_cast<int>(a.cols());
    const int n_dim = static_cast<int>(a.rows());

    Observation obs;
    obs.n0 = noise_power(cons.symbol_energy(), esn0_db);
    obs.x_true.resize(m_dim);
    obs.symbol_indices.resize(static_cast<std::size_t>(m_dim));
    for (int m = 0; m < m_dim; ++m) {
        const int idx = rng.next_index_pow2(cons.size());
        obs.symbol_indices[static_cast<std::size_t>(m)] = idx;
        obs.x_true(m) = cons.points()[static_cast<std::size_t>(idx)];
    }

    const double w_scale = std::sqrt(obs.n0);
    obs.w.resize(n_dim);
    for (int n = 0; n < n_dim; ++n) {
        obs.w(n) = w_scale * rng.next_cgaussian();
    }

    obs.y = a * obs.x_true + obs.w;
    return obs;
}

}  // namespace mpadet

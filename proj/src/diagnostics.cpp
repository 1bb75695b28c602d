#include "mpadet/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mpadet {

Eigen::VectorXcd effective_noise_edges(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& a,
                                       const Eigen::MatrixXcd& x_check) {
    if (a.rows() != y.size() || a.rows() != x_check.rows() || a.cols() != x_check.cols()) {
        throw std::invalid_argument("effective_noise_edges: dimension mismatch");
    }
    return y - (a.cwiseProduct(x_check)).rowwise().sum();
}

Eigen::VectorXcd effective_noise_gamp(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& a,
                                      const Eigen::VectorXcd& x_check,
                                      const Eigen::VectorXd& gamma,
                                      const Eigen::VectorXcd& s_prev) {
    if (a.rows() != y.size() || a.cols() != x_check.size() || gamma.size() != y.size() ||
        s_prev.size() != y.size()) {
        throw std::invalid_argument("effective_noise_gamp: dimension mismatch");
    }
    return y - a * x_check + gamma.cast<cplx>().cwiseProduct(s_prev);
}

CorrAccumulator::CorrAccumulator(int dim) {
    if (dim < 1) throw std::invalid_argument("CorrAccumulator: dimension must be positive");
    cross_ = Eigen::MatrixXcd::Zero(dim, dim);
    power_ = Eigen::VectorXd::Zero(dim);
}

void CorrAccumulator::accumulate(const Eigen::VectorXcd& e) {
    if (e.size() != power_.size()) throw std::invalid_argument("CorrAccumulator: dimension mismatch");
    cross_.noalias() += e.conjugate() * e.transpose();
    power_ += e.cwiseAbs2();
    ++trials_;
}

void CorrAccumulator::merge(const CorrAccumulator& other) {
    if (other.power_.size() != power_.size()) {
        throw std::invalid_argument("CorrAccumulator: dimension mismatch");
    }
    cross_ += other.cross_;
    power_ += other.power_;
    trials_ += other.trials_;
}

Eigen::MatrixXcd CorrAccumulator::finalize() const {
    if (trials_ == 0) throw std::logic_error("CorrAccumulator: no trials accumulated");
    const int n = dim();
    Eigen::MatrixXcd gamma(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            gamma(i, j) = (i == j) ? cplx{1.0, 0.0}
                                   : cross_(i, j) / std::sqrt(power_(i) * power_(j));
        }
    }
    return gamma;
}

double mean_offdiagonal_magnitude(const Eigen::MatrixXcd& gamma) {
    const Eigen::Index n = gamma.rows();
    if (n < 2) return 0.0;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i != j) sum += std::abs(gamma(i, j));
        }
    }
    return sum / static_cast<double>(n * (n - 1));
}

double BeliefHistogram::tail_fraction(int k) const {
    if (samples == 0) return 0.0;
    const long c = k <= 3 ? tail3 : (k == 4 ? tail4 : tail5);
    return static_cast<double>(c) / static_cast<double>(samples);
}

HistogramAccumulator::HistogramAccumulator(int bins, double half_range)
    : half_range_(half_range), width_(2.0 * half_range / bins), counts_(static_cast<std::size_t>(bins), 0) {
    if (bins < 1) throw std::invalid_argument("HistogramAccumulator: need at least one bin");
    if (!(half_range > 0.0)) throw std::invalid_argument("HistogramAccumulator: range must be positive");
}

void HistogramAccumulator::add(double r) {
    if (!std::isfinite(r)) throw std::invalid_argument("HistogramAccumulator: non-finite residual");
    const double a = std::abs(r);
    if (a > 3.0) ++tail3_;
    if (a > 4.0) ++tail4_;
    if (a > 5.0) ++tail5_;
    auto bin = static_cast<long>(std::floor((r + half_range_) / width_));
    bin = std::clamp(bin, 0L, static_cast<long>(counts_.size()) - 1);
    ++counts_[static_cast<std::size_t>(bin)];
    ++samples_;
}

void HistogramAccumulator::add_residuals(const Eigen::VectorXcd& belief_mean,
                                         const Eigen::VectorXd& belief_var,
                                         const Eigen::VectorXcd& x_true) {
    if (belief_mean.size() != belief_var.size() || belief_mean.size() != x_true.size()) {
        throw std::invalid_argument("HistogramAccumulator: dimension mismatch");
    }
    for (Eigen::Index m = 0; m < belief_mean.size(); ++m) {
        if (!(belief_var(m) > 0.0)) {
            throw std::invalid_argument("HistogramAccumulator: non-positive belief variance");
        }
        const double sigma = std::sqrt(belief_var(m) / 2.0);
        const cplx r = belief_mean(m) - x_true(m);
        add(r.real() / sigma);
        add(r.imag() / sigma);
    }
}

void HistogramAccumulator::merge(const HistogramAccumulator& other) {
    if (other.counts_.size() != counts_.size() || other.half_range_ != half_range_) {
        throw std::invalid_argument("HistogramAccumulator: incompatible layouts");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    samples_ += other.samples_;
    tail3_ += other.tail3_;
    tail4_ += other.tail4_;
    tail5_ += other.tail5_;
}

BeliefHistogram HistogramAccumulator::finalize() const {
    BeliefHistogram h;
    const std::size_t bins = counts_.size();
    h.edges.resize(bins + 1);
    h.density.resize(bins);
    h.ideal.resize(bins);
    h.samples = samples_;
    h.tail3 = tail3_;
    h.tail4 = tail4_;
    h.tail5 = tail5_;
    const double norm = samples_ > 0 ? 1.0 / (static_cast<double>(samples_) * width_) : 0.0;
    for (std::size_t i = 0; i <= bins; ++i) {
        h.edges[i] = -half_range_ + width_ * static_cast<double>(i);
    }
    for (std::size_t i = 0; i < bins; ++i) {
        const double center = -half_range_ + width_ * (static_cast<double>(i) + 0.5);
        h.density[i] = static_cast<double>(counts_[i]) * norm;
        h.ideal[i] = std::exp(-0.5 * center * center) / std::sqrt(2.0 * std::numbers::pi);
    }
    return h;
}

BeliefHistogram belief_residual_histogram(const Eigen::VectorXcd& belief_mean,
                                          const Eigen::VectorXd& belief_var,
                                          const Eigen::VectorXcd& x_true, int bins,
                                          double half_range) {
    HistogramAccumulator acc(bins, half_range);
    acc.add_residuals(belief_mean, belief_var, x_true);
    return acc.finalize();
}

}  // namespace mpadet

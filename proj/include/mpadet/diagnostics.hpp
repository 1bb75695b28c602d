#pragma once

#include <Eigen/Dense>

#include <vector>

#include "mpadet/constellation.hpp"

namespace mpadet {

// Post-IC effective noise, per observation. The edge-replica branch covers
// GaBP and MF-EP; the GAMP branch adds the Onsager term back.
Eigen::VectorXcd effective_noise_edges(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& a,
                                       const Eigen::MatrixXcd& x_check);
Eigen::VectorXcd effective_noise_gamp(const Eigen::VectorXcd& y, const Eigen::MatrixXcd& a,
                                      const Eigen::VectorXcd& x_check,
                                      const Eigen::VectorXd& gamma,
                                      const Eigen::VectorXcd& s_prev);

// Streaming second moments of the effective noise across trials. Mergeable:
// merging two accumulators equals accumulating their trials into one.
class CorrAccumulator {
public:
    explicit CorrAccumulator(int dim);

    int dim() const { return static_cast<int>(power_.size()); }
    long trial_count() const { return trials_; }

    void accumulate(const Eigen::VectorXcd& e);
    void merge(const CorrAccumulator& other);

    // normalized correlation matrix: unit diagonal, entry (i,j) is
    // sum(conj(e_i) e_j) / sqrt(sum|e_i|^2 sum|e_j|^2)
    Eigen::MatrixXcd finalize() const;

private:
    Eigen::MatrixXcd cross_;
    Eigen::VectorXd power_;
    long trials_ = 0;
};

double mean_offdiagonal_magnitude(const Eigen::MatrixXcd& gamma);

struct BeliefHistogram {
    std::vector<double> edges;    // bins + 1 entries
    std::vector<double> density;  // normalized so sum(density * width) == 1
    std::vector<double> ideal;    // standard normal pdf at bin centers
    long samples = 0;
    long tail3 = 0;  // |r| > 3
    long tail4 = 0;
    long tail5 = 0;

    double tail_fraction(int k) const;
};

// Pools standardized belief residuals Re/Im[(belief - truth)] / sqrt(v/2).
// Out-of-range values land in the boundary bins so the density keeps unit
// mass; the tail counters see the raw values.
class HistogramAccumulator {
public:
    HistogramAccumulator(int bins, double half_range);

    void add(double r);
    void add_residuals(const Eigen::VectorXcd& belief_mean, const Eigen::VectorXd& belief_var,
                       const Eigen::VectorXcd& x_true);
    void merge(const HistogramAccumulator& other);
    long samples() const { return samples_; }

    BeliefHistogram finalize() const;

private:
    double half_range_;
    double width_;
    std::vector<long> counts_;
    long samples_ = 0;
    long tail3_ = 0, tail4_ = 0, tail5_ = 0;
};

BeliefHistogram belief_residual_histogram(const Eigen::VectorXcd& belief_mean,
                                          const Eigen::VectorXd& belief_var,
                                          const Eigen::VectorXcd& x_true, int bins,
                                          double half_range);

}  // namespace mpadet

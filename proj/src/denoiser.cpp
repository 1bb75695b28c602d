#include "mpadet/denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mpadet {

namespace {

constexpr int kMaxPoints = 64;

void check_inputs(const Constellation& cons, cplx y, double v, const char* what) {
    if (cons.size() > kMaxPoints) throw std::invalid_argument("denoiser: constellation too large");
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + ": variance must be positive");
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
        throw std::invalid_argument(std::string(what) + ": non-finite input");
    }
}

}  // namespace

DenoiseResult bayes_denoise(const Constellation& cons, cplx y, double v) {
    check_inputs(cons, y, v, "bayes_denoise");
    const auto& pts = cons.points();
    const auto& logp = cons.log_probs();
    const int q_count = cons.size();

    double alpha[kMaxPoints];
    double alpha_max = -std::numeric_limits<double>::infinity();
    for (int q = 0; q < q_count; ++q) {
        alpha[q] = logp[static_cast<std::size_t>(q)] - std::norm(y - pts[static_cast<std::size_t>(q)]) / v;
        alpha_max = std::max(alpha_max, alpha[q]);
    }

    double z = 0.0;
    cplx first{0.0, 0.0};
    double second = 0.0;
    for (int q = 0; q < q_count; ++q) {
        const double w = std::exp(alpha[q] - alpha_max);
        z += w;
        first += w * pts[static_cast<std::size_t>(q)];
        second += w * std::norm(pts[static_cast<std::size_t>(q)]);
    }

    const cplx mean = first / z;
    const double var = second / z - std::norm(mean);
    return {mean, std::max(var, 0.0)};
}

DenoiseResult annealed_denoise(const Constellation& cons, cplx y, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("annealed_denoise: beta must be positive");
    return bayes_denoise(cons, y, 1.0 / beta);
}

int posterior_mode(const Constellation& cons, cplx y, double v) {
    check_inputs(cons, y, v, "posterior_mode");
    const auto& pts = cons.points();
    const auto& logp = cons.log_probs();
    int best = 0;
    double best_alpha = -std::numeric_limits<double>::infinity();
    for (int q = 0; q < cons.size(); ++q) {
        const double a = logp[static_cast<std::size_t>(q)] - std::norm(y - pts[static_cast<std::size_t>(q)]) / v;
        if (a > best_alpha) {
            best_alpha = a;
            best = q;
        }
    }
    return best;
}

double AnnealSchedule::beta_at(int t) const {
    if (t < 1 || t > iterations) throw std::out_of_range("AnnealSchedule::beta_at: t outside 1..T");
    return d1 / c_sq * std::pow(static_cast<double>(t) / iterations, d2);
}

}  // namespace mpadet

#pragma once

#include "mpadet/constellation.hpp"

namespace mpadet {

struct DenoiseResult {
    cplx mean;   // posterior mean
    double var;  // posterior variance (second moment minus |mean|^2)
};

// Posterior mean/variance of a discrete prior seen through a virtual AWGN
// channel y = x + w, w ~ CN(0, v). Softmax over the log posterior with
// max-subtraction, so small v degrades gracefully to the nearest point.
DenoiseResult bayes_denoise(const Constellation& cons, cplx y, double v);

// Same denoiser driven by an inverse temperature instead of the estimated
// belief variance: identical to bayes_denoise(cons, y, 1/beta).
DenoiseResult annealed_denoise(const Constellation& cons, cplx y, double beta);

// Index of the largest posterior weight; equals the nearest point for a
// uniform prior. Ties resolve to the lowest index.
int posterior_mode(const Constellation& cons, cplx y, double v);

// beta(t) = (d1 / c^2) * (t / T)^d2 for t in 1..T
struct AnnealSchedule {
    double d1 = 3.0;
    double d2 = 2.0;
    int iterations = 64;
    double c_sq = 0.5;

    double beta_at(int t) const;
};

}  // namespace mpadet

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <vector>

#include "mpadet/channel.hpp"
#include "mpadet/detectors.hpp"

using namespace mpadet;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

struct Trial {
    MatrixXcd a;
    Observation obs;
};

Trial make_trial(int m, int n, double rho, double esn0_db, const Constellation& cons,
                 std::uint64_t seed, std::uint64_t stream) {
    const ChannelSampler sampler(m, n, rho);
    Philox rng(seed, stream);
    Trial t;
    t.a = sampler.sample(rng);
    t.obs = make_observation(t.a, cons, esn0_db, rng);
    return t;
}

DetectorConfig base_config(Algorithm alg, int iterations, DenoiserMode mode = DenoiserMode::Plain) {
    DetectorConfig cfg;
    cfg.algorithm = alg;
    cfg.iterations = iterations;
    cfg.denoiser_mode = mode;
    return cfg;
}

double ber_over_trials(Algorithm alg, int m, int n, double rho, double esn0_db, int iterations,
                       int trials, std::uint64_t seed, long* errors_out = nullptr) {
    const auto cons = Constellation::qam(4, 1.0);
    const ChannelSampler sampler(m, n, rho);
    long errors = 0, bits = 0;
    for (int trial = 0; trial < trials; ++trial) {
        Philox rng(seed, static_cast<std::uint64_t>(trial));
        const MatrixXcd a = sampler.sample(rng);
        const Observation obs = make_observation(a, cons, esn0_db, rng);
        const DetectorConfig cfg = base_config(alg, iterations);
        const DetectorRun run = run_detector(obs.y, a, obs.n0, cons, cfg, &obs.x_true);
        bits += 2 * m;
        errors += run.diverged ? m : count_bit_errors(cons, run.hard_bits, obs.x_true);
    }
    if (errors_out) *errors_out = errors;
    return static_cast<double>(errors) / static_cast<double>(bits);
}

}  // namespace

TEST_SUITE_BEGIN("detectors");

TEST_CASE("damping blends LE outputs linearly") {
    const auto [m1, v1] = apply_damping(cplx{2.0, 0.0}, 4.0, cplx{0.0, 0.0}, 0.0, 1.0);
    CHECK(m1 == cplx{2.0, 0.0});
    CHECK(v1 == 4.0);

    const auto [m2, v2] = apply_damping(cplx{2.0, 2.0}, 4.0, cplx{2.0, 2.0}, 4.0, 0.5);
    CHECK(m2 == cplx{2.0, 2.0});
    CHECK(v2 == 4.0);

    const auto [m3, v3] = apply_damping(cplx{2.0, 0.0}, 2.0, cplx{0.0, 0.0}, 0.0, 0.5);
    CHECK(m3 == cplx{1.0, 0.0});
    CHECK(v3 == 1.0);

    const auto [m4, v4] = apply_damping(cplx{2.0, 0.0}, 2.0, cplx{9.0, 9.0}, 9.0, 0.5, true);
    CHECK(m4 == cplx{2.0, 0.0});  // first iteration passes through
    CHECK(v4 == 2.0);

    CHECK_THROWS_AS(apply_damping({1, 0}, 1, {0, 0}, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_damping({1, 0}, 1, {0, 0}, 0, 1.5), std::invalid_argument);
}

TEST_CASE("uninformative likelihood keeps the prior (all MPAs)") {
    const auto cons = Constellation::qam(4, 1.0);
    const auto trial = make_trial(8, 12, 0.0, -40.0, cons, 11, 0);
    for (Algorithm alg : {Algorithm::GaBP, Algorithm::MfEp, Algorithm::Gamp}) {
        DetectorConfig cfg = base_config(alg, 1);
        cfg.trace = TraceLevel::Full;
        const auto run = run_detector(trial.obs.y, trial.a, trial.obs.n0, cons, cfg, nullptr);
        CHECK_FALSE(run.diverged);
        CHECK(run.soft_means.cwiseAbs().maxCoeff() < 0.12);  // tiny against |x| ~ 0.7
        // the denoiser sees a huge variance, so its output variance stays at Es
        const auto& rec = run.trace.at(0);
        for (int m = 0; m < 8; ++m) {
            const auto d = bayes_denoise(cons, rec.belief_mean(m), rec.belief_var(m));
            CHECK(d.var == doctest::Approx(1.0).epsilon(0.02));
        }
    }
}

TEST_CASE("single-edge GaBP reduces to the scalar AWGN denoiser") {
    const auto cons = Constellation::qam(4, 1.0);
    Philox rng(21, 0);
    const cplx a11 = rng.next_cgaussian();
    const cplx x = cons.points()[2];
    const double n0 = 0.2;
    const cplx w = std::sqrt(n0) * rng.next_cgaussian();
    MatrixXcd a(1, 1);
    a(0, 0) = a11;
    VectorXcd y(1);
    y(0) = a11 * x + w;

    DetectorConfig cfg = base_config(Algorithm::GaBP, 1);
    cfg.trace = TraceLevel::Full;
    const auto run = run_gabp(y, a, n0, cons, cfg);
    CHECK_FALSE(run.diverged);

    // consensus over the single observation: x_bar = y/a, v_bar = N0/|a|^2
    const cplx z = y(0) / a11;
    const double v = n0 / std::norm(a11);
    CHECK(std::abs(run.trace.at(0).belief_mean(0) - z) < 1e-12);
    CHECK(run.trace.at(0).belief_var(0) == doctest::Approx(v).epsilon(1e-10));
    const auto ref = bayes_denoise(cons, z, v);
    CHECK(std::abs(run.soft_means(0) - ref.mean) < 1e-12);
}

TEST_CASE("GaBP psi at t=1 equals the prior-variance interference power") {
    const auto cons = Constellation::qam(4, 1.0);
    const auto trial = make_trial(5, 7, 0.4, 8.0, cons, 31, 2);
    DetectorConfig cfg = base_config(Algorithm::GaBP, 1);
    cfg.keep_edge_state = true;
    const auto run = run_gabp(trial.obs.y, trial.a, trial.obs.n0, cons, cfg);
    REQUIRE(run.edge_state.has_value());
    const auto& psi = run.edge_state->psi;
    const MatrixXd a2 = trial.a.cwiseAbs2();
    for (int n = 0; n < 7; ++n) {
        for (int m = 0; m < 5; ++m) {
            double expect = trial.obs.n0;
            for (int j = 0; j < 5; ++j) {
                if (j != m) expect += a2(n, j);  // v_check starts at Es = 1
            }
            CHECK(psi(n, m) == doctest::Approx(expect).epsilon(1e-12));
            CHECK(psi(n, m) >= trial.obs.n0 * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("GaBP extrinsic output has no same-row dependence at t=1") {
    const auto cons = Constellation::qam(4, 1.0);
    const auto trial = make_trial(2, 2, 0.0, 6.0, cons, 41, 3);
    DetectorConfig cfg = base_config(Algorithm::GaBP, 1);
    cfg.keep_edge_state = true;
    cfg.damping = 1.0;

    const double h = 1e-3;
    VectorXcd y_hi = trial.obs.y, y_lo = trial.obs.y;
    y_hi(0) += cplx{h, 0.0};
    y_lo(0) -= cplx{h, 0.0};

    const auto run_hi = run_gabp(y_hi, trial.a, trial.obs.n0, cons, cfg);
    const auto run_lo = run_gabp(y_lo, trial.a, trial.obs.n0, cons, cfg);
    REQUIRE(run_hi.edge_state.has_value());
    REQUIRE(run_lo.edge_state.has_value());
    auto fd = [&](int n, int m) {
        return std::abs(run_hi.edge_state->x_bar(n, m) - run_lo.edge_state->x_bar(n, m)) / (2.0 * h);
    };
    // x_bar on row 0 combines only row-1 information, so a y(0) perturbation
    // cannot reach it within one iteration (up to roundoff of the column sums)
    CHECK(fd(0, 0) < 1e-9);
    CHECK(fd(0, 1) < 1e-9);
    CHECK(fd(1, 0) > 1e-3);
    CHECK(fd(1, 1) > 1e-3);

    // after a second iteration the perturbation propagates through the other
    // edges
    DetectorConfig cfg2 = cfg;
    cfg2.iterations = 2;
    const auto run_hi2 = run_gabp(y_hi, trial.a, trial.obs.n0, cons, cfg2);
    const auto run_lo2 = run_gabp(y_lo, trial.a, trial.obs.n0, cons, cfg2);
    const double fd2 = std::abs(run_hi2.edge_state->x_bar(0, 0) - run_lo2.edge_state->x_bar(0, 0)) /
                       (2.0 * h);
    CHECK(fd2 > 1e-6);
}

TEST_CASE("GaBP and MF-EP succeed on easy uncorrelated systems") {
    long errors_gabp = 0, errors_mfep = 0;
    const double ber_gabp = ber_over_trials(Algorithm::GaBP, 64, 128, 0.0, 10.0, 16, 200, 51, &errors_gabp);
    const double ber_mfep = ber_over_trials(Algorithm::MfEp, 64, 128, 0.0, 10.0, 16, 200, 51, &errors_mfep);
    CHECK(ber_gabp < 1e-3);
    CHECK(ber_mfep < 1e-3);
    // agreement within a binomial confidence band
    const double bits = 200.0 * 128.0;
    const double pooled = (ber_gabp + ber_mfep) / 2.0;
    const double band = 1.96 * std::sqrt(std::max(pooled * (1.0 - pooled), 1e-12) * 2.0 / bits) + 2.0 / bits;
    CHECK(std::abs(ber_gabp - ber_mfep) <= band);
}

TEST_CASE("MF-EP moment-matching division matches a direct cavity computation") {
    // single symbol observed twice: the division removes exactly one rank-one
    // likelihood term
    const auto cons = Constellation::qam(4, 1.0);
    Philox rng(61, 0);
    MatrixXcd a(2, 1);
    a(0, 0) = rng.next_cgaussian();
    a(1, 0) = rng.next_cgaussian();
    const cplx x = cons.points()[1];
    const double n0 = 0.4;
    VectorXcd y(2);
    y(0) = a(0, 0) * x + std::sqrt(n0) * rng.next_cgaussian();
    y(1) = a(1, 0) * x + std::sqrt(n0) * rng.next_cgaussian();

    DetectorConfig cfg = base_config(Algorithm::MfEp, 1);
    cfg.keep_edge_state = true;
    cfg.trace = TraceLevel::Full;
    const auto run = run_mfep(y, a, n0, cons, cfg);
    REQUIRE(run.edge_state.has_value());

    // oracle: with M = 1 there is no interference, psi = N0 and ytilde = y
    const double q0 = std::norm(a(0, 0)) / n0;
    const double q1 = std::norm(a(1, 0)) / n0;
    const double v_bar = 1.0 / (q0 + q1);
    const cplx x_bar = v_bar * (std::conj(a(0, 0)) * y(0) + std::conj(a(1, 0)) * y(1)) / n0;
    CHECK(std::abs(run.trace.at(0).belief_mean(0) - x_bar) < 1e-12);

    const auto d = bayes_denoise(cons, x_bar, v_bar);
    // Gaussian division in natural parameters, per observation
    for (int n = 0; n < 2; ++n) {
        const double qn = n == 0 ? q0 : q1;
        const double prec_cav = 1.0 / d.var - qn;
        REQUIRE(prec_cav > 0.0);
        const double v_cav = 1.0 / prec_cav;
        const cplx mean_cav = v_cav * (d.mean / d.var - std::conj(a(n, 0)) * y(n) / n0);
        CHECK(std::abs(run.edge_state->v_check(n, 0) - v_cav) < 1e-10);
        CHECK(std::abs(run.edge_state->x_check(n, 0) - mean_cav) < 1e-10);
    }
}

TEST_CASE("GAMP effective noise matches a step-by-step replay") {
    const auto cons = Constellation::qam(4, 1.0);
    const auto trial = make_trial(3, 4, 0.0, 6.0, cons, 71, 4);
    DetectorConfig cfg = base_config(Algorithm::Gamp, 2);
    cfg.trace = TraceLevel::Full;
    const auto run = run_gamp(trial.obs.y, trial.a, trial.obs.n0, cons, cfg);
    REQUIRE(run.trace.size() == 2);

    // independent replay of the update equations
    const MatrixXd a2 = trial.a.cwiseAbs2();
    const VectorXcd& y = trial.obs.y;
    const double n0 = trial.obs.n0;
    VectorXcd xc = VectorXcd::Zero(3);
    VectorXd vc = VectorXd::Constant(3, 1.0);
    VectorXcd s = VectorXcd::Zero(4);
    VectorXcd xbar_prev(3);
    VectorXd vbar_prev(3);
    for (int t = 1; t <= 2; ++t) {
        const VectorXd gamma = a2 * vc;
        const VectorXcd p = trial.a * xc - gamma.cast<cplx>().cwiseProduct(s);
        const VectorXcd e = y - p;
        CHECK((run.trace[static_cast<std::size_t>(t - 1)].effective_noise - e).cwiseAbs().maxCoeff() <
              1e-12);
        const VectorXd psi = gamma.array() + n0;
        s = e.cwiseQuotient(psi.cast<cplx>());
        VectorXd vbar = (a2.transpose() * psi.cwiseInverse()).cwiseInverse();
        VectorXcd xbar = xc + vbar.cast<cplx>().cwiseProduct(trial.a.adjoint() * s);
        if (t > 1) {
            xbar = 0.5 * xbar + 0.5 * xbar_prev;
            vbar = 0.5 * vbar + 0.5 * vbar_prev;
        }
        xbar_prev = xbar;
        vbar_prev = vbar;
        for (int m = 0; m < 3; ++m) {
            const auto d = bayes_denoise(cons, xbar(m), vbar(m));
            xc(m) = d.mean;
            vc(m) = d.var;
        }
    }
    CHECK((run.soft_means - xc).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("effective noise at t=1 is the raw observation") {
    const auto cons = Constellation::qam(4, 1.0);
    const auto trial = make_trial(6, 8, 0.5, 3.0, cons, 81, 5);
    for (Algorithm alg : {Algorithm::GaBP, Algorithm::MfEp, Algorithm::Gamp}) {
        DetectorConfig cfg = base_config(alg, 1);
        cfg.trace = TraceLevel::Full;
        const auto run = run_detector(trial.obs.y, trial.a, trial.obs.n0, cons, cfg, nullptr);
        CHECK((run.trace.at(0).effective_noise - trial.obs.y).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("GAMP matches GaBP after one iteration on a large square system") {
    const auto cons = Constellation::qam(4, 1.0);
    const auto trial = make_trial(256, 256, 0.0, 10.0, cons, 91, 6);
    DetectorConfig cg = base_config(Algorithm::GaBP, 1);
    cg.trace = TraceLevel::Full;
    DetectorConfig ca = base_config(Algorithm::Gamp, 1);
    ca.trace = TraceLevel::Full;
    const auto rg = run_gabp(trial.obs.y, trial.a, trial.obs.n0, cons, cg);
    const auto ra = run_gamp(trial.obs.y, trial.a, trial.obs.n0, cons, ca);
    const double rms = std::sqrt((rg.trace.at(0).belief_mean - ra.trace.at(0).belief_mean)
                                     .cwiseAbs2()
                                     .mean());
    CHECK(rms < 0.05);
}

TEST_CASE("Lemma-2 scaling: squared-entry feedback vanishes as 1/N") {
    // E|sum_m a_{n,m}^2 r_m|^2 at N versus 4N, i.i.d. CN(0, 1/N) entries and a
    // fixed bounded r drawn once inside the unit disk
    auto estimate = [](int n, std::uint64_t stream) {
        Philox rng(1234, stream);
        std::vector<cplx> r(static_cast<std::size_t>(n));
        for (auto& v : r) {
            const double rad = std::sqrt(rng.next_double());
            const double ang = 2.0 * std::numbers::pi * rng.next_double();
            v = cplx{rad * std::cos(ang), rad * std::sin(ang)};
        }
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        double acc = 0.0;
        const int samples = 30000;
        for (int s = 0; s < samples; ++s) {
            cplx sum{0.0, 0.0};
            for (int m = 0; m < n; ++m) {
                const cplx a = scale * rng.next_cgaussian();
                sum += a * a * r[static_cast<std::size_t>(m)];
            }
            acc += std::norm(sum);
        }
        return acc / samples;
    };
    const double e1 = estimate(64, 1);
    const double e2 = estimate(256, 2);
    const double ratio = e1 / e2;
    CHECK(ratio >= 3.2);
    CHECK(ratio <= 4.8);
}

TEST_CASE("runs are deterministic given the seed") {
    const auto cons = Constellation::qam(16, 1.0);
    const auto trial = make_trial(12, 16, 0.7, 9.0, cons, 101, 7);
    for (Algorithm alg : {Algorithm::GaBP, Algorithm::MfEp, Algorithm::Gamp}) {
        DetectorConfig cfg = base_config(alg, 8, DenoiserMode::Annealed);
        cfg.trace = TraceLevel::Full;
        const auto r1 = run_detector(trial.obs.y, trial.a, trial.obs.n0, cons, cfg, &trial.obs.x_true);
        const auto r2 = run_detector(trial.obs.y, trial.a, trial.obs.n0, cons, cfg, &trial.obs.x_true);
        CHECK((r1.soft_means - r2.soft_means).cwiseAbs().maxCoeff() == 0.0);
        CHECK(r1.hard_bits == r2.hard_bits);
        for (std::size_t t = 0; t < r1.trace.size(); ++t) {
            CHECK(r1.trace[t].bit_errors == r2.trace[t].bit_errors);
        }
    }
}

TEST_CASE("divergence guard aborts and reports") {
    const auto cons = Constellation::qam(4, 1.0);
    const auto trial = make_trial(8, 8, 0.0, 20.0, cons, 111, 8);
    DetectorConfig cfg = base_config(Algorithm::GaBP, 4);
    cfg.divergence_limit = 1e-9;  // force the guard to trip immediately
    cfg.trace = TraceLevel::BerOnly;
    const auto run = run_gabp(trial.obs.y, trial.a, trial.obs.n0, cons, cfg, &trial.obs.x_true);
    CHECK(run.diverged);
    CHECK(run.iterations_completed == 0);
    CHECK(run.hard_bits.empty());
}

TEST_CASE("annealed runs use every scheduled temperature without diverging") {
    const auto cons = Constellation::qam(4, 1.0);
    const auto trial = make_trial(16, 16, 0.8, 0.0, cons, 121, 9);
    for (Algorithm alg : {Algorithm::GaBP, Algorithm::MfEp, Algorithm::Gamp}) {
        DetectorConfig cfg = base_config(alg, 12, DenoiserMode::Annealed);
        cfg.trace = TraceLevel::Full;
        const auto run = run_detector(trial.obs.y, trial.a, trial.obs.n0, cons, cfg, &trial.obs.x_true);
        CHECK_FALSE(run.diverged);
        CHECK(run.iterations_completed == 12);
        CHECK(static_cast<int>(run.trace.size()) == 12);
        for (const auto& rec : run.trace) {
            CHECK(rec.bit_errors >= 0);
            CHECK(rec.belief_var.minCoeff() > 0.0);
        }
    }
}

TEST_SUITE_END();

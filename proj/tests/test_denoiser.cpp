#include <doctest.h>

#include <cmath>
#include <complex>

#include "mpadet/denoiser.hpp"
#include "mpadet/rng.hpp"

using mpadet::AnnealSchedule;
using mpadet::annealed_denoise;
using mpadet::bayes_denoise;
using mpadet::Constellation;
using mpadet::cplx;
using mpadet::DenoiseResult;
using mpadet::Philox;
using mpadet::posterior_mode;

namespace {

// 4-QAM closed form: per-axis two-point posterior collapses to a tanh
DenoiseResult qpsk_closed_form(const Constellation& cons, cplx y, double v) {
    const double c = cons.scale();
    const double tr = std::tanh(2.0 * c * y.real() / v);
    const double ti = std::tanh(2.0 * c * y.imag() / v);
    return {cplx{c * tr, c * ti}, c * c * (2.0 - tr * tr - ti * ti)};
}

// Wirtinger derivative of the denoiser mean by central differences,
// d/dy = (d/dyR - j d/dyI) / 2
cplx wirtinger_fd(const Constellation& cons, cplx y, double v, double h) {
    const cplx dr = (bayes_denoise(cons, y + cplx{h, 0.0}, v).mean -
                     bayes_denoise(cons, y - cplx{h, 0.0}, v).mean) /
                    (2.0 * h);
    const cplx di = (bayes_denoise(cons, y + cplx{0.0, h}, v).mean -
                     bayes_denoise(cons, y - cplx{0.0, h}, v).mean) /
                    (2.0 * h);
    return 0.5 * (dr - cplx{0.0, 1.0} * di);
}

}  // namespace

TEST_SUITE_BEGIN("denoiser");

TEST_CASE("posterior variance equals v times the Wirtinger derivative") {
    // finite-difference oracle with step h = 1e-5 sqrt(v)
    for (int q : {4, 16}) {
        const auto cons = Constellation::qam(q, 1.0);
        Philox rng(101, static_cast<std::uint64_t>(q));
        const double span = 2.0 * (cons.levels_per_axis() - 1) * cons.scale();
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const cplx y{span * (rng.next_double() - 0.5) * 2.0,
                         span * (rng.next_double() - 0.5) * 2.0};
            const double v = 0.05 * std::pow(100.0, rng.next_double());  // 0.05 .. 5
            const auto d = bayes_denoise(cons, y, v);
            const cplx fd = wirtinger_fd(cons, y, v, 1e-5 * std::sqrt(v));
            worst = std::max(worst, std::abs(v * fd - cplx{d.var, 0.0}));
        }
        CHECK(worst <= 1e-5);  // relative to Es = 1
    }
}

TEST_CASE("4-QAM matches the tanh closed form") {
    const auto cons = Constellation::qam(4, 1.0);
    Philox rng(202, 0);
    double worst_mean = 0.0, worst_var = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const cplx y{4.0 * (rng.next_double() - 0.5), 4.0 * (rng.next_double() - 0.5)};
        const double v = 0.02 * std::pow(250.0, rng.next_double());
        const auto d = bayes_denoise(cons, y, v);
        const auto ref = qpsk_closed_form(cons, y, v);
        worst_mean = std::max(worst_mean, std::abs(d.mean - ref.mean));
        worst_var = std::max(worst_var, std::abs(d.var - ref.var));
    }
    CHECK(worst_mean <= 1e-12);
    CHECK(worst_var <= 1e-12);
}

TEST_CASE("zero observation keeps the prior moments") {
    const auto cons = Constellation::qam(4, 1.0);
    for (double v : {0.01, 0.5, 10.0}) {
        const auto d = bayes_denoise(cons, cplx{0.0, 0.0}, v);
        CHECK(std::abs(d.mean) < 1e-14);
        CHECK(d.var == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("tiny variance collapses to the nearest point") {
    const auto cons = Constellation::qam(16, 1.0);
    const cplx y{0.21, -0.34};
    const auto d = bayes_denoise(cons, y, 1e-9);
    const int idx = cons.demap_hard(y);
    CHECK(std::abs(d.mean - cons.points()[static_cast<std::size_t>(idx)]) < 1e-12);
    CHECK(d.var < 1e-12);
}

TEST_CASE("input validation") {
    const auto cons = Constellation::qam(4);
    CHECK_THROWS_AS(bayes_denoise(cons, cplx{0, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bayes_denoise(cons, cplx{0, 0}, -1.0), std::invalid_argument);
    const double nan = std::nan("");
    CHECK_THROWS_AS(bayes_denoise(cons, cplx{nan, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(annealed_denoise(cons, cplx{0, 0}, 0.0), std::invalid_argument);
}

TEST_CASE("annealed denoiser is the Bayes denoiser at v = 1/beta") {
    const auto cons = Constellation::qam(16, 1.0);
    Philox rng(303, 0);
    for (int i = 0; i < 200; ++i) {
        const cplx y{2.0 * rng.next_gaussian(), 2.0 * rng.next_gaussian()};
        const double beta = 0.05 * std::pow(400.0, rng.next_double());
        const auto a = annealed_denoise(cons, y, beta);
        const auto b = bayes_denoise(cons, y, 1.0 / beta);
        CHECK(a.mean == b.mean);
        CHECK(a.var == b.var);
    }
}

TEST_CASE("flat-likelihood limit restores the prior") {
    const auto cons = Constellation::qam(4, 1.0);
    const auto d = annealed_denoise(cons, cplx{0.4, -0.2}, 1e-9);
    CHECK(std::abs(d.mean) < 1e-6);
    CHECK(d.var == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("steep-regime shape: wide inactive regions at large beta") {
    // c^2 beta = 5; past 1.5c the output is pinned near the outer level
    const auto cons = Constellation::qam(4, 1.0);
    const double c = cons.scale();
    const double beta = 5.0 / (c * c);
    for (double u = 1.5 + 1e-3; u <= 2.0; u += 0.01) {
        const auto d = annealed_denoise(cons, cplx{u * c, 0.0}, beta);
        CHECK(std::abs(d.mean.real() - c) < 0.05 * c);
        const auto dn = annealed_denoise(cons, cplx{-u * c, 0.0}, beta);
        CHECK(std::abs(dn.mean.real() + c) < 0.05 * c);
    }
}

TEST_CASE("sharpening is monotone in beta on the real axis") {
    const auto cons = Constellation::qam(4, 1.0);
    const double c = cons.scale();
    for (double u : {0.1, 0.4, 0.9, 1.7}) {
        double prev = 0.0;
        for (double cb = 0.05; cb <= 20.0; cb *= 1.4) {
            const double beta = cb / (c * c);
            const double cur = std::abs(annealed_denoise(cons, cplx{u * c, 0.0}, beta).mean.real());
            CHECK(cur >= prev - 1e-13);
            prev = cur;
        }
    }
}

TEST_CASE("mean stays inside the constellation hull") {
    for (int q : {4, 16, 64}) {
        const auto cons = Constellation::qam(q, 1.0);
        const double edge = (cons.levels_per_axis() - 1) * cons.scale();
        Philox rng(404, static_cast<std::uint64_t>(q));
        for (int i = 0; i < 2000; ++i) {
            const cplx y{6.0 * rng.next_gaussian(), 6.0 * rng.next_gaussian()};
            const double v = 0.01 * std::pow(1000.0, rng.next_double());
            const auto d = bayes_denoise(cons, y, v);
            CHECK(std::abs(d.mean.real()) <= edge + 1e-12);
            CHECK(std::abs(d.mean.imag()) <= edge + 1e-12);
            CHECK(d.var >= 0.0);
            CHECK(d.var <= 1.0 + 1e-12);  // never exceeds the prior variance
        }
    }
}

TEST_CASE("posterior mode matches the hard demapper for uniform priors") {
    const auto cons = Constellation::qam(16, 1.0);
    Philox rng(505, 0);
    for (int i = 0; i < 2000; ++i) {
        const cplx y{2.0 * rng.next_gaussian(), 2.0 * rng.next_gaussian()};
        CHECK(posterior_mode(cons, y, 0.3) == cons.demap_hard(y));
    }
}

TEST_CASE("anneal schedule") {
    const auto cons = Constellation::qam(4, 1.0);
    const double c_sq = cons.scale() * cons.scale();
    AnnealSchedule sched;
    CHECK(sched.d1 == 3.0);  // defaults used throughout the experiments
    CHECK(sched.d2 == 2.0);
    sched.iterations = 64;
    sched.c_sq = c_sq;
    CHECK(sched.beta_at(64) == doctest::Approx(3.0 / c_sq).epsilon(1e-12));
    CHECK(sched.beta_at(32) == doctest::Approx(3.0 / (4.0 * c_sq)).epsilon(1e-12));
    CHECK_THROWS_AS(sched.beta_at(0), std::out_of_range);
    CHECK_THROWS_AS(sched.beta_at(65), std::out_of_range);

    double prev = 0.0;
    for (int t = 1; t <= 64; ++t) {
        const double b = sched.beta_at(t);
        CHECK(b > prev);
        prev = b;
    }
}

TEST_SUITE_END();

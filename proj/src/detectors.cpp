#include "mpadet/detectors.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace mpadet {

namespace {

constexpr double kTinyPrecision = 1e-300;

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

std::vector<int> truth_indices(const Constellation& cons, const VectorXcd* x_true) {
    std::vector<int> idx;
    if (!x_true) return idx;
    idx.resize(static_cast<std::size_t>(x_true->size()));
    for (Eigen::Index m = 0; m < x_true->size(); ++m) {
        idx[static_cast<std::size_t>(m)] = cons.demap_hard((*x_true)(m));
    }
    return idx;
}

long symbol_bit_errors(const Constellation& cons, int est, int truth) {
    return std::popcount(cons.bits_of_index(est) ^ cons.bits_of_index(truth));
}

// Bit errors of per-symbol maximum-weight decisions; var == nullptr means a
// common denoiser variance v_fixed for every symbol.
long decision_bit_errors(const Constellation& cons, const VectorXcd& mean, const VectorXd* var,
                         double v_fixed, const std::vector<int>& truth) {
    long errors = 0;
    for (Eigen::Index m = 0; m < mean.size(); ++m) {
        const double v = var ? (*var)(m) : v_fixed;
        const int est = posterior_mode(cons, mean(m), v);
        errors += symbol_bit_errors(cons, est, truth[static_cast<std::size_t>(m)]);
    }
    return errors;
}

void fill_hard_bits(const Constellation& cons, const VectorXcd& mean, const VectorXd* var,
                    double v_fixed, DetectorRun& run) {
    run.hard_bits.clear();
    run.hard_bits.reserve(static_cast<std::size_t>(mean.size()) *
                          static_cast<std::size_t>(cons.bits_per_symbol()));
    for (Eigen::Index m = 0; m < mean.size(); ++m) {
        const double v = var ? (*var)(m) : v_fixed;
        cons.append_bits(posterior_mode(cons, mean(m), v), run.hard_bits);
    }
}

long prior_mean_bit_errors(const Constellation& cons, const std::vector<int>& truth) {
    if (truth.empty()) return -1;
    const int est = posterior_mode(cons, cplx{0.0, 0.0}, cons.symbol_energy());
    long errors = 0;
    for (int t : truth) errors += symbol_bit_errors(cons, est, t);
    return errors;
}

template <typename Mean, typename Var>
void damp_state(Mean& mean_new, Var& var_new, Mean& mean_prev, Var& var_prev,
                const DetectorConfig& cfg, int t) {
    if (t > 1) {
        mean_new = cfg.damping * mean_new + (1.0 - cfg.damping) * mean_prev;
        if (cfg.damp_variances) {
            var_new = cfg.damping * var_new + (1.0 - cfg.damping) * var_prev;
        }
    }
    mean_prev = mean_new;
    var_prev = var_new;
}

template <typename Mean>
bool le_diverged(const Mean& le_mean, double limit) {
    if (!le_mean.allFinite()) return true;
    return le_mean.cwiseAbs().maxCoeff() > limit;
}

void validate_inputs(const VectorXcd& y, const MatrixXcd& a, double n0, const DetectorConfig& cfg) {
    if (y.size() != a.rows()) throw std::invalid_argument("detector: y and A dimensions disagree");
    if (!(n0 > 0.0)) throw std::invalid_argument("detector: noise power must be positive");
    if (cfg.iterations < 1) throw std::invalid_argument("detector: iteration count must be positive");
    if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) {
        throw std::invalid_argument("detector: damping must lie in (0, 1]");
    }
}

}  // namespace

std::pair<cplx, double> apply_damping(cplx new_mean, double new_var, cplx prev_mean,
                                      double prev_var, double delta, bool first_iteration) {
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw std::invalid_argument("apply_damping: delta must lie in (0, 1]");
    }
    if (first_iteration) return {new_mean, new_var};
    return {delta * new_mean + (1.0 - delta) * prev_mean,
            delta * new_var + (1.0 - delta) * prev_var};
}

long count_bit_errors(const Constellation& cons, const std::vector<std::uint8_t>& hard_bits,
                      const VectorXcd& x_true) {
    const auto truth = truth_indices(cons, &x_true);
    const std::size_t bps = static_cast<std::size_t>(cons.bits_per_symbol());
    if (hard_bits.size() != truth.size() * bps) {
        throw std::invalid_argument("count_bit_errors: bit count mismatch");
    }
    long errors = 0;
    std::vector<std::uint8_t> ref;
    ref.reserve(hard_bits.size());
    for (int t : truth) cons.append_bits(t, ref);
    for (std::size_t i = 0; i < hard_bits.size(); ++i) {
        errors += (hard_bits[i] != ref[i]) ? 1 : 0;
    }
    return errors;
}

DetectorRun run_gabp(const VectorXcd& y, const MatrixXcd& a, double n0, const Constellation& cons,
                     const DetectorConfig& cfg, const VectorXcd* x_true) {
    validate_inputs(y, a, n0, cfg);
    const int n_dim = static_cast<int>(a.rows());
    const int m_dim = static_cast<int>(a.cols());
    const double es = cons.symbol_energy();
    const double c_sq = cons.scale() * cons.scale();
    const bool annealed = cfg.denoiser_mode == DenoiserMode::Annealed;
    const AnnealSchedule sched{cfg.anneal_d1, cfg.anneal_d2, cfg.iterations, c_sq};
    const double limit = cfg.divergence_limit * std::sqrt(es);
    const auto truth = truth_indices(cons, x_true);

    const MatrixXd a2 = a.cwiseAbs2();
    MatrixXcd x_check = MatrixXcd::Zero(n_dim, m_dim);
    MatrixXd v_check = MatrixXd::Constant(n_dim, m_dim, es);
    MatrixXcd y_tilde(n_dim, m_dim), mf_stat(n_dim, m_dim), x_bar(n_dim, m_dim), x_bar_prev;
    MatrixXd psi(n_dim, m_dim), prec_stat(n_dim, m_dim), v_bar(n_dim, m_dim), v_bar_prev;
    VectorXcd col_mf(m_dim);
    VectorXd col_prec(m_dim);

    DetectorRun run;
    run.soft_means = VectorXcd::Zero(m_dim);
    if (cfg.trace != TraceLevel::None) {
        run.trace.reserve(static_cast<std::size_t>(cfg.iterations));
        run.prior_bit_errors = prior_mean_bit_errors(cons, truth);
    }

    for (int t = 1; t <= cfg.iterations; ++t) {
        // IC: replica sums per observation, then add the own edge back
        const VectorXcd row_x = (a.cwiseProduct(x_check)).rowwise().sum();
        const VectorXd row_v = (a2.cwiseProduct(v_check)).rowwise().sum();
        for (int m = 0; m < m_dim; ++m) {
            for (int n = 0; n < n_dim; ++n) {
                y_tilde(n, m) = y(n) - row_x(n) + a(n, m) * x_check(n, m);
                psi(n, m) = std::max(row_v(n) - a2(n, m) * v_check(n, m), 0.0) + n0;
            }
        }

        // MF with extrinsic combining: column totals minus the own edge
        prec_stat = a2.cwiseQuotient(psi);
        mf_stat = a.conjugate().cwiseProduct(y_tilde).cwiseQuotient(psi);
        col_prec = prec_stat.colwise().sum();
        col_mf = mf_stat.colwise().sum();
        for (int m = 0; m < m_dim; ++m) {
            for (int n = 0; n < n_dim; ++n) {
                const double prec = std::max(col_prec(m) - prec_stat(n, m), kTinyPrecision);
                v_bar(n, m) = 1.0 / prec;
                x_bar(n, m) = v_bar(n, m) * (col_mf(m) - mf_stat(n, m));
            }
        }

        damp_state(x_bar, v_bar, x_bar_prev, v_bar_prev, cfg, t);
        if (le_diverged(x_bar, limit)) {
            run.diverged = true;
            return run;
        }

        // NLE per edge
        const double v_anneal = annealed ? 1.0 / sched.beta_at(t) : 0.0;
        for (int m = 0; m < m_dim; ++m) {
            for (int n = 0; n < n_dim; ++n) {
                const DenoiseResult d =
                    bayes_denoise(cons, x_bar(n, m), annealed ? v_anneal : v_bar(n, m));
                x_check(n, m) = d.mean;
                v_check(n, m) = d.var;
            }
        }
        run.iterations_completed = t;

        if (cfg.trace != TraceLevel::None) {
            IterationRecord rec;
            VectorXcd cons_mean(m_dim);
            VectorXd cons_var(m_dim);
            for (int m = 0; m < m_dim; ++m) {
                cons_var(m) = 1.0 / std::max(col_prec(m), kTinyPrecision);
                cons_mean(m) = col_mf(m) * cons_var(m);
            }
            if (!truth.empty()) {
                rec.bit_errors = annealed
                                     ? decision_bit_errors(cons, cons_mean, nullptr, v_anneal, truth)
                                     : decision_bit_errors(cons, cons_mean, &cons_var, 0.0, truth);
            }
            if (cfg.trace == TraceLevel::Full) {
                rec.belief_mean = std::move(cons_mean);
                rec.belief_var = std::move(cons_var);
                rec.effective_noise = y - row_x;
            }
            run.trace.push_back(std::move(rec));
        }
    }

    // consensus over all observations with the final IC quantities
    VectorXcd cons_mean(m_dim);
    VectorXd cons_var(m_dim);
    for (int m = 0; m < m_dim; ++m) {
        cons_var(m) = 1.0 / std::max(col_prec(m), kTinyPrecision);
        cons_mean(m) = col_mf(m) * cons_var(m);
    }
    if (le_diverged(cons_mean, limit)) {
        run.diverged = true;
        return run;
    }
    const bool final_annealed = annealed && cfg.annealed_consensus;
    const double v_final = final_annealed ? 1.0 / sched.beta_at(cfg.iterations) : 0.0;
    for (int m = 0; m < m_dim; ++m) {
        run.soft_means(m) =
            bayes_denoise(cons, cons_mean(m), final_annealed ? v_final : cons_var(m)).mean;
    }
    if (final_annealed) {
        fill_hard_bits(cons, cons_mean, nullptr, v_final, run);
    } else {
        fill_hard_bits(cons, cons_mean, &cons_var, 0.0, run);
    }

    if (cfg.keep_edge_state) {
        run.edge_state = EdgeStateSnapshot{y_tilde, psi, x_bar, v_bar, x_check, v_check};
    }
    return run;
}

DetectorRun run_mfep(const VectorXcd& y, const MatrixXcd& a, double n0, const Constellation& cons,
                     const DetectorConfig& cfg, const VectorXcd* x_true) {
    validate_inputs(y, a, n0, cfg);
    const int n_dim = static_cast<int>(a.rows());
    const int m_dim = static_cast<int>(a.cols());
    const double es = cons.symbol_energy();
    const double c_sq = cons.scale() * cons.scale();
    const bool annealed = cfg.denoiser_mode == DenoiserMode::Annealed;
    const AnnealSchedule sched{cfg.anneal_d1, cfg.anneal_d2, cfg.iterations, c_sq};
    const double limit = cfg.divergence_limit * std::sqrt(es);
    const auto truth = truth_indices(cons, x_true);

    const MatrixXd a2 = a.cwiseAbs2();
    MatrixXcd x_check = MatrixXcd::Zero(n_dim, m_dim);
    MatrixXd v_check = MatrixXd::Constant(n_dim, m_dim, es);
    MatrixXcd y_tilde(n_dim, m_dim), mf_stat(n_dim, m_dim);
    MatrixXd psi(n_dim, m_dim), prec_stat(n_dim, m_dim);
    VectorXcd x_bar(m_dim), x_bar_prev, x_hat(m_dim);
    VectorXd v_bar(m_dim), v_bar_prev, v_hat(m_dim);

    DetectorRun run;
    run.soft_means = VectorXcd::Zero(m_dim);
    if (cfg.trace != TraceLevel::None) {
        run.trace.reserve(static_cast<std::size_t>(cfg.iterations));
        run.prior_bit_errors = prior_mean_bit_errors(cons, truth);
    }

    for (int t = 1; t <= cfg.iterations; ++t) {
        // IC as in GaBP, per edge
        const VectorXcd row_x = (a.cwiseProduct(x_check)).rowwise().sum();
        const VectorXd row_v = (a2.cwiseProduct(v_check)).rowwise().sum();
        for (int m = 0; m < m_dim; ++m) {
            for (int n = 0; n < n_dim; ++n) {
                y_tilde(n, m) = y(n) - row_x(n) + a(n, m) * x_check(n, m);
                psi(n, m) = std::max(row_v(n) - a2(n, m) * v_check(n, m), 0.0) + n0;
            }
        }

        // per-symbol MF combining over all observations
        prec_stat = a2.cwiseQuotient(psi);
        mf_stat = a.conjugate().cwiseProduct(y_tilde).cwiseQuotient(psi);
        for (int m = 0; m < m_dim; ++m) {
            const double prec = std::max(prec_stat.col(m).sum(), kTinyPrecision);
            v_bar(m) = 1.0 / prec;
            x_bar(m) = mf_stat.col(m).sum() * v_bar(m);
        }

        damp_state(x_bar, v_bar, x_bar_prev, v_bar_prev, cfg, t);
        if (le_diverged(x_bar, limit)) {
            run.diverged = true;
            return run;
        }

        // per-symbol denoise
        const double v_anneal = annealed ? 1.0 / sched.beta_at(t) : 0.0;
        for (int m = 0; m < m_dim; ++m) {
            const DenoiseResult d = bayes_denoise(cons, x_bar(m), annealed ? v_anneal : v_bar(m));
            x_hat(m) = d.mean;
            v_hat(m) = d.var;
        }

        // moment matching: divide the own likelihood message back out of the
        // projected posterior; non-positive cavity precision keeps the
        // previous replica
        for (int m = 0; m < m_dim; ++m) {
            for (int n = 0; n < n_dim; ++n) {
                const double denom = 1.0 - v_hat(m) * prec_stat(n, m);
                if (denom > 0.0) {
                    v_check(n, m) = v_hat(m) / denom;
                    x_check(n, m) = (x_hat(m) - v_hat(m) * mf_stat(n, m)) / denom;
                }
            }
        }
        run.iterations_completed = t;

        if (cfg.trace != TraceLevel::None) {
            IterationRecord rec;
            if (!truth.empty()) {
                rec.bit_errors = annealed
                                     ? decision_bit_errors(cons, x_bar, nullptr, v_anneal, truth)
                                     : decision_bit_errors(cons, x_bar, &v_bar, 0.0, truth);
            }
            if (cfg.trace == TraceLevel::Full) {
                rec.belief_mean = x_bar;
                rec.belief_var = v_bar;
                rec.effective_noise = y - row_x;
            }
            run.trace.push_back(std::move(rec));
        }
    }

    run.soft_means = x_hat;
    const double v_final = annealed ? 1.0 / sched.beta_at(cfg.iterations) : 0.0;
    if (annealed) {
        fill_hard_bits(cons, x_bar, nullptr, v_final, run);
    } else {
        fill_hard_bits(cons, x_bar, &v_bar, 0.0, run);
    }
    if (cfg.keep_edge_state) {
        run.edge_state = EdgeStateSnapshot{y_tilde, psi, MatrixXcd(), MatrixXd(), x_check, v_check};
    }
    return run;
}

DetectorRun run_gamp(const VectorXcd& y, const MatrixXcd& a, double n0, const Constellation& cons,
                     const DetectorConfig& cfg, const VectorXcd* x_true) {
    validate_inputs(y, a, n0, cfg);
    const int n_dim = static_cast<int>(a.rows());
    const int m_dim = static_cast<int>(a.cols());
    const double es = cons.symbol_energy();
    const double c_sq = cons.scale() * cons.scale();
    const bool annealed = cfg.denoiser_mode == DenoiserMode::Annealed;
    const AnnealSchedule sched{cfg.anneal_d1, cfg.anneal_d2, cfg.iterations, c_sq};
    const double limit = cfg.divergence_limit * std::sqrt(es);
    const auto truth = truth_indices(cons, x_true);

    const MatrixXd a2 = a.cwiseAbs2();
    VectorXcd x_check = VectorXcd::Zero(m_dim);
    VectorXd v_check = VectorXd::Constant(m_dim, es);
    VectorXcd s = VectorXcd::Zero(n_dim);
    VectorXcd x_bar(m_dim), x_bar_prev;
    VectorXd v_bar(m_dim), v_bar_prev;

    DetectorRun run;
    run.soft_means = VectorXcd::Zero(m_dim);
    if (cfg.trace != TraceLevel::None) {
        run.trace.reserve(static_cast<std::size_t>(cfg.iterations));
        run.prior_bit_errors = prior_mean_bit_errors(cons, truth);
    }

    for (int t = 1; t <= cfg.iterations; ++t) {
        const VectorXd gamma = a2 * v_check;
        const VectorXcd p = a * x_check - gamma.cast<cplx>().cwiseProduct(s);  // Onsager term
        const VectorXcd e = y - p;
        const VectorXd psi = gamma.array() + n0;
        const VectorXcd s_new = e.cwiseQuotient(psi.cast<cplx>());

        const VectorXd col_prec = a2.transpose() * psi.cwiseInverse();
        for (int m = 0; m < m_dim; ++m) {
            v_bar(m) = 1.0 / std::max(col_prec(m), kTinyPrecision);
        }
        x_bar = x_check + v_bar.cast<cplx>().cwiseProduct(a.adjoint() * s_new);

        damp_state(x_bar, v_bar, x_bar_prev, v_bar_prev, cfg, t);
        if (le_diverged(x_bar, limit)) {
            run.diverged = true;
            return run;
        }

        const double v_anneal = annealed ? 1.0 / sched.beta_at(t) : 0.0;
        for (int m = 0; m < m_dim; ++m) {
            const DenoiseResult d = bayes_denoise(cons, x_bar(m), annealed ? v_anneal : v_bar(m));
            x_check(m) = d.mean;
            v_check(m) = d.var;
        }
        s = s_new;
        run.iterations_completed = t;

        if (cfg.trace != TraceLevel::None) {
            IterationRecord rec;
            if (!truth.empty()) {
                rec.bit_errors = annealed
                                     ? decision_bit_errors(cons, x_bar, nullptr, v_anneal, truth)
                                     : decision_bit_errors(cons, x_bar, &v_bar, 0.0, truth);
            }
            if (cfg.trace == TraceLevel::Full) {
                rec.belief_mean = x_bar;
                rec.belief_var = v_bar;
                rec.effective_noise = e;
            }
            run.trace.push_back(std::move(rec));
        }
    }

    run.soft_means = x_check;
    const double v_final = annealed ? 1.0 / sched.beta_at(cfg.iterations) : 0.0;
    if (annealed) {
        fill_hard_bits(cons, x_bar, nullptr, v_final, run);
    } else {
        fill_hard_bits(cons, x_bar, &v_bar, 0.0, run);
    }
    return run;
}

DetectorRun run_lmmse(const VectorXcd& y, const MatrixXcd& a, double n0, const Constellation& cons) {
    if (y.size() != a.rows()) throw std::invalid_argument("run_lmmse: y and A dimensions disagree");
    if (!(n0 > 0.0)) throw std::invalid_argument("run_lmmse: noise power must be positive");
    const double es = cons.symbol_energy();

    MatrixXcd gram = es * (a * a.adjoint());
    gram.diagonal().array() += n0;
    const VectorXcd x_hat = es * (a.adjoint() * gram.llt().solve(y));

    DetectorRun run;
    run.soft_means = x_hat;
    run.iterations_completed = 1;
    run.hard_bits.reserve(static_cast<std::size_t>(a.cols()) *
                          static_cast<std::size_t>(cons.bits_per_symbol()));
    for (Eigen::Index m = 0; m < a.cols(); ++m) {
        cons.append_bits(cons.demap_hard(x_hat(m)), run.hard_bits);
    }
    return run;
}

DetectorRun run_lmmse_ep(const VectorXcd& y, const MatrixXcd& a, double n0,
                         const Constellation& cons, const DetectorConfig& cfg,
                         const VectorXcd* x_true) {
    validate_inputs(y, a, n0, cfg);
    const int m_dim = static_cast<int>(a.cols());
    const double es = cons.symbol_energy();
    const double limit = cfg.divergence_limit * std::sqrt(es);
    const auto truth = truth_indices(cons, x_true);

    const MatrixXcd gram = a.adjoint() * a / n0;
    const VectorXcd mf = a.adjoint() * y / n0;

    VectorXd lambda = VectorXd::Constant(m_dim, 1.0 / es);  // site precisions
    VectorXcd site_mean = VectorXcd::Zero(m_dim);           // precision-weighted means
    VectorXcd cav_mean = VectorXcd::Zero(m_dim), x_hat = VectorXcd::Zero(m_dim);
    VectorXd cav_var = VectorXd::Constant(m_dim, es);

    DetectorRun run;
    run.soft_means = VectorXcd::Zero(m_dim);
    if (cfg.trace != TraceLevel::None) {
        run.trace.reserve(static_cast<std::size_t>(cfg.iterations));
        run.prior_bit_errors = prior_mean_bit_errors(cons, truth);
    }

    for (int t = 1; t <= cfg.iterations; ++t) {
        MatrixXcd sys = gram;
        sys.diagonal() += lambda.cast<cplx>();
        const Eigen::LLT<MatrixXcd> llt(sys);
        const MatrixXcd cov = llt.solve(MatrixXcd::Identity(m_dim, m_dim));
        const VectorXcd mu = llt.solve(mf + site_mean);

        for (int m = 0; m < m_dim; ++m) {
            const double post_var = cov(m, m).real();
            const double denom = 1.0 - post_var * lambda(m);
            if (denom <= 0.0) continue;  // keep the previous site and decision
            const double vc = post_var / denom;
            const cplx muc = (mu(m) - post_var * site_mean(m)) / denom;
            if (!std::isfinite(muc.real()) || !std::isfinite(muc.imag()) || std::abs(muc) > limit) {
                run.diverged = true;
                return run;
            }
            cav_var(m) = vc;
            cav_mean(m) = muc;
            const DenoiseResult d = bayes_denoise(cons, muc, vc);
            x_hat(m) = d.mean;
            const double vhat = std::max(d.var, 1e-13 * es);
            const double lambda_new = 1.0 / vhat - 1.0 / vc;
            if (lambda_new <= 0.0) continue;
            const cplx site_new = d.mean / vhat - muc / vc;
            if (t == 1) {
                lambda(m) = lambda_new;
                site_mean(m) = site_new;
            } else {
                lambda(m) = cfg.damping * lambda_new + (1.0 - cfg.damping) * lambda(m);
                site_mean(m) = cfg.damping * site_new + (1.0 - cfg.damping) * site_mean(m);
            }
        }
        run.iterations_completed = t;

        if (cfg.trace != TraceLevel::None) {
            IterationRecord rec;
            if (!truth.empty()) {
                rec.bit_errors = decision_bit_errors(cons, cav_mean, &cav_var, 0.0, truth);
            }
            if (cfg.trace == TraceLevel::Full) {
                rec.belief_mean = mu;
                rec.belief_var = cov.diagonal().real();
            }
            run.trace.push_back(std::move(rec));
        }
    }

    run.soft_means = x_hat;
    fill_hard_bits(cons, cav_mean, &cav_var, 0.0, run);
    return run;
}

DetectorRun run_mfb(const VectorXcd& y, const MatrixXcd& a, const VectorXcd& x_true, double n0,
                    const Constellation& cons) {
    if (y.size() != a.rows() || x_true.size() != a.cols()) {
        throw std::invalid_argument("run_mfb: dimension mismatch");
    }
    if (!(n0 > 0.0)) throw std::invalid_argument("run_mfb: noise power must be positive");
    const int m_dim = static_cast<int>(a.cols());
    const VectorXcd total = a * x_true;

    DetectorRun run;
    run.soft_means = VectorXcd::Zero(m_dim);
    run.iterations_completed = 1;
    run.hard_bits.reserve(static_cast<std::size_t>(m_dim) *
                          static_cast<std::size_t>(cons.bits_per_symbol()));
    for (int m = 0; m < m_dim; ++m) {
        const auto col = a.col(m);
        const double h2 = col.squaredNorm();
        if (!(h2 > 0.0)) throw std::invalid_argument("run_mfb: zero column norm");
        const VectorXcd cleaned = y - total + col * x_true(m);
        const cplx z = col.dot(cleaned) / h2;
        const double v = n0 / h2;
        run.soft_means(m) = bayes_denoise(cons, z, v).mean;
        cons.append_bits(posterior_mode(cons, z, v), run.hard_bits);
    }
    return run;
}

DetectorRun run_detector(const VectorXcd& y, const MatrixXcd& a, double n0,
                         const Constellation& cons, const DetectorConfig& cfg,
                         const VectorXcd* x_true) {
    switch (cfg.algorithm) {
        case Algorithm::GaBP:
            return run_gabp(y, a, n0, cons, cfg, x_true);
        case Algorithm::MfEp:
            return run_mfep(y, a, n0, cons, cfg, x_true);
        case Algorithm::Gamp:
            return run_gamp(y, a, n0, cons, cfg, x_true);
        case Algorithm::Lmmse:
            return run_lmmse(y, a, n0, cons);
        case Algorithm::LmmseEp:
            return run_lmmse_ep(y, a, n0, cons, cfg, x_true);
        case Algorithm::Mfb:
            if (!x_true) throw std::invalid_argument("run_detector: MFB requires the true symbols");
            return run_mfb(y, a, *x_true, n0, cons);
    }
    throw std::logic_error("run_detector: unknown algorithm");
}

}  // namespace mpadet

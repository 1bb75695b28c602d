#include "mpadet/engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "mpadet/channel.hpp"

namespace mpadet {

namespace {

constexpr long kChunkTrials = 32;
constexpr const char* kVersion = "0.1.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Point {
    double esn0_db = 0.0;
    double rho = 0.0;
    int iterations = 0;
    std::uint64_t stream_base = 0;
};

struct SystemContext {
    const ExperimentConfig* cfg = nullptr;
    Constellation cons = Constellation::qam(4);
    ChannelSampler sampler{1, 1, 0.0};
};

SystemContext make_context(const ExperimentConfig& cfg, double rho) {
    SystemContext ctx;
    ctx.cfg = &cfg;
    ctx.cons = Constellation::qam(cfg.q);
    ctx.sampler = ChannelSampler(cfg.m, cfg.n, rho);
    return ctx;
}

// Runs trials [0, n_trials) split into fixed chunks. Workers pull chunks
// dynamically; accumulators merge in chunk order afterwards, keeping every
// emitted number independent of the worker count.
template <typename Acc, typename TrialFn>
std::vector<Acc> run_chunked(long n_trials, int workers, const std::function<Acc()>& make_acc,
                             const TrialFn& trial_fn, long first_trial = 0) {
    const long n_chunks = (n_trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<Acc> accs;
    accs.reserve(static_cast<std::size_t>(n_chunks));
    for (long c = 0; c < n_chunks; ++c) accs.push_back(make_acc());

    std::atomic<long> next{0};
    auto worker = [&] {
        for (;;) {
            const long c = next.fetch_add(1);
            if (c >= n_chunks) break;
            const long begin = first_trial + c * kChunkTrials;
            const long end = std::min(first_trial + n_trials, begin + kChunkTrials);
            for (long trial = begin; trial < end; ++trial) {
                trial_fn(accs[static_cast<std::size_t>(c)], trial);
            }
        }
    };

    const int thread_count = static_cast<int>(std::max<long>(1, std::min<long>(workers, n_chunks)));
    if (thread_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(thread_count));
        for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return accs;
}

struct BerAccum {
    std::vector<long> errors;
    std::vector<long> diverged;
    long trials = 0;

    explicit BerAccum(std::size_t algs) : errors(algs, 0), diverged(algs, 0) {}

    void merge(const BerAccum& o) {
        for (std::size_t i = 0; i < errors.size(); ++i) {
            errors[i] += o.errors[i];
            diverged[i] += o.diverged[i];
        }
        trials += o.trials;
    }
};

void run_ber_trial(BerAccum& acc, long trial, const SystemContext& ctx, const Point& pt) {
    const ExperimentConfig& cfg = *ctx.cfg;
    Philox rng(cfg.seed, pt.stream_base + static_cast<std::uint64_t>(trial));
    const Eigen::MatrixXcd a = ctx.sampler.sample(rng);
    const Observation obs = make_observation(a, ctx.cons, pt.esn0_db, rng);
    const long half_bits = cfg.bits_per_trial() / 2;

    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
        DetectorConfig dc = cfg.detector_config(cfg.algorithms[i], TraceLevel::None);
        dc.iterations = pt.iterations;
        const DetectorRun run = run_detector(obs.y, a, obs.n0, ctx.cons, dc, &obs.x_true);
        if (run.diverged) {
            acc.errors[i] += half_bits;  // failed detection counts half the bits
            acc.diverged[i] += 1;
        } else {
            acc.errors[i] += count_bit_errors(ctx.cons, run.hard_bits, obs.x_true);
        }
    }
    acc.trials += 1;
}

BerAccum reduce_point(const ExperimentConfig& cfg, const SystemContext& ctx, const Point& pt) {
    const std::size_t algs = cfg.algorithms.size();
    auto make_acc = [&] { return BerAccum(algs); };
    auto trial_fn = [&](BerAccum& acc, long trial) { run_ber_trial(acc, trial, ctx, pt); };

    BerAccum total(algs);
    if (cfg.trials > 0) {
        auto chunks = run_chunked<BerAccum>(cfg.trials, cfg.workers, make_acc, trial_fn);
        for (const auto& c : chunks) total.merge(c);
        return total;
    }

    // bit-error-target mode: grow in rounds of chunks, cut at the first chunk
    // boundary (in trial order) where every algorithm reached the target
    long done = 0;
    while (done < cfg.max_trials) {
        const long round = std::min<long>(cfg.max_trials - done,
                                          kChunkTrials * std::max(4L, static_cast<long>(cfg.workers)));
        auto chunks = run_chunked<BerAccum>(round, cfg.workers, make_acc, trial_fn, done);
        for (const auto& c : chunks) {
            total.merge(c);
            long worst = std::numeric_limits<long>::max();
            for (long e : total.errors) worst = std::min(worst, e);
            if (worst >= cfg.target_bit_errors) return total;
        }
        done += round;
    }
    return total;
}

BerRecord make_record(const ExperimentConfig& cfg, const AlgorithmSpec& spec, const Point& pt,
                      long errors, long diverged, long trials, double wall) {
    BerRecord rec;
    rec.algorithm = algorithm_name(spec.algorithm);
    rec.denoiser_mode = denoiser_mode_name(spec.denoiser_mode);
    rec.m = cfg.m;
    rec.n = cfg.n;
    rec.q = cfg.q;
    rec.rho = pt.rho;
    rec.esn0_db = pt.esn0_db;
    rec.iterations = pt.iterations;
    rec.trials = trials;
    rec.bits = trials * cfg.bits_per_trial();
    rec.bit_errors = errors;
    rec.diverged_trials = diverged;
    rec.ber = rec.bits > 0 ? static_cast<double>(errors) / static_cast<double>(rec.bits) : 0.0;
    const double s = rec.bits > 0 ? std::sqrt(std::max(rec.ber * (1.0 - rec.ber), 0.0) /
                                              static_cast<double>(rec.bits))
                                  : 0.0;
    rec.ci95_low = std::max(0.0, rec.ber - 1.96 * s);
    rec.ci95_high = std::min(1.0, rec.ber + 1.96 * s);
    rec.wall_seconds = wall;
    return rec;
}

std::vector<BerRecord> sweep(const ExperimentConfig& cfg, const std::vector<Point>& points) {
    std::vector<BerRecord> records;
    records.reserve(points.size() * cfg.algorithms.size());
    for (const Point& pt : points) {
        const SystemContext ctx = make_context(cfg, pt.rho);
        const auto t0 = std::chrono::steady_clock::now();
        const BerAccum total = reduce_point(cfg, ctx, pt);
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
            records.push_back(make_record(cfg, cfg.algorithms[i], pt, total.errors[i],
                                          total.diverged[i], total.trials, wall));
        }
    }
    return records;
}

}  // namespace

std::vector<BerRecord> run_ber_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<Point> points;
    for (std::size_t i = 0; i < cfg.esn0_db.size(); ++i) {
        points.push_back({cfg.esn0_db[i], cfg.rho, cfg.iterations,
                          static_cast<std::uint64_t>(i) << 40});
    }
    return sweep(cfg, points);
}

std::vector<BerRecord> run_rho_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.rho_list.empty()) throw ConfigError("rho-sweep requires rho_list");
    if (cfg.esn0_db.size() != 1) throw ConfigError("rho-sweep requires a single esn0_db value");
    std::vector<Point> points;
    for (std::size_t i = 0; i < cfg.rho_list.size(); ++i) {
        points.push_back({cfg.esn0_db[0], cfg.rho_list[i], cfg.iterations,
                          static_cast<std::uint64_t>(i) << 40});
    }
    return sweep(cfg, points);
}

namespace {

struct IterAccum {
    // per algorithm, indexed by t in 0..T
    std::vector<std::vector<long>> errors;
    long trials = 0;

    IterAccum(std::size_t algs, int t_max) : errors(algs, std::vector<long>(static_cast<std::size_t>(t_max) + 1, 0)) {}

    void merge(const IterAccum& o) {
        for (std::size_t i = 0; i < errors.size(); ++i) {
            for (std::size_t t = 0; t < errors[i].size(); ++t) errors[i][t] += o.errors[i][t];
        }
        trials += o.trials;
    }
};

void run_iter_trial(IterAccum& acc, long trial, const SystemContext& ctx, const Point& pt) {
    const ExperimentConfig& cfg = *ctx.cfg;
    Philox rng(cfg.seed, pt.stream_base + static_cast<std::uint64_t>(trial));
    const Eigen::MatrixXcd a = ctx.sampler.sample(rng);
    const Observation obs = make_observation(a, ctx.cons, pt.esn0_db, rng);
    const long half_bits = cfg.bits_per_trial() / 2;

    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
        DetectorConfig dc = cfg.detector_config(cfg.algorithms[i], TraceLevel::BerOnly);
        dc.iterations = pt.iterations;
        const DetectorRun run = run_detector(obs.y, a, obs.n0, ctx.cons, dc, &obs.x_true);
        auto& err = acc.errors[i];
        if (run.trace.empty() && !run.diverged) {
            // non-iterative detector (LMMSE, MFB): the answer is the same at
            // every iteration index
            const long final_errors = count_bit_errors(ctx.cons, run.hard_bits, obs.x_true);
            for (int t = 0; t <= pt.iterations; ++t) err[static_cast<std::size_t>(t)] += final_errors;
            continue;
        }
        err[0] += run.prior_bit_errors >= 0 ? run.prior_bit_errors : half_bits;
        for (int t = 1; t <= pt.iterations; ++t) {
            if (t <= run.iterations_completed &&
                static_cast<std::size_t>(t) <= run.trace.size() &&
                run.trace[static_cast<std::size_t>(t) - 1].bit_errors >= 0) {
                err[static_cast<std::size_t>(t)] += run.trace[static_cast<std::size_t>(t) - 1].bit_errors;
            } else {
                err[static_cast<std::size_t>(t)] += half_bits;  // diverged tail
            }
        }
    }
    acc.trials += 1;
}

}  // namespace

std::vector<IterationBerRecord> run_iteration_trace(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.trials <= 0) throw ConfigError("iter-trace requires a fixed trial count");
    if (cfg.esn0_db.size() != 1) throw ConfigError("iter-trace requires a single esn0_db value");
    std::vector<int> t_values = cfg.iteration_list.empty() ? std::vector<int>{cfg.iterations}
                                                           : cfg.iteration_list;

    std::vector<IterationBerRecord> rows;
    std::uint64_t point_id = 0;
    for (int t_max : t_values) {
        const Point pt{cfg.esn0_db[0], cfg.rho, t_max, point_id << 40};
        ++point_id;
        const SystemContext ctx = make_context(cfg, pt.rho);
        const std::size_t algs = cfg.algorithms.size();
        auto make_acc = [&] { return IterAccum(algs, t_max); };
        auto chunks = run_chunked<IterAccum>(
            cfg.trials, cfg.workers, std::function<IterAccum()>(make_acc),
            [&](IterAccum& acc, long trial) { run_iter_trial(acc, trial, ctx, pt); });
        IterAccum total(algs, t_max);
        for (const auto& c : chunks) total.merge(c);

        const long bits = total.trials * cfg.bits_per_trial();
        for (std::size_t i = 0; i < algs; ++i) {
            for (int t = 0; t <= t_max; ++t) {
                IterationBerRecord row;
                row.algorithm = algorithm_name(cfg.algorithms[i].algorithm);
                row.denoiser_mode = denoiser_mode_name(cfg.algorithms[i].denoiser_mode);
                row.m = cfg.m;
                row.n = cfg.n;
                row.q = cfg.q;
                row.rho = cfg.rho;
                row.esn0_db = cfg.esn0_db[0];
                row.iterations = t_max;
                row.t = t;
                row.bits = bits;
                row.bit_errors = total.errors[i][static_cast<std::size_t>(t)];
                row.ber = bits > 0 ? static_cast<double>(row.bit_errors) / static_cast<double>(bits) : 0.0;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

namespace {

struct DiagAccum {
    // corr[alg][snapshot]
    std::vector<std::vector<CorrAccumulator>> corr;
    std::vector<HistogramAccumulator> hist;
    long trials = 0;
    long skipped = 0;  // diverged before the requested snapshot

    void merge(const DiagAccum& o) {
        for (std::size_t i = 0; i < corr.size(); ++i) {
            for (std::size_t s = 0; s < corr[i].size(); ++s) corr[i][s].merge(o.corr[i][s]);
        }
        for (std::size_t i = 0; i < hist.size(); ++i) hist[i].merge(o.hist[i]);
        trials += o.trials;
        skipped += o.skipped;
    }
};

DiagAccum make_diag_accum(const ExperimentConfig& cfg, bool with_corr, bool with_hist) {
    DiagAccum acc;
    if (with_corr) {
        acc.corr.assign(cfg.algorithms.size(),
                        std::vector<CorrAccumulator>(cfg.snapshot_ts.size(), CorrAccumulator(cfg.n)));
    }
    if (with_hist) {
        acc.hist.assign(cfg.algorithms.size(),
                        HistogramAccumulator(cfg.hist_bins, cfg.hist_range_sigma));
    }
    return acc;
}

void run_diag_trial(DiagAccum& acc, long trial, const SystemContext& ctx, const Point& pt,
                    bool with_corr, bool with_hist) {
    const ExperimentConfig& cfg = *ctx.cfg;
    Philox rng(cfg.seed, pt.stream_base + static_cast<std::uint64_t>(trial));
    const Eigen::MatrixXcd a = ctx.sampler.sample(rng);
    const Observation obs = make_observation(a, ctx.cons, pt.esn0_db, rng);

    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
        DetectorConfig dc = cfg.detector_config(cfg.algorithms[i], TraceLevel::Full);
        dc.iterations = pt.iterations;
        const DetectorRun run = run_detector(obs.y, a, obs.n0, ctx.cons, dc, &obs.x_true);
        if (with_corr) {
            for (std::size_t s = 0; s < cfg.snapshot_ts.size(); ++s) {
                const int t = cfg.snapshot_ts[s];
                if (t <= run.iterations_completed) {
                    acc.corr[i][s].accumulate(
                        run.trace[static_cast<std::size_t>(t) - 1].effective_noise);
                } else {
                    acc.skipped += 1;
                }
            }
        }
        if (with_hist) {
            const int t = cfg.hist_t;
            if (t <= run.iterations_completed) {
                const auto& rec = run.trace[static_cast<std::size_t>(t) - 1];
                acc.hist[i].add_residuals(rec.belief_mean, rec.belief_var, obs.x_true);
            } else {
                acc.skipped += 1;
            }
        }
    }
    acc.trials += 1;
}

DiagAccum reduce_diag(const ExperimentConfig& cfg, bool with_corr, bool with_hist) {
    if (cfg.trials <= 0) throw ConfigError("diagnostics require a fixed trial count");
    if (cfg.esn0_db.size() != 1) throw ConfigError("diagnostics require a single esn0_db value");
    for (const auto& spec : cfg.algorithms) {
        if (!is_message_passing(spec.algorithm)) {
            throw ConfigError("diagnostics are defined for gabp/mfep/gamp only");
        }
    }
    if (with_corr) {
        for (int t : cfg.snapshot_ts) {
            if (t > cfg.iterations) throw ConfigError("snapshot_ts entries must lie in [1, T]");
        }
    }
    if (with_hist && cfg.hist_t > cfg.iterations) throw ConfigError("hist_t must lie in [1, T]");
    const Point pt{cfg.esn0_db[0], cfg.rho, cfg.iterations, 0};
    const SystemContext ctx = make_context(cfg, pt.rho);
    auto make_acc = [&] { return make_diag_accum(cfg, with_corr, with_hist); };
    auto chunks = run_chunked<DiagAccum>(
        cfg.trials, cfg.workers, std::function<DiagAccum()>(make_acc),
        [&](DiagAccum& acc, long trial) { run_diag_trial(acc, trial, ctx, pt, with_corr, with_hist); });
    DiagAccum total = make_diag_accum(cfg, with_corr, with_hist);
    for (const auto& c : chunks) total.merge(c);
    return total;
}

}  // namespace

std::vector<GammaSnapshot> run_corr_diagnostic(const ExperimentConfig& cfg) {
    cfg.validate();
    const DiagAccum total = reduce_diag(cfg, true, false);
    std::vector<GammaSnapshot> snaps;
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
        for (std::size_t s = 0; s < cfg.snapshot_ts.size(); ++s) {
            GammaSnapshot snap;
            snap.algorithm = algorithm_name(cfg.algorithms[i].algorithm);
            snap.denoiser_mode = denoiser_mode_name(cfg.algorithms[i].denoiser_mode);
            snap.t = cfg.snapshot_ts[s];
            snap.trials = total.corr[i][s].trial_count();
            snap.gamma = total.corr[i][s].finalize();
            snap.mean_offdiag = mean_offdiagonal_magnitude(snap.gamma);
            double max_off = 0.0;
            for (Eigen::Index r = 0; r < snap.gamma.rows(); ++r) {
                for (Eigen::Index c = 0; c < snap.gamma.cols(); ++c) {
                    if (r != c) max_off = std::max(max_off, std::abs(snap.gamma(r, c)));
                }
            }
            snap.max_offdiag = max_off;
            snaps.push_back(std::move(snap));
        }
    }
    return snaps;
}

std::vector<HistogramResult> run_histogram(const ExperimentConfig& cfg) {
    cfg.validate();
    const DiagAccum total = reduce_diag(cfg, false, true);
    std::vector<HistogramResult> results;
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
        HistogramResult r;
        r.algorithm = algorithm_name(cfg.algorithms[i].algorithm);
        r.denoiser_mode = denoiser_mode_name(cfg.algorithms[i].denoiser_mode);
        r.t = cfg.hist_t;
        r.hist = total.hist[i].finalize();
        results.push_back(std::move(r));
    }
    return results;
}

void write_ber_csv(const std::vector<BerRecord>& records, std::ostream& os) {
    os << "algorithm,denoiser_mode,M,N,Q,rho,esn0_db,T,bits,bit_errors,ber,ci95_low,ci95_high,"
          "trials,diverged_trials\n";
    for (const auto& r : records) {
        os << r.algorithm << ',' << r.denoiser_mode << ',' << r.m << ',' << r.n << ',' << r.q
           << ',' << fmt(r.rho) << ',' << fmt(r.esn0_db) << ',' << r.iterations << ',' << r.bits
           << ',' << r.bit_errors << ',' << fmt(r.ber) << ',' << fmt(r.ci95_low) << ','
           << fmt(r.ci95_high) << ',' << r.trials << ',' << r.diverged_trials << '\n';
    }
}

void write_iteration_csv(const std::vector<IterationBerRecord>& records, std::ostream& os) {
    os << "algorithm,denoiser_mode,M,N,Q,rho,esn0_db,T,t,bits,bit_errors,ber\n";
    for (const auto& r : records) {
        os << r.algorithm << ',' << r.denoiser_mode << ',' << r.m << ',' << r.n << ',' << r.q
           << ',' << fmt(r.rho) << ',' << fmt(r.esn0_db) << ',' << r.iterations << ',' << r.t
           << ',' << r.bits << ',' << r.bit_errors << ',' << fmt(r.ber) << '\n';
    }
}

void write_gamma_csv(const GammaSnapshot& snap, std::ostream& os) {
    for (Eigen::Index i = 0; i < snap.gamma.rows(); ++i) {
        for (Eigen::Index j = 0; j < snap.gamma.cols(); ++j) {
            if (j > 0) os << ',';
            os << fmt(std::abs(snap.gamma(i, j)));
        }
        os << '\n';
    }
}

void write_gamma_summary_csv(const std::vector<GammaSnapshot>& snaps, std::ostream& os) {
    os << "algorithm,denoiser_mode,t,trials,mean_offdiag_mag,max_offdiag_mag\n";
    for (const auto& s : snaps) {
        os << s.algorithm << ',' << s.denoiser_mode << ',' << s.t << ',' << s.trials << ','
           << fmt(s.mean_offdiag) << ',' << fmt(s.max_offdiag) << '\n';
    }
}

void write_histogram_csv(const HistogramResult& result, std::ostream& os) {
    os << "bin_left,bin_right,density,ideal\n";
    const auto& h = result.hist;
    for (std::size_t i = 0; i < h.density.size(); ++i) {
        os << fmt(h.edges[i]) << ',' << fmt(h.edges[i + 1]) << ',' << fmt(h.density[i]) << ','
           << fmt(h.ideal[i]) << '\n';
    }
}

void write_histogram_summary_csv(const std::vector<HistogramResult>& results, std::ostream& os) {
    os << "algorithm,denoiser_mode,t,samples,tail3_frac,tail4_frac,tail5_frac\n";
    for (const auto& r : results) {
        os << r.algorithm << ',' << r.denoiser_mode << ',' << r.t << ',' << r.hist.samples << ','
           << fmt(r.hist.tail_fraction(3)) << ',' << fmt(r.hist.tail_fraction(4)) << ','
           << fmt(r.hist.tail_fraction(5)) << '\n';
    }
}

namespace {

void ensure_parent(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

std::ofstream open_out(const std::string& path) {
    ensure_parent(path);
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    return os;
}

void write_metadata(const ExperimentConfig& cfg, const std::string& command,
                    const std::vector<std::string>& files, const nlohmann::json& extra,
                    std::vector<std::string>& written) {
    nlohmann::json meta;
    meta["command"] = command;
    meta["version"] = kVersion;
    meta["config"] = nlohmann::json::parse(config_to_json(cfg));
    meta["files"] = files;
    if (!extra.is_null()) meta["timing"] = extra;
    const std::string path = cfg.out + "_meta.json";
    auto os = open_out(path);
    os << meta.dump(2) << '\n';
    written.push_back(path);
}

std::vector<std::string> ber_like_command(const ExperimentConfig& cfg, const std::string& command,
                                          const std::string& suffix,
                                          const std::vector<BerRecord>& records) {
    std::vector<std::string> written;
    const std::string csv_path = cfg.out + suffix;
    {
        auto os = open_out(csv_path);
        write_ber_csv(records, os);
    }
    written.push_back(csv_path);
    nlohmann::json timing = nlohmann::json::array();
    for (const auto& r : records) {
        timing.push_back({{"algorithm", r.algorithm},
                          {"denoiser_mode", r.denoiser_mode},
                          {"rho", r.rho},
                          {"esn0_db", r.esn0_db},
                          {"wall_seconds", r.wall_seconds}});
    }
    write_metadata(cfg, command, written, timing, written);
    return written;
}

}  // namespace

std::vector<std::string> ber_sweep_command(const ExperimentConfig& cfg) {
    return ber_like_command(cfg, "ber-sweep", "_ber.csv", run_ber_sweep(cfg));
}

std::vector<std::string> rho_sweep_command(const ExperimentConfig& cfg) {
    return ber_like_command(cfg, "rho-sweep", "_rho.csv", run_rho_sweep(cfg));
}

std::vector<std::string> iter_trace_command(const ExperimentConfig& cfg) {
    const auto rows = run_iteration_trace(cfg);
    std::vector<std::string> written;
    const std::string csv_path = cfg.out + "_iter.csv";
    {
        auto os = open_out(csv_path);
        write_iteration_csv(rows, os);
    }
    written.push_back(csv_path);
    write_metadata(cfg, "iter-trace", written, nlohmann::json(), written);
    return written;
}

std::vector<std::string> corr_diag_command(const ExperimentConfig& cfg) {
    const auto snaps = run_corr_diagnostic(cfg);
    std::vector<std::string> written;
    for (const auto& s : snaps) {
        const std::string path = cfg.out + "_gamma_" + s.algorithm +
                                 (s.denoiser_mode == "annealed" ? "-add" : "") + "_t" +
                                 std::to_string(s.t) + ".csv";
        auto os = open_out(path);
        write_gamma_csv(s, os);
        written.push_back(path);
    }
    const std::string summary_path = cfg.out + "_gamma_summary.csv";
    {
        auto os = open_out(summary_path);
        write_gamma_summary_csv(snaps, os);
    }
    written.push_back(summary_path);
    write_metadata(cfg, "corr-diag", written, nlohmann::json(), written);
    return written;
}

std::vector<std::string> histogram_command(const ExperimentConfig& cfg) {
    const auto results = run_histogram(cfg);
    std::vector<std::string> written;
    for (const auto& r : results) {
        const std::string path = cfg.out + "_hist_" + r.algorithm +
                                 (r.denoiser_mode == "annealed" ? "-add" : "") + ".csv";
        auto os = open_out(path);
        write_histogram_csv(r, os);
        written.push_back(path);
    }
    const std::string summary_path = cfg.out + "_hist_summary.csv";
    {
        auto os = open_out(summary_path);
        write_histogram_summary_csv(results, os);
    }
    written.push_back(summary_path);
    write_metadata(cfg, "histogram", written, nlohmann::json(), written);
    return written;
}

}  // namespace mpadet

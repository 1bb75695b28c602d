#include "mpadet/config.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace mpadet {

using nlohmann::json;

AlgorithmSpec parse_algorithm(const std::string& token) {
    if (token == "gabp") return {Algorithm::GaBP, DenoiserMode::Plain};
    if (token == "gabp-add") return {Algorithm::GaBP, DenoiserMode::Annealed};
    if (token == "mfep") return {Algorithm::MfEp, DenoiserMode::Plain};
    if (token == "mfep-add") return {Algorithm::MfEp, DenoiserMode::Annealed};
    if (token == "gamp") return {Algorithm::Gamp, DenoiserMode::Plain};
    if (token == "gamp-add") return {Algorithm::Gamp, DenoiserMode::Annealed};
    if (token == "lmmse") return {Algorithm::Lmmse, DenoiserMode::Plain};
    if (token == "lmmse-ep") return {Algorithm::LmmseEp, DenoiserMode::Plain};
    if (token == "mfb") return {Algorithm::Mfb, DenoiserMode::Plain};
    throw ConfigError("unknown algorithm token: " + token);
}

std::string algorithm_name(Algorithm alg) {
    switch (alg) {
        case Algorithm::GaBP: return "gabp";
        case Algorithm::MfEp: return "mfep";
        case Algorithm::Gamp: return "gamp";
        case Algorithm::Lmmse: return "lmmse";
        case Algorithm::LmmseEp: return "lmmse-ep";
        case Algorithm::Mfb: return "mfb";
    }
    return "?";
}

std::string denoiser_mode_name(DenoiserMode mode) {
    return mode == DenoiserMode::Annealed ? "annealed" : "plain";
}

std::string algorithm_token(const AlgorithmSpec& spec) {
    std::string s = algorithm_name(spec.algorithm);
    if (spec.denoiser_mode == DenoiserMode::Annealed) s += "-add";
    return s;
}

bool is_message_passing(Algorithm alg) {
    return alg == Algorithm::GaBP || alg == Algorithm::MfEp || alg == Algorithm::Gamp;
}

long ExperimentConfig::bits_per_trial() const {
    int bits = 0;
    while ((1 << bits) < q) ++bits;
    return static_cast<long>(m) * bits;
}

void ExperimentConfig::validate() const {
    if (m < 1 || n < 1) throw ConfigError("M and N must be positive");
    if (q != 4 && q != 16 && q != 64) throw ConfigError("Q must be 4, 16 or 64");
    if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("rho must lie in [0, 1)");
    for (double r : rho_list) {
        if (!(r >= 0.0 && r < 1.0)) throw ConfigError("rho_list entries must lie in [0, 1)");
    }
    if (esn0_db.empty()) throw ConfigError("esn0_db must not be empty");
    if (iterations < 1) throw ConfigError("T must be positive");
    for (int t : iteration_list) {
        if (t < 1) throw ConfigError("T_list entries must be positive");
    }
    if (!(damping > 0.0 && damping <= 1.0)) throw ConfigError("damping must lie in (0, 1]");
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw ConfigError("d1 and d2 must be positive");
    if (algorithms.empty()) throw ConfigError("at least one algorithm is required");
    const bool has_trials = trials > 0;
    const bool has_target = target_bit_errors > 0;
    if (has_trials == has_target) {
        throw ConfigError("exactly one of trials / target_bit_errors must be set");
    }
    if (trials < 0 || target_bit_errors < 0) throw ConfigError("counts must be nonnegative");
    if (has_target && max_trials < 1) throw ConfigError("max_trials must be positive");
    if (workers < 1) throw ConfigError("workers must be positive");
    // the upper bound against T is enforced by the diagnostic commands that
    // actually take snapshots
    for (int t : snapshot_ts) {
        if (t < 1) throw ConfigError("snapshot_ts entries must be positive");
    }
    if (hist_bins < 1) throw ConfigError("hist_bins must be positive");
    if (!(hist_range_sigma > 0.0)) throw ConfigError("hist_range_sigma must be positive");
    if (hist_t < 1) throw ConfigError("hist_t must be positive");
    if (out.empty()) throw ConfigError("output prefix must not be empty");
}

DetectorConfig ExperimentConfig::detector_config(const AlgorithmSpec& spec, TraceLevel trace) const {
    DetectorConfig cfg;
    cfg.algorithm = spec.algorithm;
    cfg.iterations = iterations;
    cfg.damping = damping;
    cfg.denoiser_mode = spec.denoiser_mode;
    cfg.anneal_d1 = d1;
    cfg.anneal_d2 = d2;
    cfg.trace = trace;
    return cfg;
}

namespace {

template <typename T>
std::vector<T> list_of(const json& j, const char* key) {
    std::vector<T> out;
    const auto& v = j.at(key);
    if (v.is_array()) {
        for (const auto& e : v) out.push_back(e.get<T>());
    } else {
        out.push_back(v.get<T>());
    }
    return out;
}

ExperimentConfig from_json(const json& j) {
    ExperimentConfig cfg;
    try {
        if (j.contains("M")) cfg.m = j.at("M").get<int>();
        if (j.contains("N")) cfg.n = j.at("N").get<int>();
        if (j.contains("Q")) cfg.q = j.at("Q").get<int>();
        if (j.contains("rho")) cfg.rho = j.at("rho").get<double>();
        if (j.contains("esn0_db")) cfg.esn0_db = list_of<double>(j, "esn0_db");
        if (j.contains("rho_list")) cfg.rho_list = list_of<double>(j, "rho_list");
        if (j.contains("T")) cfg.iterations = j.at("T").get<int>();
        if (j.contains("T_list")) cfg.iteration_list = list_of<int>(j, "T_list");
        if (j.contains("damping")) cfg.damping = j.at("damping").get<double>();
        if (j.contains("d1")) cfg.d1 = j.at("d1").get<double>();
        if (j.contains("d2")) cfg.d2 = j.at("d2").get<double>();
        if (j.contains("algorithms")) {
            cfg.algorithms.clear();
            for (const auto& tok : j.at("algorithms")) {
                cfg.algorithms.push_back(parse_algorithm(tok.get<std::string>()));
            }
        }
        if (j.contains("trials")) cfg.trials = j.at("trials").get<long>();
        if (j.contains("target_bit_errors")) cfg.target_bit_errors = j.at("target_bit_errors").get<long>();
        if (j.contains("max_trials")) cfg.max_trials = j.at("max_trials").get<long>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
        if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
        if (j.contains("snapshot_ts")) cfg.snapshot_ts = list_of<int>(j, "snapshot_ts");
        if (j.contains("hist_bins")) cfg.hist_bins = j.at("hist_bins").get<int>();
        if (j.contains("hist_range_sigma")) cfg.hist_range_sigma = j.at("hist_range_sigma").get<double>();
        if (j.contains("hist_t")) cfg.hist_t = j.at("hist_t").get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    return cfg;
}

}  // namespace

ExperimentConfig load_config(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw ConfigError("cannot open config file: " + json_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

ExperimentConfig parse_config_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return from_json(j);
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["M"] = cfg.m;
    j["N"] = cfg.n;
    j["Q"] = cfg.q;
    j["rho"] = cfg.rho;
    j["esn0_db"] = cfg.esn0_db;
    if (!cfg.rho_list.empty()) j["rho_list"] = cfg.rho_list;
    j["T"] = cfg.iterations;
    if (!cfg.iteration_list.empty()) j["T_list"] = cfg.iteration_list;
    j["damping"] = cfg.damping;
    j["d1"] = cfg.d1;
    j["d2"] = cfg.d2;
    std::vector<std::string> algs;
    algs.reserve(cfg.algorithms.size());
    for (const auto& a : cfg.algorithms) algs.push_back(algorithm_token(a));
    j["algorithms"] = algs;
    if (cfg.trials > 0) j["trials"] = cfg.trials;
    if (cfg.target_bit_errors > 0) {
        j["target_bit_errors"] = cfg.target_bit_errors;
        j["max_trials"] = cfg.max_trials;
    }
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    j["out"] = cfg.out;
    j["snapshot_ts"] = cfg.snapshot_ts;
    j["hist_bins"] = cfg.hist_bins;
    j["hist_range_sigma"] = cfg.hist_range_sigma;
    j["hist_t"] = cfg.hist_t;
    j["xi"] = cfg.xi();
    return j.dump(2);
}

}  // namespace mpadet

#pragma once

#include "swarmopt/csv.hpp"
#include "swarmopt/dynamics.hpp"
#include "swarmopt/errors.hpp"
#include "swarmopt/objectives.hpp"
#include "swarmopt/swarm.hpp"
#include "swarmopt/walks.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace swarmopt {

inline constexpr const char* kRngDescription =
    "mt19937_64; child seed = splitmix64(master ^ 0x9E3779B97F4A7C15*(k+1))";

// ---------------------------------------------------------------------------
// Experiment configuration. A single JSON document per experiment; CLI flags
// override individual fields after loading.

struct ObjectiveConfig {
    std::string name = "sphere";
    std::size_t dim = 5;
    std::optional<double> lower, upper;
    std::optional<ObjectiveSpec> custom; // programmatic hook; not serializable

    ObjectiveSpec make() const {
        if (custom) {
            custom->validate();
            return *custom;
        }
        try {
            return builtin(name, dim, lower, upper);
        } catch (const std::domain_error& e) {
            throw config_error(std::string("objective: ") + e.what());
        }
    }
};

struct ExperimentConfig {
    std::string algo = "pso"; // pso | apso | fa
    ObjectiveConfig objective;
    std::size_t trials = 1;
    std::uint64_t master_seed = 1;
    StopRule stop{1000, std::nullopt, std::nullopt};
    std::size_t jobs = 1;
    std::string out_dir;
    PsoConfig pso;
    ApsoConfig apso;
    FaConfig fa;

    OptimizerConfig optimizer() const {
        if (algo == "pso")
            return pso;
        if (algo == "apso")
            return apso;
        if (algo == "fa")
            return fa;
        throw config_error("algo: must be one of pso|apso|fa, got '" + algo + "'");
    }

    void validate() const {
        if (trials < 1)
            throw config_error("trials: must be >= 1");
        if (jobs < 1)
            throw config_error("jobs: must be >= 1");
        objective.make(); // throws for unknown names / bad dims
        std::visit([](const auto& c) { c.validate(); }, optimizer());
    }
};

namespace detail {

using json = nlohmann::json;

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (!j.contains(key))
        return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw config_error(std::string(key) + ": invalid value in config");
    }
}

inline DecaySchedule parse_schedule(const json& j, const char* field) {
    DecaySchedule s;
    std::string kind = "constant";
    read_field(j, "kind", kind);
    if (kind == "constant")
        s.kind = DecayKind::constant;
    else if (kind == "exponential")
        s.kind = DecayKind::exponential;
    else if (kind == "geometric")
        s.kind = DecayKind::geometric;
    else
        throw config_error(std::string(field) +
                           ".kind: must be constant|exponential|geometric");
    read_field(j, "rate", s.rate);
    return s;
}

inline LevyParams parse_levy(const json& j) {
    LevyParams p;
    read_field(j, "beta", p.beta);
    read_field(j, "scale", p.scale);
    read_field(j, "min_step", p.min_step);
    return p;
}

} // namespace detail

inline ExperimentConfig parse_experiment_json(const nlohmann::json& j) {
    using detail::read_field;
    ExperimentConfig cfg;
    read_field(j, "algo", cfg.algo);
    read_field(j, "trials", cfg.trials);
    read_field(j, "seed", cfg.master_seed);
    read_field(j, "jobs", cfg.jobs);
    read_field(j, "out", cfg.out_dir);
    if (j.contains("objective")) {
        const auto& o = j.at("objective");
        read_field(o, "name", cfg.objective.name);
        read_field(o, "dim", cfg.objective.dim);
        if (o.contains("lower"))
            cfg.objective.lower = o.at("lower").get<double>();
        if (o.contains("upper"))
            cfg.objective.upper = o.at("upper").get<double>();
    }
    if (j.contains("stop")) {
        const auto& s = j.at("stop");
        read_field(s, "max_iters", cfg.stop.max_iters);
        if (s.contains("max_evals"))
            cfg.stop.max_evals = s.at("max_evals").get<std::size_t>();
        if (s.contains("target"))
            cfg.stop.target_value = s.at("target").get<double>();
    }
    if (j.contains("pso")) {
        const auto& p = j.at("pso");
        read_field(p, "alpha", cfg.pso.alpha);
        read_field(p, "beta", cfg.pso.beta);
        if (p.contains("inertia"))
            cfg.pso.inertia = p.at("inertia").get<double>();
        read_field(p, "population", cfg.pso.population);
    }
    if (j.contains("apso")) {
        const auto& a = j.at("apso");
        read_field(a, "alpha0", cfg.apso.alpha0);
        read_field(a, "beta", cfg.apso.beta);
        if (a.contains("schedule"))
            cfg.apso.schedule = detail::parse_schedule(a.at("schedule"), "apso.schedule");
        std::string form = "single_step", noise = "shifted_uniform";
        read_field(a, "form", form);
        read_field(a, "noise", noise);
        if (form == "velocity")
            cfg.apso.form = ApsoForm::velocity;
        else if (form == "single_step")
            cfg.apso.form = ApsoForm::single_step;
        else
            throw config_error("apso.form: must be velocity|single_step");
        if (noise == "shifted_uniform")
            cfg.apso.noise = ApsoNoise::shifted_uniform;
        else if (noise == "gaussian")
            cfg.apso.noise = ApsoNoise::gaussian;
        else
            throw config_error("apso.noise: must be shifted_uniform|gaussian");
        read_field(a, "population", cfg.apso.population);
    }
    if (j.contains("fa")) {
        const auto& f = j.at("fa");
        read_field(f, "beta0", cfg.fa.beta0);
        read_field(f, "gamma", cfg.fa.gamma);
        read_field(f, "alpha0", cfg.fa.alpha0);
        if (f.contains("alpha_schedule"))
            cfg.fa.alpha_schedule =
                detail::parse_schedule(f.at("alpha_schedule"), "fa.alpha_schedule");
        std::string noise = "uniform";
        read_field(f, "noise", noise);
        if (noise == "uniform")
            cfg.fa.noise = FaNoiseKind::uniform;
        else if (noise == "gaussian")
            cfg.fa.noise = FaNoiseKind::gaussian;
        else if (noise == "levy")
            cfg.fa.noise = FaNoiseKind::levy;
        else
            throw config_error("fa.noise: must be gaussian|uniform|levy");
        if (f.contains("levy"))
            cfg.fa.levy_noise = detail::parse_levy(f.at("levy"));
        read_field(f, "population", cfg.fa.population);
        read_field(f, "best_only", cfg.fa.best_only);
    }
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot read config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error("config file '" + path + "': " + e.what());
    }
    return parse_experiment_json(j);
}

// ---------------------------------------------------------------------------
// Multi-trial runner with summary statistics.

struct SampleStats {
    double min = 0, max = 0, mean = 0, median = 0, stddev = 0;
};

inline SampleStats sample_stats(std::vector<double> v) {
    if (v.empty())
        throw std::domain_error("sample_stats: empty sample");
    SampleStats s;
    std::sort(v.begin(), v.end());
    s.min = v.front();
    s.max = v.back();
    const std::size_t n = v.size();
    s.median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    double sum = 0;
    for (double x : v)
        sum += x;
    s.mean = sum / static_cast<double>(n);
    double ss = 0;
    for (double x : v)
        ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(n));
    return s;
}

struct ExperimentSummary {
    SampleStats best_values;
    SampleStats evaluations;
    std::optional<double> success_rate; // fraction of trials at or below target
};

struct ExperimentResult {
    std::vector<TrialRecord> trials;
    ExperimentSummary summary;
};

/// `trials` independent seeded runs (child streams per trial), executed on up
/// to `jobs` threads. Results are keyed by trial index, so output does not
/// depend on scheduling.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const OptimizerConfig opt = cfg.optimizer();
    const ObjectiveSpec proto = cfg.objective.make();

    ExperimentResult result;
    result.trials.resize(cfg.trials);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (std::size_t k; (k = next.fetch_add(1)) < cfg.trials;) {
            if (failed.load())
                return;
            try {
                const std::uint64_t child =
                    RngStream::child(cfg.master_seed, k).seed();
                TrialRecord rec = run_optimizer(opt, proto, child, cfg.stop);
                rec.trial_index = k;
                result.trials[k] = std::move(rec);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    const std::size_t threads = std::min<std::size_t>(cfg.jobs, cfg.trials);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    if (error)
        std::rethrow_exception(error);

    std::vector<double> bests, evals;
    bests.reserve(cfg.trials);
    evals.reserve(cfg.trials);
    for (const auto& t : result.trials) {
        bests.push_back(t.best_value);
        evals.push_back(static_cast<double>(t.evaluations));
    }
    result.summary.best_values = sample_stats(bests);
    result.summary.evaluations = sample_stats(evals);
    if (cfg.stop.target_value) {
        std::size_t hits = 0;
        for (double b : bests)
            if (b <= *cfg.stop.target_value)
                ++hits;
        result.summary.success_rate =
            static_cast<double>(hits) / static_cast<double>(cfg.trials);
    }
    return result;
}

// ---------------------------------------------------------------------------
// CSV / JSON emission. All files are deterministic functions of the config
// and master seed; no timestamps.

inline void write_trials_csv(std::span<const TrialRecord> trials, const std::string& path) {
    CsvFile f(path);
    std::string header = "trial,seed,best_value,evaluations";
    const std::size_t dim = trials.empty() ? 0 : trials.front().best_point.size();
    for (std::size_t k = 0; k < dim; ++k)
        header += ",best_" + std::to_string(k);
    f.raw_line(header);
    for (const auto& t : trials) {
        std::string line = std::to_string(t.trial_index) + ',' + std::to_string(t.seed) +
                           ',' + format_double(t.best_value) + ',' +
                           std::to_string(t.evaluations);
        for (double c : t.best_point)
            line += ',' + format_double(c);
        f.raw_line(line);
    }
}

inline void write_trace_csv(const TrialRecord& trial, const std::string& path) {
    CsvFile f(path);
    f.raw_line("iter,best_value,alpha_t");
    for (const auto& p : trial.trace)
        f.row(p.iteration, p.best_value, p.alpha_t);
}

inline void write_walk_csv(const WalkPath& path, const std::string& file) {
    CsvFile f(file);
    std::string header = "step";
    for (std::size_t k = 0; k < path.dim; ++k)
        header += ",x_" + std::to_string(k);
    f.raw_line(header);
    for (std::size_t s = 0; s < path.positions.size(); ++s) {
        std::string line = std::to_string(s);
        for (double c : path.positions[s])
            line += ',' + format_double(c);
        f.raw_line(line);
    }
}

inline void write_msd_csv(const DiffusionStats& stats, const std::string& file) {
    CsvFile f(file);
    f.raw_line("t,msd");
    for (std::size_t j = 0; j < stats.times.size(); ++j)
        f.row(stats.times[j], stats.msd[j]);
}

inline void write_bifurcation_csv(std::span<const ScanPoint> scan, const std::string& file) {
    CsvFile f(file);
    f.raw_line("param,state");
    for (const auto& pt : scan) {
        if (pt.diverged) {
            f.raw_line(format_double(pt.param) + ",nan"); // divergence marker
            continue;
        }
        for (double s : pt.states)
            f.row(pt.param, s);
    }
}

inline void write_lyapunov_csv(std::span<const std::pair<double, double>> rows,
                               const std::string& file) {
    CsvFile f(file);
    f.raw_line("param,lyapunov");
    for (const auto& [param, lyap] : rows)
        f.row(param, lyap);
}

inline void write_series_csv(std::span<const double> values, const std::string& file) {
    CsvFile f(file);
    f.raw_line("index,step");
    for (std::size_t i = 0; i < values.size(); ++i)
        f.row(i, values[i]);
}

inline void write_histogram_csv(const LogHistogram& h, std::size_t total_samples,
                                const std::string& file) {
    CsvFile f(file);
    f.raw_line("bin_lo,bin_hi,count,density");
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        const double density = static_cast<double>(h.counts[b]) /
                               (h.width(b) * static_cast<double>(total_samples));
        f.row(h.edges[b], h.edges[b + 1], h.counts[b], density);
    }
}

namespace detail {

inline nlohmann::ordered_json stats_json(const SampleStats& s) {
    return {{"min", s.min}, {"median", s.median}, {"mean", s.mean},
            {"std", s.stddev}, {"max", s.max}};
}

} // namespace detail

inline void write_summary_json(const ExperimentConfig& cfg, const ExperimentResult& result,
                               const std::string& path) {
    nlohmann::ordered_json j;
    j["algorithm"] = cfg.algo;
    j["objective"] = {{"name", cfg.objective.name}, {"dim", cfg.objective.dim}};
    const ObjectiveSpec spec = cfg.objective.make();
    j["objective"]["lower"] = spec.lower.front();
    j["objective"]["upper"] = spec.upper.front();
    j["trials"] = cfg.trials;
    j["master_seed"] = cfg.master_seed;
    j["rng"] = kRngDescription;
    j["stop"]["max_iters"] = cfg.stop.max_iters;
    if (cfg.stop.max_evals)
        j["stop"]["max_evals"] = *cfg.stop.max_evals;
    if (cfg.stop.target_value)
        j["stop"]["target"] = *cfg.stop.target_value;
    j["best_value"] = detail::stats_json(result.summary.best_values);
    j["evaluations"] = detail::stats_json(result.summary.evaluations);
    if (result.summary.success_rate)
        j["success_rate"] = *result.summary.success_rate;

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
    if (!out)
        throw io_error("write failed on '" + path + "'");
}

/// Emit trials.csv, summary.json and one trace_NNN.csv per trial into
/// cfg.out_dir (created if missing). Single writer, runs after all trials.
inline void write_experiment_outputs(const ExperimentConfig& cfg,
                                     const ExperimentResult& result) {
    if (cfg.out_dir.empty())
        throw config_error("out: output directory is required");
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec)
        throw io_error("cannot create output directory '" + cfg.out_dir + "'");
    const std::filesystem::path dir(cfg.out_dir);
    write_trials_csv(result.trials, (dir / "trials.csv").string());
    write_summary_json(cfg, result, (dir / "summary.json").string());
    for (const auto& t : result.trials) {
        char name[32];
        std::snprintf(name, sizeof(name), "trace_%03zu.csv", t.trial_index);
        write_trace_csv(t, (dir / name).string());
    }
}

// ---------------------------------------------------------------------------
// Figure-data builders.

/// Raw Mantegna step series (defaults follow the 250-step, β = 1 figure).
inline std::vector<double> levy_step_series(std::uint64_t seed, std::size_t count,
                                            const LevyParams& params) {
    RngStream rng(seed);
    std::vector<double> out(count);
    for (auto& s : out)
        s = sample_levy_step(rng, params);
    return out;
}

} // namespace swarmopt

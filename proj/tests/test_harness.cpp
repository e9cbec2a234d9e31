#include "swarmopt/experiment.hpp"

#include "oracle_helpers.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace swarmopt;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
    const auto dir = fs::temp_directory_path() / "swarmopt_harness_tests";
    fs::create_directories(dir);
    return dir;
}

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> read_csv_numbers(const fs::path& p, std::size_t skip_cols = 0) {
    std::ifstream in(p);
    REQUIRE(in);
    std::string line;
    std::getline(in, line); // header
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col++ < skip_cols)
                continue;
            row.push_back(std::strtod(cell.c_str(), nullptr));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ObjectiveSpec constant_objective(double value) {
    ObjectiveSpec spec;
    spec.name = "constant";
    spec.dim = 2;
    spec.lower = {0.0, 0.0};
    spec.upper = {1.0, 1.0};
    spec.evaluator = [value](std::span<const double>) { return value; };
    return spec;
}

} // namespace

TEST_CASE("constant objective: best value and success rate") {
    ExperimentConfig cfg;
    cfg.algo = "apso";
    cfg.objective.custom = constant_objective(7.5);
    cfg.trials = 1;
    cfg.master_seed = 3;
    cfg.stop = {5, 7.5, std::nullopt};

    const auto hit = run_experiment(cfg);
    REQUIRE(hit.trials.front().best_value == 7.5);
    REQUIRE(hit.summary.success_rate.has_value());
    REQUIRE(*hit.summary.success_rate == 1.0);

    cfg.stop.target_value = 7.4; // below the constant: unreachable
    const auto miss = run_experiment(cfg);
    REQUIRE(miss.trials.front().best_value == 7.5);
    REQUIRE(*miss.summary.success_rate == 0.0);
}

TEST_CASE("experiment outputs are byte-identical across reruns") {
    ExperimentConfig cfg;
    cfg.algo = "apso";
    cfg.objective = {"sphere", 3, std::nullopt, std::nullopt, std::nullopt};
    cfg.trials = 3;
    cfg.master_seed = 7;
    cfg.stop = {10000, std::nullopt, 2000};

    const auto dir_a = test_dir() / "rerun_a";
    const auto dir_b = test_dir() / "rerun_b";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);

    cfg.out_dir = dir_a.string();
    write_experiment_outputs(cfg, run_experiment(cfg));
    cfg.out_dir = dir_b.string();
    write_experiment_outputs(cfg, run_experiment(cfg));

    for (const char* name :
         {"trials.csv", "summary.json", "trace_000.csv", "trace_001.csv", "trace_002.csv"})
        REQUIRE(read_bytes(dir_a / name) == read_bytes(dir_b / name));
}

TEST_CASE("parallel trials produce the same records as sequential") {
    ExperimentConfig cfg;
    cfg.algo = "pso";
    cfg.objective = {"rastrigin", 3, std::nullopt, std::nullopt, std::nullopt};
    cfg.trials = 8;
    cfg.master_seed = 99;
    cfg.stop = {50, std::nullopt, std::nullopt};

    cfg.jobs = 1;
    const auto seq = run_experiment(cfg);
    cfg.jobs = 4;
    const auto par = run_experiment(cfg);
    for (std::size_t k = 0; k < cfg.trials; ++k) {
        REQUIRE(seq.trials[k].best_value == par.trials[k].best_value);
        REQUIRE(seq.trials[k].seed == par.trials[k].seed);
        REQUIRE(seq.trials[k].evaluations == par.trials[k].evaluations);
    }
}

TEST_CASE("summary statistics recomputed from the trial CSV match the emitted summary") {
    ExperimentConfig cfg;
    cfg.algo = "fa";
    cfg.objective = {"rastrigin", 2, std::nullopt, std::nullopt, std::nullopt};
    cfg.trials = 10;
    cfg.master_seed = 21;
    cfg.stop = {40, std::nullopt, std::nullopt};
    const auto dir = test_dir() / "summary_check";
    fs::remove_all(dir);
    cfg.out_dir = dir.string();

    const auto result = run_experiment(cfg);
    write_experiment_outputs(cfg, result);

    const auto rows = read_csv_numbers(dir / "trials.csv");
    std::vector<double> bests, evals;
    for (const auto& r : rows) {
        bests.push_back(r[2]);
        evals.push_back(r[3]);
    }
    REQUIRE(bests.size() == cfg.trials);

    auto recompute = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const double mean = oracle::mean(v);
        const double stddev = std::sqrt(oracle::variance(v));
        const std::size_t n = v.size();
        const double median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
        return std::array<double, 5>{v.front(), median, mean, stddev, v.back()};
    };
    const auto b = recompute(bests);
    REQUIRE(std::abs(b[0] - result.summary.best_values.min) <= 1e-12);
    REQUIRE(std::abs(b[1] - result.summary.best_values.median) <= 1e-12);
    REQUIRE(std::abs(b[2] - result.summary.best_values.mean) <= 1e-12);
    REQUIRE(std::abs(b[3] - result.summary.best_values.stddev) <= 1e-12);
    REQUIRE(std::abs(b[4] - result.summary.best_values.max) <= 1e-12);
    const auto e = recompute(evals);
    REQUIRE(std::abs(e[1] - result.summary.evaluations.median) <= 1e-12);
    REQUIRE(std::abs(e[2] - result.summary.evaluations.mean) <= 1e-12);

    // and the JSON file carries the same numbers
    nlohmann::json j;
    std::ifstream in(dir / "summary.json");
    in >> j;
    REQUIRE(std::abs(j["best_value"]["median"].get<double>() -
                     result.summary.best_values.median) <= 1e-12);
    REQUIRE(std::abs(j["evaluations"]["mean"].get<double>() -
                     result.summary.evaluations.mean) <= 1e-12);
    REQUIRE(j["master_seed"].get<std::uint64_t>() == cfg.master_seed);
    REQUIRE(j["rng"].get<std::string>() == kRngDescription);
}

TEST_CASE("apso and fa side by side under one evaluation budget") {
    ExperimentConfig apso;
    apso.algo = "apso";
    apso.objective = {"sphere", 5, std::nullopt, std::nullopt, std::nullopt};
    apso.trials = 20;
    apso.master_seed = 31;
    apso.stop = {100000, std::nullopt, 10000};
    apso.apso.schedule = {DecayKind::geometric, 0.99};

    ExperimentConfig fa = apso;
    fa.algo = "fa";
    fa.fa.population = 15;
    fa.fa.alpha0 = 0.3;
    fa.fa.alpha_schedule = {DecayKind::geometric, 0.95};

    const auto ra = run_experiment(apso);
    const auto rf = run_experiment(fa);
    REQUIRE(std::isfinite(ra.summary.best_values.median));
    REQUIRE(std::isfinite(rf.summary.best_values.median));
    for (const auto& t : ra.trials)
        REQUIRE(t.evaluations <= 10000);
    for (const auto& t : rf.trials)
        REQUIRE(t.evaluations <= 10000);
}

TEST_CASE("config validation names the offending field") {
    ExperimentConfig cfg;
    cfg.algo = "annealing";
    REQUIRE_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("algo"));

    cfg = ExperimentConfig{};
    cfg.trials = 0;
    REQUIRE_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("trials"));

    cfg = ExperimentConfig{};
    cfg.objective.name = "mystery";
    REQUIRE_THROWS_WITH(cfg.validate(), Catch::Matchers::ContainsSubstring("objective"));

    cfg = ExperimentConfig{};
    REQUIRE_THROWS_AS(write_experiment_outputs(cfg, ExperimentResult{}), config_error);
}

TEST_CASE("unwritable output path raises an i/o error") {
    const auto blocker = test_dir() / "blocked";
    std::ofstream(blocker).put('x'); // a file where a directory is needed
    ExperimentConfig cfg;
    cfg.algo = "apso";
    cfg.objective = {"sphere", 2, std::nullopt, std::nullopt, std::nullopt};
    cfg.stop = {3, std::nullopt, std::nullopt};
    cfg.out_dir = (blocker / "sub").string();
    const auto result = run_experiment(cfg);
    REQUIRE_THROWS_AS(write_experiment_outputs(cfg, result), io_error);
}

TEST_CASE("json config parsing and overrides") {
    const auto j = nlohmann::json::parse(R"({
        "algo": "fa",
        "objective": {"name": "rastrigin", "dim": 4, "lower": -3.0, "upper": 3.0},
        "trials": 6,
        "seed": 4242,
        "jobs": 2,
        "stop": {"max_iters": 250, "max_evals": 9000, "target": 0.001},
        "fa": {"beta0": 0.9, "gamma": 2.5, "alpha0": 0.2,
               "alpha_schedule": {"kind": "geometric", "rate": 0.93},
               "noise": "levy", "levy": {"beta": 1.4, "scale": 0.5, "min_step": 0.01},
               "population": 12, "best_only": false},
        "apso": {"form": "velocity", "noise": "gaussian",
                 "schedule": {"kind": "exponential", "rate": 0.05}}
    })");
    const auto cfg = parse_experiment_json(j);
    REQUIRE(cfg.algo == "fa");
    REQUIRE(cfg.objective.name == "rastrigin");
    REQUIRE(cfg.objective.dim == 4);
    REQUIRE(cfg.objective.lower == -3.0);
    REQUIRE(cfg.trials == 6);
    REQUIRE(cfg.master_seed == 4242);
    REQUIRE(cfg.jobs == 2);
    REQUIRE(cfg.stop.max_iters == 250);
    REQUIRE(cfg.stop.max_evals == 9000);
    REQUIRE(cfg.stop.target_value == 0.001);
    REQUIRE(cfg.fa.beta0 == 0.9);
    REQUIRE(cfg.fa.gamma == 2.5);
    REQUIRE(cfg.fa.alpha_schedule.kind == DecayKind::geometric);
    REQUIRE(cfg.fa.alpha_schedule.rate == 0.93);
    REQUIRE(cfg.fa.noise == FaNoiseKind::levy);
    REQUIRE(cfg.fa.levy_noise.beta == 1.4);
    REQUIRE(cfg.fa.population == 12);
    REQUIRE(cfg.apso.form == ApsoForm::velocity);
    REQUIRE(cfg.apso.noise == ApsoNoise::gaussian);
    REQUIRE(cfg.apso.schedule.kind == DecayKind::exponential);
    cfg.validate();

    auto bad = j;
    bad["fa"]["alpha_schedule"]["kind"] = "sqrt";
    REQUIRE_THROWS_AS(parse_experiment_json(bad), config_error);

    auto bad2 = j;
    bad2["trials"] = "many";
    REQUIRE_THROWS_AS(parse_experiment_json(bad2), config_error);

    REQUIRE_THROWS_AS(load_experiment_config("/nonexistent/path/config.json"), io_error);
}

TEST_CASE("walk csv layout") {
    RngStream rng(1);
    const auto path = simulate_walk(rng, 2, 250, LevyParams{1.0, 1.0, 0.0});
    const auto file = test_dir() / "walk.csv";
    write_walk_csv(path, file.string());

    std::ifstream in(file);
    std::string header;
    std::getline(in, header);
    REQUIRE(header == "step,x_0,x_1");
    const auto rows = read_csv_numbers(file);
    REQUIRE(rows.size() == 251);
    REQUIRE(rows.front() == std::vector<double>{0.0, 0.0, 0.0});
    // values round-trip exactly at 17 significant digits
    for (std::size_t k = 0; k < 2; ++k)
        REQUIRE(rows.back()[k + 1] == path.positions.back()[k]);
}

TEST_CASE("bifurcation csv keeps the convergent band at zero") {
    // burn-in is raised beyond the default here: grid points just below the
    // threshold converge at rate |1-b0| per step, so 1000 steps is not enough
    // for b0 = 1.99 to fall under 1e-6.
    const auto scan = bifurcation_scan(MapKind::fa_exact, 0.5, 4.5, 401, 0.3, 5000, 50);
    const auto file = test_dir() / "bifurcation.csv";
    write_bifurcation_csv(scan, file.string());

    std::ifstream in(file);
    std::string header;
    std::getline(in, header);
    REQUIRE(header == "param,state");
    const auto rows = read_csv_numbers(file);
    std::size_t below = 0;
    for (const auto& r : rows) {
        if (r[0] < 2.0) {
            REQUIRE(std::abs(r[1]) < 1e-6);
            ++below;
        }
    }
    REQUIRE(below > 0);
}

TEST_CASE("lyapunov and histogram and series csv layouts") {
    const std::vector<std::pair<double, double>> rows{{1.0, -0.5}, {4.0, 0.69}};
    const auto lfile = test_dir() / "lyap.csv";
    write_lyapunov_csv(rows, lfile.string());
    const auto lrows = read_csv_numbers(lfile);
    REQUIRE(lrows.size() == 2);
    REQUIRE(lrows[1][0] == 4.0);

    const auto series = levy_step_series(5, 250, LevyParams{1.0, 1.0, 0.0});
    REQUIRE(series.size() == 250);
    const auto sfile = test_dir() / "series.csv";
    write_series_csv(series, sfile.string());
    const auto srows = read_csv_numbers(sfile);
    REQUIRE(srows.size() == 250);
    for (std::size_t i = 0; i < 250; ++i)
        REQUIRE(srows[i][1] == series[i]); // bitwise round-trip

    std::vector<double> mags(series.size());
    std::transform(series.begin(), series.end(), mags.begin(),
                   [](double s) { return std::abs(s); });
    std::sort(mags.begin(), mags.end());
    const auto hist = log_histogram(mags, mags.front() > 0 ? mags.front() : 1e-9,
                                    mags.back(), 20);
    const auto hfile = test_dir() / "hist.csv";
    write_histogram_csv(hist, mags.size(), hfile.string());
    REQUIRE(read_csv_numbers(hfile).size() == 20);
}

TEST_CASE("trace csv carries the decayed amplitude") {
    ApsoConfig apso;
    apso.schedule = {DecayKind::geometric, 0.9};
    apso.alpha0 = 1.0;
    const auto rec =
        run_optimizer(apso, builtin("sphere", 2), 17, StopRule{12, std::nullopt, std::nullopt});
    const auto file = test_dir() / "trace.csv";
    write_trace_csv(rec, file.string());
    const auto rows = read_csv_numbers(file);
    REQUIRE(rows.size() == rec.trace.size());
    REQUIRE(rows[0][2] == 1.0);
    REQUIRE(rows[10][2] == std::pow(0.9, 10.0));
    for (std::size_t i = 1; i < rows.size(); ++i)
        REQUIRE(rows[i][1] <= rows[i - 1][1]);
}

TEST_CASE("doubles survive the csv format round trip bitwise") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 5e-324, 123456789.123456789,
                     1.7976931348623157e308, -2.2250738585072014e-308, 0.0,
                     3.141592653589793}) {
        const std::string s = format_double(v);
        REQUIRE(std::strtod(s.c_str(), nullptr) == v);
    }
}

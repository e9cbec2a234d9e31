// Command-line front end: optimizer experiments, random-walk and map
// diagnostics, CSV emission. Exit codes: 0 success, 2 config error,
// 3 numerical error, 4 I/O error.

#include "swarmopt/swarmopt.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace swarmopt;

struct OptimizeArgs {
    std::string config_file, algo, objective, out;
    std::uint64_t seed = 0;
    std::size_t dim = 0, trials = 0, max_evals = 0, max_iters = 0, jobs = 0,
                population = 0;
    double target = 0, lower = 0, upper = 0;
};

void add_optimize(CLI::App& app) {
    auto args = std::make_shared<OptimizeArgs>();
    auto* cmd = app.add_subcommand("optimize", "run a multi-trial optimizer experiment");
    auto* o_algo = cmd->add_option("--algo", args->algo, "pso|apso|fa");
    auto* o_obj = cmd->add_option("--objective", args->objective,
                                  "sphere|rosenbrock|ackley|rastrigin");
    auto* o_dim = cmd->add_option("--dim", args->dim, "problem dimension");
    auto* o_trials = cmd->add_option("--trials", args->trials, "independent trials");
    auto* o_seed = cmd->add_option("--seed", args->seed, "master seed");
    auto* o_evals = cmd->add_option("--max-evals", args->max_evals,
                                    "evaluation budget per trial");
    auto* o_target = cmd->add_option("--target", args->target, "stop at this value");
    auto* o_cfgf = cmd->add_option("--config", args->config_file,
                                   "JSON config (flags override fields)");
    auto* o_out = cmd->add_option("--out", args->out, "output directory");
    auto* o_iters = cmd->add_option("--max-iters", args->max_iters, "iteration cap");
    auto* o_jobs = cmd->add_option("--jobs", args->jobs, "parallel trial threads");
    auto* o_pop = cmd->add_option("--population", args->population, "swarm size");
    auto* o_lower = cmd->add_option("--lower", args->lower, "objective lower bound");
    auto* o_upper = cmd->add_option("--upper", args->upper, "objective upper bound");

    cmd->callback([=]() {
        ExperimentConfig cfg;
        if (o_cfgf->count())
            cfg = load_experiment_config(args->config_file);
        if (o_algo->count())
            cfg.algo = args->algo;
        if (o_obj->count())
            cfg.objective.name = args->objective;
        if (o_dim->count())
            cfg.objective.dim = args->dim;
        if (o_lower->count())
            cfg.objective.lower = args->lower;
        if (o_upper->count())
            cfg.objective.upper = args->upper;
        if (o_trials->count())
            cfg.trials = args->trials;
        if (o_seed->count())
            cfg.master_seed = args->seed;
        if (o_evals->count())
            cfg.stop.max_evals = args->max_evals;
        if (o_target->count())
            cfg.stop.target_value = args->target;
        if (o_iters->count())
            cfg.stop.max_iters = args->max_iters;
        if (o_jobs->count())
            cfg.jobs = args->jobs;
        if (o_pop->count()) {
            cfg.pso.population = args->population;
            cfg.apso.population = args->population;
            cfg.fa.population = args->population;
        }
        if (o_out->count())
            cfg.out_dir = args->out;

        const ExperimentResult result = run_experiment(cfg);
        write_experiment_outputs(cfg, result);
        std::cout << cfg.algo << " on " << cfg.objective.name << "(d=" << cfg.objective.dim
                  << "): " << cfg.trials << " trials, median best "
                  << format_double(result.summary.best_values.median) << ", median evals "
                  << format_double(result.summary.evaluations.median) << '\n';
        if (result.summary.success_rate)
            std::cout << "success rate " << format_double(*result.summary.success_rate)
                      << '\n';
    });
}

StepParams make_step_params(const std::string& kind, double sigma, double beta,
                            double scale, double min_step) {
    if (kind == "brownian")
        return GaussianStepParams{sigma, {}};
    if (kind == "levy")
        return LevyParams{beta, scale, min_step};
    throw config_error("kind: must be brownian|levy, got '" + kind + "'");
}

void add_walk(CLI::App& app) {
    struct Args {
        std::string kind = "levy", out;
        std::size_t dim = 2, steps = 250;
        double beta = 1.0, sigma = 1.0, scale = 1.0, min_step = 0.0;
        std::uint64_t seed = 1;
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("walk", "simulate one random walk, write the path CSV");
    cmd->add_option("--kind", args->kind, "brownian|levy");
    cmd->add_option("--dim", args->dim, "dimension (default 2)");
    cmd->add_option("--steps", args->steps, "number of steps (default 250)");
    cmd->add_option("--beta", args->beta, "stability index for levy steps (default 1)");
    cmd->add_option("--sigma", args->sigma, "gaussian step sigma (default 1)");
    cmd->add_option("--scale", args->scale, "levy scale (default 1)");
    cmd->add_option("--min-step", args->min_step, "smallest admissible levy step");
    cmd->add_option("--seed", args->seed, "stream seed (default 1)");
    cmd->add_option("--out", args->out, "output CSV")->required();
    cmd->callback([=]() {
        RngStream rng(args->seed);
        const auto path = simulate_walk(
            rng, args->dim, args->steps,
            make_step_params(args->kind, args->sigma, args->beta, args->scale,
                             args->min_step));
        write_walk_csv(path, args->out);
    });
}

void add_msd(CLI::App& app) {
    struct Args {
        std::string kind = "brownian", out;
        std::size_t ensemble = 10000, steps = 100, dim = 1;
        double beta = 1.5, sigma = 1.0, scale = 1.0, min_step = 0.1;
        std::uint64_t seed = 1;
    };
    auto args = std::make_shared<Args>();
    auto* cmd =
        app.add_subcommand("msd", "ensemble mean-squared displacement, write t,msd CSV");
    cmd->add_option("--kind", args->kind, "brownian|levy");
    cmd->add_option("--ensemble", args->ensemble, "number of walks (default 10000)");
    cmd->add_option("--steps", args->steps, "steps per walk (default 100)");
    cmd->add_option("--dim", args->dim, "dimension (default 1)");
    cmd->add_option("--beta", args->beta, "levy stability index (default 1.5)");
    cmd->add_option("--sigma", args->sigma, "gaussian step sigma (default 1)");
    cmd->add_option("--scale", args->scale, "levy scale (default 1)");
    cmd->add_option("--min-step", args->min_step,
                    "smallest admissible levy step (default 0.1)");
    cmd->add_option("--seed", args->seed, "master seed (default 1)");
    cmd->add_option("--out", args->out, "output CSV")->required();
    cmd->callback([=]() {
        std::vector<std::size_t> times(args->steps);
        for (std::size_t t = 0; t < args->steps; ++t)
            times[t] = t + 1;
        const auto stats = ensemble_msd(
            args->seed, args->ensemble, args->dim, args->steps,
            make_step_params(args->kind, args->sigma, args->beta, args->scale,
                             args->min_step),
            std::move(times));
        write_msd_csv(stats, args->out);
        std::cout << "fitted exponent " << format_double(stats.fitted_exponent)
                  << ", coefficient " << format_double(stats.fitted_coefficient) << '\n';
    });
}

void add_bifurcation(CLI::App& app) {
    struct Args {
        std::string map = "fa", out, lyapunov_out;
        double from = 0.5, to = 4.5, u0 = 0.3;
        std::size_t grid = 400, burn_in = 1000, record = 200, lyap_iters = 5000;
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("bifurcation",
                                   "parameter scan of a 1-D map, write param,state CSV");
    cmd->add_option("--map", args->map, "fa|fa-cubic|logistic");
    cmd->add_option("--from", args->from, "parameter range start");
    cmd->add_option("--to", args->to, "parameter range end");
    cmd->add_option("--grid", args->grid, "parameter grid points (default 400)");
    cmd->add_option("--burn-in", args->burn_in, "discarded iterations (default 1000)");
    cmd->add_option("--record", args->record, "recorded states per point (default 200)");
    cmd->add_option("--u0", args->u0, "initial state (default 0.3)");
    cmd->add_option("--out", args->out, "output CSV")->required();
    cmd->add_option("--lyapunov", args->lyapunov_out,
                    "also write a param,lyapunov CSV to this file");
    cmd->add_option("--lyapunov-iters", args->lyap_iters,
                    "iterations for the exponent average (default 5000)");
    cmd->callback([=]() {
        MapKind map;
        if (args->map == "fa")
            map = MapKind::fa_exact;
        else if (args->map == "fa-cubic")
            map = MapKind::fa_cubic;
        else if (args->map == "logistic")
            map = MapKind::logistic;
        else
            throw config_error("map: must be fa|fa-cubic|logistic, got '" + args->map +
                               "'");
        const auto scan = bifurcation_scan(map, args->from, args->to, args->grid, args->u0,
                                           args->burn_in, args->record);
        write_bifurcation_csv(scan, args->out);
        if (!args->lyapunov_out.empty()) {
            std::vector<std::pair<double, double>> rows;
            rows.reserve(scan.size());
            for (const auto& pt : scan)
                rows.emplace_back(pt.param, lyapunov_estimate(map, pt.param, args->u0,
                                                              args->lyap_iters));
            write_lyapunov_csv(rows, args->lyapunov_out);
        }
    });
}

void add_pso_regime(CLI::App& app) {
    auto gamma = std::make_shared<double>(2.0);
    auto* cmd = app.add_subcommand("pso-regime",
                                   "eigenvalues and regime of the single-particle map");
    cmd->add_option("--gamma", *gamma, "combined learning parameter alpha+beta")
        ->required();
    cmd->callback([=]() {
        const RegimeReport rep = classify_pso_regime(*gamma);
        auto print = [](const char* label, std::complex<double> l) {
            std::cout << label << " = " << format_double(l.real());
            if (l.imag() != 0.0)
                std::cout << (l.imag() > 0 ? " + " : " - ")
                          << format_double(std::abs(l.imag())) << "i";
            std::cout << "  (|lambda| = " << format_double(std::abs(l)) << ")\n";
        };
        print("lambda1", rep.lambda1);
        print("lambda2", rep.lambda2);
        std::cout << "classification = " << to_string(rep.classification) << '\n';
    });
}

void add_levy_hist(CLI::App& app) {
    struct Args {
        std::string out, raw_out;
        double beta = 1.0, scale = 1.0, min_step = 0.0;
        std::size_t samples = 1000000, bins = 60;
        std::uint64_t seed = 1;
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("levy-hist",
                                   "histogram of Mantegna step magnitudes (log bins)");
    cmd->add_option("--beta", args->beta, "stability index (default 1)");
    cmd->add_option("--samples", args->samples, "sample count (default 1e6)");
    cmd->add_option("--bins", args->bins, "log bins (default 60)");
    cmd->add_option("--scale", args->scale, "step scale (default 1)");
    cmd->add_option("--min-step", args->min_step, "smallest admissible step");
    cmd->add_option("--seed", args->seed, "stream seed (default 1)");
    cmd->add_option("--out", args->out, "output CSV")->required();
    cmd->add_option("--raw-out", args->raw_out,
                    "also write the raw index,step series to this file");
    cmd->callback([=]() {
        const LevyParams params{args->beta, args->scale, args->min_step};
        const auto steps = levy_step_series(args->seed, args->samples, params);
        if (!args->raw_out.empty())
            write_series_csv(steps, args->raw_out);
        std::vector<double> mags(steps.size());
        std::transform(steps.begin(), steps.end(), mags.begin(),
                       [](double s) { return std::abs(s); });
        std::sort(mags.begin(), mags.end());
        double lo = detail::quantile_of_sorted(mags, 0.001);
        if (!(lo > 0.0))
            lo = mags.front() > 0.0 ? mags.front() : 1e-12;
        const double hi = detail::quantile_of_sorted(mags, 0.999);
        write_histogram_csv(log_histogram(mags, lo, hi, args->bins), mags.size(),
                            args->out);
        if (steps.size() >= 1000)
            std::cout << "tail slope " << format_double(tail_exponent(steps))
                      << " (expected " << format_double(-(1.0 + args->beta)) << ")\n";
    });
}

void add_step_size(CLI::App& app) {
    struct Args {
        double scale = 1.0, tau = 1.0, r_fraction = 0.1;
        std::size_t dim = 1, iters = 100;
    };
    auto args = std::make_shared<Args>();
    auto* cmd = app.add_subcommand("step-size", "recommended random-walk step size");
    cmd->add_option("--scale", args->scale, "length scale L")->required();
    cmd->add_option("--dim", args->dim, "dimension")->required();
    cmd->add_option("--iters", args->iters, "iteration count")->required();
    cmd->add_option("--tau", args->tau, "time per jump (default 1)");
    cmd->add_option("--r-fraction", args->r_fraction,
                    "search-region fraction of L (default 0.1)");
    cmd->callback([=]() {
        std::cout << "s = "
                  << format_double(recommended_step_size(args->scale, args->dim,
                                                         args->iters, args->tau,
                                                         args->r_fraction))
                  << '\n';
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"swarm metaheuristics and randomization toolkit"};
    app.require_subcommand(1);
    add_optimize(app);
    add_walk(app);
    add_msd(app);
    add_bifurcation(app);
    add_pso_regime(app);
    add_levy_hist(app);
    add_step_size(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const swarmopt::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const swarmopt::io_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 4;
    } catch (const swarmopt::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

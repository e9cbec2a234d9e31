#pragma once

#include "swarmopt/errors.hpp"
#include "swarmopt/objectives.hpp"
#include "swarmopt/stochastic.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace swarmopt {

// ---------------------------------------------------------------------------
// Randomness-decay schedules shared by APSO and FA.

enum class DecayKind { constant, exponential, geometric };

struct DecaySchedule {
    DecayKind kind = DecayKind::constant;
    double rate = 0.97; // γ_c; decay control for exponential/geometric

    void validate() const {
        if (kind == DecayKind::geometric && !(rate > 0.0 && rate < 1.0))
            throw config_error("DecaySchedule: geometric rate must lie in (0,1)");
        if (kind == DecayKind::exponential && !(rate > 0.0))
            throw config_error("DecaySchedule: exponential rate must be > 0");
    }
};

/// Amplitude at iteration t: α₀ (constant), α₀ e^(−γ_c t) or α₀ γ_c^t.
inline double decayed_amplitude(const DecaySchedule& s, double alpha0, std::size_t t) {
    switch (s.kind) {
    case DecayKind::constant:
        return alpha0;
    case DecayKind::exponential:
        return alpha0 * std::exp(-s.rate * static_cast<double>(t));
    case DecayKind::geometric:
        return alpha0 * std::pow(s.rate, static_cast<double>(t));
    }
    return alpha0;
}

// ---------------------------------------------------------------------------
// Configurations.

struct PsoConfig {
    double alpha = 2.0; // attraction toward the global best
    double beta = 2.0;  // attraction toward the personal best
    std::optional<double> inertia;              // θ ∈ [0,1]; absent = 1
    std::optional<std::vector<double>> v_min;   // per-dimension velocity clamp
    std::optional<std::vector<double>> v_max;   // default ±0.5·(upper−lower)
    std::size_t population = 20;
    std::size_t max_iters = 1000;

    void validate() const {
        if (!(alpha >= 0.0) || !(beta >= 0.0))
            throw config_error("PsoConfig: alpha and beta must be >= 0");
        if (inertia && !(*inertia >= 0.0 && *inertia <= 1.0))
            throw config_error("PsoConfig: inertia must lie in [0,1]");
        if (population < 1)
            throw config_error("PsoConfig: population must be >= 1");
    }
};

enum class ApsoForm { velocity, single_step };
enum class ApsoNoise { shifted_uniform, gaussian };

struct ApsoConfig {
    double alpha0 = 0.5; // initial randomness amplitude
    double beta = 0.5;   // attraction toward the global best
    DecaySchedule schedule{};
    ApsoForm form = ApsoForm::single_step;
    ApsoNoise noise = ApsoNoise::shifted_uniform;
    std::size_t population = 20;
    std::size_t max_iters = 1000;

    void validate() const {
        if (!(alpha0 > 0.0))
            throw config_error("ApsoConfig: alpha0 must be > 0");
        if (!(beta >= 0.0 && beta <= 1.0))
            throw config_error("ApsoConfig: beta must lie in [0,1]");
        if (population < 1)
            throw config_error("ApsoConfig: population must be >= 1");
        schedule.validate();
    }
};

enum class FaNoiseKind { gaussian, uniform, levy };

struct FaConfig {
    double beta0 = 1.0; // attractiveness at r = 0
    double gamma = 1.0; // absorption coefficient; characteristic distance 1/√γ
    double alpha0 = 0.5;
    DecaySchedule alpha_schedule{};
    FaNoiseKind noise = FaNoiseKind::uniform;
    LevyParams levy_noise{1.5, 1.0, 0.0};
    std::size_t population = 25;
    std::size_t max_iters = 500;
    bool best_only = false; // attract to the global best only (γ→0 limit mode)
    std::function<double(std::size_t)> beta0_schedule; // optional β₀(t) override

    void validate() const {
        // gamma = 0 is admitted as the constant-attractiveness limit
        if (!(gamma >= 0.0))
            throw config_error("FaConfig: gamma must be >= 0");
        if (!(beta0 >= 0.0))
            throw config_error("FaConfig: beta0 must be >= 0");
        if (!(alpha0 >= 0.0))
            throw config_error("FaConfig: alpha0 must be >= 0");
        if (population < 2)
            throw config_error("FaConfig: population must be >= 2");
        alpha_schedule.validate();
        if (noise == FaNoiseKind::levy)
            levy_noise.validate();
    }
};

using OptimizerConfig = std::variant<PsoConfig, ApsoConfig, FaConfig>;

// ---------------------------------------------------------------------------
// Update kernels. Pure functions, shared between optimizers so that the
// γ→0 firefly limit reproduces the APSO single-step trajectory bitwise.

/// One velocity component: θ v + α ε₁ (g − x) + β ε₂ (p − x).
inline double pso_velocity_component(double v, double x, double gbest, double pbest,
                                     double theta, double alpha, double beta, double eps1,
                                     double eps2) {
    return theta * v + alpha * eps1 * (gbest - x) + beta * eps2 * (pbest - x);
}

/// Convex move toward a target plus additive noise: (1−w) x + w · target + noise.
inline double convex_step(double x, double target, double weight, double noise) {
    return (1.0 - weight) * x + weight * target + noise;
}

/// Attractiveness β(r) = β₀ e^(−γ r²).
inline double fa_attractiveness(double beta0, double gamma, double r) {
    return beta0 * std::exp(-gamma * r * r);
}

inline double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Swarm state.

struct SwarmState {
    std::vector<std::vector<double>> positions;
    std::vector<std::vector<double>> velocities;     // PSO and APSO velocity form
    std::vector<std::vector<double>> personal_bests; // standard PSO only
    std::vector<double> personal_best_values;
    std::vector<double> current_values; // f at current positions (firefly brightness = −f)
    std::vector<double> global_best;
    double global_best_value = std::numeric_limits<double>::infinity();
    std::size_t iteration = 0;
    RngStream rng;

    explicit SwarmState(RngStream stream) : rng(std::move(stream)) {}

    void record_if_better(std::size_t i, double value) {
        current_values[i] = value;
        if (value < global_best_value) {
            global_best_value = value;
            global_best = positions[i];
        }
    }
};

namespace detail {

inline void clamp_to_bounds(std::vector<double>& x, const ObjectiveSpec& obj) {
    for (std::size_t k = 0; k < x.size(); ++k)
        x[k] = std::min(std::max(x[k], obj.lower[k]), obj.upper[k]);
}

constexpr std::size_t kNoEvalCap = std::numeric_limits<std::size_t>::max();

} // namespace detail

/// Fresh swarm: positions uniform over the bounds, velocities zero, every
/// particle evaluated once. `max_evals` is the absolute evaluation cap.
inline SwarmState init_swarm(std::uint64_t seed, std::size_t population, ObjectiveSpec& obj,
                             bool with_velocities, bool with_personal_bests) {
    obj.validate();
    SwarmState st{RngStream(seed)};
    st.positions.resize(population);
    st.current_values.resize(population);
    if (with_velocities)
        st.velocities.assign(population, std::vector<double>(obj.dim, 0.0));
    for (std::size_t i = 0; i < population; ++i) {
        auto& x = st.positions[i];
        x.resize(obj.dim);
        for (std::size_t k = 0; k < obj.dim; ++k)
            x[k] = sample_uniform(st.rng, obj.lower[k], obj.upper[k]);
    }
    for (std::size_t i = 0; i < population; ++i)
        st.record_if_better(i, obj.evaluate(st.positions[i]));
    if (with_personal_bests) {
        st.personal_bests = st.positions;
        st.personal_best_values = st.current_values;
    }
    return st;
}

// ---------------------------------------------------------------------------
// One-iteration steps. Each advances state.iteration by one; evaluations stop
// once obj.eval_count reaches max_evals (a sweep may end mid-population).

inline void pso_step(SwarmState& st, const PsoConfig& cfg, ObjectiveSpec& obj,
                     std::size_t max_evals = detail::kNoEvalCap) {
    cfg.validate();
    const std::size_t n = st.positions.size();
    const std::size_t d = obj.dim;
    if (st.personal_bests.size() != n || st.velocities.size() != n)
        throw std::domain_error("pso_step: state not initialized for PSO");
    if ((cfg.v_min && cfg.v_min->size() != d) || (cfg.v_max && cfg.v_max->size() != d))
        throw std::domain_error("pso_step: velocity clamp size mismatch");

    const double theta = cfg.inertia.value_or(1.0);
    ++st.iteration;
    for (std::size_t i = 0; i < n; ++i) {
        if (obj.eval_count >= max_evals)
            return;
        auto& x = st.positions[i];
        auto& v = st.velocities[i];
        for (std::size_t k = 0; k < d; ++k) {
            const double e1 = st.rng.uniform01();
            const double e2 = st.rng.uniform01();
            double vk = pso_velocity_component(v[k], x[k], st.global_best[k],
                                               st.personal_bests[i][k], theta, cfg.alpha,
                                               cfg.beta, e1, e2);
            const double vlo = cfg.v_min ? (*cfg.v_min)[k] : -0.5 * (obj.upper[k] - obj.lower[k]);
            const double vhi = cfg.v_max ? (*cfg.v_max)[k] : 0.5 * (obj.upper[k] - obj.lower[k]);
            vk = std::min(std::max(vk, vlo), vhi);
            v[k] = vk;
            x[k] += vk;
        }
        detail::clamp_to_bounds(x, obj);
        const double fx = obj.evaluate(x);
        if (fx < st.personal_best_values[i]) {
            st.personal_best_values[i] = fx;
            st.personal_bests[i] = x;
        }
        st.record_if_better(i, fx);
    }
}

inline void apso_step(SwarmState& st, const ApsoConfig& cfg, ObjectiveSpec& obj,
                      std::size_t max_evals = detail::kNoEvalCap) {
    cfg.validate();
    const std::size_t n = st.positions.size();
    const std::size_t d = obj.dim;
    const double alpha_t = decayed_amplitude(cfg.schedule, cfg.alpha0, st.iteration);
    ++st.iteration;

    for (std::size_t i = 0; i < n; ++i) {
        if (obj.eval_count >= max_evals)
            return;
        auto& x = st.positions[i];
        for (std::size_t k = 0; k < d; ++k) {
            const double eps = cfg.noise == ApsoNoise::shifted_uniform
                                   ? st.rng.uniform01() - 0.5
                                   : st.rng.standard_normal();
            if (cfg.form == ApsoForm::velocity) {
                auto& v = st.velocities[i];
                v[k] = v[k] + alpha_t * eps + cfg.beta * (st.global_best[k] - x[k]);
                x[k] += v[k];
            } else {
                x[k] = convex_step(x[k], st.global_best[k], cfg.beta, alpha_t * eps);
            }
        }
        detail::clamp_to_bounds(x, obj);
        st.record_if_better(i, obj.evaluate(x));
    }
}

inline void fa_step(SwarmState& st, const FaConfig& cfg, ObjectiveSpec& obj,
                    std::size_t max_evals = detail::kNoEvalCap) {
    cfg.validate();
    const std::size_t n = st.positions.size();
    if (n < 2)
        throw config_error("fa_step: population must be >= 2");
    const std::size_t d = obj.dim;
    const double alpha_t = decayed_amplitude(cfg.alpha_schedule, cfg.alpha0, st.iteration);
    const double beta0_t =
        cfg.beta0_schedule ? cfg.beta0_schedule(st.iteration) : cfg.beta0;
    ++st.iteration;

    auto noise_draw = [&]() -> double {
        switch (cfg.noise) {
        case FaNoiseKind::uniform:
            return st.rng.uniform01() - 0.5;
        case FaNoiseKind::gaussian:
            return st.rng.standard_normal();
        case FaNoiseKind::levy:
            return sample_levy_step(st.rng, cfg.levy_noise);
        }
        return 0.0;
    };
    // randomization is scaled by the per-dimension domain width
    auto noise_term = [&](std::size_t k) { return alpha_t * (obj.upper[k] - obj.lower[k]) * noise_draw(); };

    if (cfg.best_only) {
        // γ→0 limit mode: every firefly moves toward the global best,
        // mirroring the APSO single-step update exactly.
        for (std::size_t i = 0; i < n; ++i) {
            if (obj.eval_count >= max_evals)
                return;
            auto& x = st.positions[i];
            const std::vector<double> target = st.global_best;
            const double r = euclidean_distance(x, target);
            const double w = fa_attractiveness(beta0_t, cfg.gamma, r);
            for (std::size_t k = 0; k < d; ++k)
                x[k] = convex_step(x[k], target[k], w, noise_term(k));
            detail::clamp_to_bounds(x, obj);
            st.record_if_better(i, obj.evaluate(x));
        }
        return;
    }

    // Full pairwise sweep: i moves toward every strictly brighter j, with a
    // re-evaluation after each move; a firefly with no brighter peer takes
    // the random term only.
    for (std::size_t i = 0; i < n; ++i) {
        bool moved = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i)
                continue;
            if (!(st.current_values[j] < st.current_values[i]))
                continue; // ties do not attract
            if (obj.eval_count >= max_evals)
                return;
            auto& x = st.positions[i];
            const double r = euclidean_distance(x, st.positions[j]);
            const double w = fa_attractiveness(beta0_t, cfg.gamma, r);
            for (std::size_t k = 0; k < d; ++k)
                x[k] = convex_step(x[k], st.positions[j][k], w, noise_term(k));
            detail::clamp_to_bounds(x, obj);
            st.record_if_better(i, obj.evaluate(x));
            moved = true;
        }
        if (!moved) {
            if (obj.eval_count >= max_evals)
                return;
            auto& x = st.positions[i];
            for (std::size_t k = 0; k < d; ++k)
                x[k] += noise_term(k);
            detail::clamp_to_bounds(x, obj);
            st.record_if_better(i, obj.evaluate(x));
        }
    }
}

// ---------------------------------------------------------------------------
// Trial runner.

struct StopRule {
    std::size_t max_iters = 1000;
    std::optional<double> target_value;
    std::optional<std::size_t> max_evals;
};

struct TracePoint {
    std::size_t iteration;
    double best_value;
    double alpha_t; // randomness amplitude scheduled for this iteration
};

struct TrialRecord {
    std::size_t trial_index = 0;
    std::uint64_t seed = 0;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<double> best_point;
    std::size_t evaluations = 0;
    std::vector<TracePoint> trace;
};

namespace detail {

inline double amplitude_at(const OptimizerConfig& cfg, std::size_t t) {
    return std::visit(
        [t](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, PsoConfig>)
                return c.alpha;
            else if constexpr (std::is_same_v<T, ApsoConfig>)
                return decayed_amplitude(c.schedule, c.alpha0, t);
            else
                return decayed_amplitude(c.alpha_schedule, c.alpha0, t);
        },
        cfg);
}

} // namespace detail

/// Run one seeded trial to completion. Deterministic given (cfg, obj, seed).
inline TrialRecord run_optimizer(const OptimizerConfig& cfg, ObjectiveSpec obj,
                                 std::uint64_t seed, const StopRule& stop) {
    std::visit([](const auto& c) { c.validate(); }, cfg);
    obj.validate();
    const std::size_t population =
        std::visit([](const auto& c) { return c.population; }, cfg);
    if (stop.max_evals && *stop.max_evals < population)
        throw config_error("StopRule: max_evals must cover the initial population");

    const bool is_pso = std::holds_alternative<PsoConfig>(cfg);
    const bool apso_velocity = std::holds_alternative<ApsoConfig>(cfg) &&
                               std::get<ApsoConfig>(cfg).form == ApsoForm::velocity;
    SwarmState st = init_swarm(seed, population, obj, is_pso || apso_velocity, is_pso);

    TrialRecord rec;
    rec.seed = seed;
    rec.trace.push_back({0, st.global_best_value, detail::amplitude_at(cfg, 0)});

    const std::size_t eval_cap = stop.max_evals.value_or(detail::kNoEvalCap);
    while (st.iteration < stop.max_iters) {
        if (stop.target_value && st.global_best_value <= *stop.target_value)
            break;
        if (obj.eval_count >= eval_cap)
            break;
        std::visit(
            [&](const auto& c) {
                using T = std::decay_t<decltype(c)>;
                if constexpr (std::is_same_v<T, PsoConfig>)
                    pso_step(st, c, obj, eval_cap);
                else if constexpr (std::is_same_v<T, ApsoConfig>)
                    apso_step(st, c, obj, eval_cap);
                else
                    fa_step(st, c, obj, eval_cap);
            },
            cfg);
        rec.trace.push_back(
            {st.iteration, st.global_best_value, detail::amplitude_at(cfg, st.iteration)});
    }

    rec.best_value = st.global_best_value;
    rec.best_point = st.global_best;
    rec.evaluations = obj.eval_count;
    return rec;
}

} // namespace swarmopt

#pragma once

#include "swarmopt/stochastic.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace swarmopt {

enum class StepKind { gaussian, levy, uniform };

struct GaussianStepParams {
    double sigma = 1.0;
    std::vector<double> drift; // per-dimension mean displacement per step; empty = none
};

struct UniformStepParams {
    double half_width = 1.0; // each component uniform in [−half_width, half_width]
};

using StepParams = std::variant<GaussianStepParams, LevyParams, UniformStepParams>;

/// A d-dimensional random walk. positions[0] is the origin and
/// positions[k+1] − positions[k] equals steps[k] by construction, so
/// re-accumulating the stored steps reproduces the positions bitwise.
struct WalkPath {
    std::size_t dim = 1;
    double tau = 1.0; // time per jump
    StepKind kind = StepKind::gaussian;
    std::vector<std::vector<double>> steps;     // N × dim
    std::vector<std::vector<double>> positions; // (N+1) × dim
};

namespace detail {

/// Uniform direction on the unit sphere: normalized vector of iid Gaussians.
inline std::vector<double> unit_direction(RngStream& rng, std::size_t dim) {
    std::vector<double> v(dim);
    for (;;) {
        double norm2 = 0.0;
        for (auto& c : v) {
            c = rng.standard_normal();
            norm2 += c * c;
        }
        if (norm2 > 0.0) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (auto& c : v)
                c *= inv;
            return v;
        }
    }
}

} // namespace detail

inline WalkPath simulate_walk(RngStream& rng, std::size_t dim, std::size_t steps,
                              const StepParams& params, double tau = 1.0) {
    if (dim < 1)
        throw std::domain_error("simulate_walk: dim must be >= 1");
    if (!(tau > 0.0))
        throw std::domain_error("simulate_walk: tau must be > 0");

    WalkPath path;
    path.dim = dim;
    path.tau = tau;
    path.steps.reserve(steps);
    path.positions.reserve(steps + 1);
    path.positions.emplace_back(dim, 0.0);

    if (const auto* g = std::get_if<GaussianStepParams>(&params)) {
        if (!(g->sigma >= 0.0))
            throw std::domain_error("simulate_walk: sigma must be >= 0");
        if (!g->drift.empty() && g->drift.size() != dim)
            throw std::domain_error("simulate_walk: drift size must match dim");
        path.kind = StepKind::gaussian;
    } else if (const auto* l = std::get_if<LevyParams>(&params)) {
        l->validate();
        path.kind = StepKind::levy;
    } else {
        if (!(std::get<UniformStepParams>(params).half_width >= 0.0))
            throw std::domain_error("simulate_walk: half_width must be >= 0");
        path.kind = StepKind::uniform;
    }

    for (std::size_t k = 0; k < steps; ++k) {
        std::vector<double> step(dim);
        switch (path.kind) {
        case StepKind::gaussian: {
            const auto& g = std::get<GaussianStepParams>(params);
            for (std::size_t j = 0; j < dim; ++j) {
                const double mean = g.drift.empty() ? 0.0 : g.drift[j];
                step[j] = sample_gaussian(rng, mean, g.sigma);
            }
            break;
        }
        case StepKind::levy: {
            // magnitude from the stable law, direction uniform on the sphere
            const auto& l = std::get<LevyParams>(params);
            const double mag = std::abs(sample_levy_step(rng, l));
            auto dir = detail::unit_direction(rng, dim);
            for (std::size_t j = 0; j < dim; ++j)
                step[j] = mag * dir[j];
            break;
        }
        case StepKind::uniform: {
            const auto& u = std::get<UniformStepParams>(params);
            for (std::size_t j = 0; j < dim; ++j)
                step[j] = sample_uniform(rng, -u.half_width, u.half_width);
            break;
        }
        }
        std::vector<double> pos(dim);
        const auto& prev = path.positions.back();
        for (std::size_t j = 0; j < dim; ++j)
            pos[j] = prev[j] + step[j];
        path.steps.push_back(std::move(step));
        path.positions.push_back(std::move(pos));
    }
    return path;
}

/// Ensemble mean-squared displacement at chosen times plus a log-log
/// power-law fit msd ≈ coefficient · t^exponent.
struct DiffusionStats {
    std::vector<std::size_t> times;
    std::vector<double> msd;
    double fitted_exponent = std::numeric_limits<double>::quiet_NaN();
    double fitted_coefficient = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline void check_times(const std::vector<std::size_t>& times) {
    if (times.empty())
        throw std::domain_error("estimate_msd: no times requested");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw std::domain_error("estimate_msd: times must be strictly increasing");
}

inline void accumulate_sq_displacement(const WalkPath& p,
                                       const std::vector<std::size_t>& times,
                                       std::vector<double>& acc) {
    const auto& origin = p.positions.front();
    for (std::size_t j = 0; j < times.size(); ++j) {
        const auto& pos = p.positions[times[j]];
        double d2 = 0.0;
        for (std::size_t c = 0; c < p.dim; ++c) {
            const double d = pos[c] - origin[c];
            d2 += d * d;
        }
        acc[j] += d2;
    }
}

/// log-log least squares over entries with t > 0 and msd > 0
inline void fit_power_law(DiffusionStats& stats) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t j = 0; j < stats.times.size(); ++j) {
        if (stats.times[j] == 0 || !(stats.msd[j] > 0.0))
            continue;
        const double x = std::log(static_cast<double>(stats.times[j]));
        const double y = std::log(stats.msd[j]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) {
        const double dn = static_cast<double>(n);
        stats.fitted_exponent = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
        stats.fitted_coefficient = std::exp((sy - stats.fitted_exponent * sx) / dn);
    }
}

} // namespace detail

inline DiffusionStats estimate_msd(std::span<const WalkPath> paths,
                                   std::vector<std::size_t> times) {
    if (paths.empty())
        throw std::domain_error("estimate_msd: empty ensemble");
    detail::check_times(times);
    const std::size_t dim = paths.front().dim;
    const StepKind kind = paths.front().kind;
    for (const auto& p : paths) {
        if (p.dim != dim || p.kind != kind)
            throw std::domain_error("estimate_msd: paths must share dim and step kind");
        if (times.back() >= p.positions.size())
            throw std::domain_error("estimate_msd: time index beyond path length");
    }

    DiffusionStats stats;
    stats.times = std::move(times);
    stats.msd.resize(stats.times.size(), 0.0);
    for (const auto& p : paths)
        detail::accumulate_sq_displacement(p, stats.times, stats.msd);
    const double inv = 1.0 / static_cast<double>(paths.size());
    for (auto& m : stats.msd)
        m *= inv;
    detail::fit_power_law(stats);
    return stats;
}

/// Ensemble of independent walks from child streams of `master_seed`.
inline std::vector<WalkPath> walk_ensemble(std::uint64_t master_seed, std::size_t count,
                                           std::size_t dim, std::size_t steps,
                                           const StepParams& params, double tau = 1.0) {
    std::vector<WalkPath> paths;
    paths.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        RngStream rng = RngStream::child(master_seed, k);
        paths.push_back(simulate_walk(rng, dim, steps, params, tau));
    }
    return paths;
}

/// Streaming version of walk_ensemble + estimate_msd: accumulates squared
/// displacements one walk at a time (same summation order, so the result is
/// identical) without holding the whole ensemble in memory.
inline DiffusionStats ensemble_msd(std::uint64_t master_seed, std::size_t count,
                                   std::size_t dim, std::size_t steps,
                                   const StepParams& params, std::vector<std::size_t> times,
                                   double tau = 1.0) {
    if (count == 0)
        throw std::domain_error("ensemble_msd: empty ensemble");
    detail::check_times(times);
    if (times.back() > steps)
        throw std::domain_error("ensemble_msd: time index beyond path length");

    DiffusionStats stats;
    stats.times = std::move(times);
    stats.msd.resize(stats.times.size(), 0.0);
    for (std::size_t k = 0; k < count; ++k) {
        RngStream rng = RngStream::child(master_seed, k);
        const WalkPath p = simulate_walk(rng, dim, steps, params, tau);
        detail::accumulate_sq_displacement(p, stats.times, stats.msd);
    }
    const double inv = 1.0 / static_cast<double>(count);
    for (auto& m : stats.msd)
        m *= inv;
    detail::fit_power_law(stats);
    return stats;
}

/// Least-squares fit of msd(t) = a t² + b t; a recovers the squared drift
/// speed and b the diffusive term 2dD.
struct DriftDiffusionFit {
    double drift_speed_sq = 0.0;     // a
    double linear_coefficient = 0.0; // b
};

inline DriftDiffusionFit fit_drift_diffusion(const DiffusionStats& stats) {
    double s22 = 0, s21 = 0, s11 = 0, r2 = 0, r1 = 0;
    for (std::size_t j = 0; j < stats.times.size(); ++j) {
        const double t = static_cast<double>(stats.times[j]);
        if (t == 0.0)
            continue;
        const double t2 = t * t;
        s22 += t2 * t2;
        s21 += t2 * t;
        s11 += t * t;
        r2 += t2 * stats.msd[j];
        r1 += t * stats.msd[j];
    }
    const double det = s22 * s11 - s21 * s21;
    if (det == 0.0)
        throw std::domain_error("fit_drift_diffusion: singular normal equations");
    return {(r2 * s11 - r1 * s21) / det, (s22 * r1 - s21 * r2) / det};
}

/// Step-size heuristic s = √τ · (r_fraction · L) / √(t · d): limits the walk
/// to a region of r_fraction · L after t iterations in d dimensions.
inline double recommended_step_size(double scale_length, std::size_t dim,
                                    std::size_t iterations, double tau = 1.0,
                                    double r_fraction = 0.1) {
    if (!(scale_length > 0.0) || dim == 0 || iterations == 0 || !(tau > 0.0) ||
        !(r_fraction > 0.0))
        throw std::domain_error("recommended_step_size: all inputs must be positive");
    return std::sqrt(tau) * (r_fraction * scale_length) /
           std::sqrt(static_cast<double>(iterations) * static_cast<double>(dim));
}

} // namespace swarmopt

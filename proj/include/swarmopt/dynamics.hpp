#pragma once

#include "swarmopt/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace swarmopt {

// ---------------------------------------------------------------------------
// Single-particle PSO dynamics: Y_{t+1} = A Y_t with Y = (v, u), u = p − x and
// A = [[1, γ], [−1, 1−γ]]. det(A) = 1 identically, so the eigenvalue product
// is 1 for every γ.

struct PsoLinearSystem {
    double gamma = 2.0; // combined learning parameter α + β

    std::array<double, 2> step(const std::array<double, 2>& y) const {
        return {y[0] + gamma * y[1], -y[0] + (1.0 - gamma) * y[1]};
    }
};

/// Eigenvalues λ = 1 − γ/2 ± √(γ² − 4γ)/2; complex conjugates on the unit
/// circle for 0 < γ < 4, a double root −1 at γ = 4, real beyond.
inline std::pair<std::complex<double>, std::complex<double>> pso_eigenvalues(double gamma) {
    if (!(gamma > 0.0))
        throw std::domain_error("pso_eigenvalues: gamma must be > 0");
    const double re = 1.0 - gamma / 2.0;
    const double disc = gamma * gamma - 4.0 * gamma;
    if (disc < 0.0) {
        const double im = std::sqrt(-disc) / 2.0;
        return {{re, im}, {re, -im}};
    }
    const double rt = std::sqrt(disc) / 2.0;
    return {{re + rt, 0.0}, {re - rt, 0.0}};
}

enum class Regime { cyclic, boundary, divergent };

inline const char* to_string(Regime r) {
    switch (r) {
    case Regime::cyclic:
        return "cyclic";
    case Regime::boundary:
        return "boundary";
    case Regime::divergent:
        return "divergent";
    }
    return "?";
}

/// Eigenvalues, regime classification and (for 1-D maps) a Lyapunov estimate
/// with sampled long-run states.
struct RegimeReport {
    std::complex<double> lambda1, lambda2;
    Regime classification = Regime::cyclic;
    std::optional<double> lyapunov;
    std::vector<double> attractor_points;
};

/// Trajectory of the linear system from y0.
inline std::vector<std::array<double, 2>> pso_trajectory(double gamma,
                                                         std::array<double, 2> y0,
                                                         std::size_t steps) {
    if (!(gamma > 0.0))
        throw std::domain_error("pso_trajectory: gamma must be > 0");
    const PsoLinearSystem sys{gamma};
    std::vector<std::array<double, 2>> out;
    out.reserve(steps + 1);
    out.push_back(y0);
    for (std::size_t t = 0; t < steps; ++t)
        out.push_back(sys.step(out.back()));
    return out;
}

/// Classify by the discriminant γ(γ−4): negative → cyclic (|λ| = 1),
/// zero → boundary, positive → divergent (one real |λ| > 1). The attractor
/// sample holds ‖Y_t‖ every 50 steps from Y₀ = (0,1), capped once the norm
/// passes 1e12.
inline RegimeReport classify_pso_regime(double gamma) {
    auto [l1, l2] = pso_eigenvalues(gamma);
    RegimeReport rep;
    rep.lambda1 = l1;
    rep.lambda2 = l2;
    const double disc = gamma * gamma - 4.0 * gamma;
    rep.classification = disc < 0.0   ? Regime::cyclic
                         : disc == 0.0 ? Regime::boundary
                                       : Regime::divergent;
    const PsoLinearSystem sys{gamma};
    std::array<double, 2> y{0.0, 1.0};
    for (std::size_t t = 1; t <= 1000; ++t) {
        y = sys.step(y);
        const double norm = std::hypot(y[0], y[1]);
        if (t % 50 == 0)
            rep.attractor_points.push_back(norm);
        if (norm > 1e12)
            break;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// One-dimensional maps: the firefly reduced map (exact and cubic forms) and
// the logistic map.

enum class FaMapForm { exact, cubic };

/// u_{t+1} = u (1 − β₀ e^(−u²))  (exact)  or  u (1 − β₀ (1 − u²))  (cubic).
/// u = 0 is a fixed point of both; the derivative there is 1 − β₀.
inline double fa_map_step(double u, double beta0, FaMapForm form) {
    if (!std::isfinite(u))
        throw std::domain_error("fa_map_step: u must be finite");
    if (!(beta0 >= 0.0))
        throw std::domain_error("fa_map_step: beta0 must be >= 0");
    if (form == FaMapForm::exact)
        return u * (1.0 - beta0 * std::exp(-u * u));
    return u * (1.0 - beta0 * (1.0 - u * u));
}

/// The dimensional form y_{t+1} = y (1 − β₀ e^(−γ y²)); substituting
/// u = √γ · y removes the γ-dependence.
inline double fa_map_step_scaled(double y, double beta0, double gamma) {
    if (!(gamma > 0.0))
        throw std::domain_error("fa_map_step_scaled: gamma must be > 0");
    return y * (1.0 - beta0 * std::exp(-gamma * y * y));
}

enum class MapKind { fa_exact, fa_cubic, logistic };

/// Raw iterate of the selected map. The logistic case is evaluated without
/// domain guards here so that escaping orbits surface as divergence markers.
inline double map_step(MapKind map, double u, double param) {
    switch (map) {
    case MapKind::fa_exact:
        return u * (1.0 - param * std::exp(-u * u));
    case MapKind::fa_cubic:
        return u * (1.0 - param * (1.0 - u * u));
    case MapKind::logistic:
        return param * u * (1.0 - u);
    }
    return u;
}

inline double map_derivative(MapKind map, double u, double param) {
    switch (map) {
    case MapKind::fa_exact: {
        const double e = std::exp(-u * u);
        return 1.0 - param * e * (1.0 - 2.0 * u * u);
    }
    case MapKind::fa_cubic:
        return (1.0 - param) + 3.0 * param * u * u;
    case MapKind::logistic:
        return param * (1.0 - 2.0 * u);
    }
    return 1.0;
}

/// Orbits past this magnitude count as divergent (the cubic form can escape).
inline constexpr double kOrbitDivergenceLimit = 1e12;

struct ScanPoint {
    double param = 0.0;
    std::vector<double> states; // recorded post-burn-in iterates
    bool diverged = false;
};

/// Long-run states on an inclusive parameter grid, for bifurcation diagrams.
/// Non-finite or escaping orbits get a divergence marker instead of states.
inline std::vector<ScanPoint> bifurcation_scan(MapKind map, double from, double to,
                                               std::size_t param_steps, double u0,
                                               std::size_t burn_in, std::size_t record_n) {
    if (param_steps < 2)
        throw std::domain_error("bifurcation_scan: need at least 2 parameter values");
    if (burn_in < 1 || record_n < 1)
        throw std::domain_error("bifurcation_scan: burn_in and record_n must be >= 1");
    if (!std::isfinite(u0))
        throw std::domain_error("bifurcation_scan: u0 must be finite");

    std::vector<ScanPoint> out;
    out.reserve(param_steps);
    const double dp = (to - from) / static_cast<double>(param_steps - 1);
    for (std::size_t g = 0; g < param_steps; ++g) {
        ScanPoint pt;
        pt.param = from + dp * static_cast<double>(g);
        double u = u0;
        for (std::size_t t = 0; t < burn_in && !pt.diverged; ++t) {
            u = map_step(map, u, pt.param);
            if (!std::isfinite(u) || std::abs(u) > kOrbitDivergenceLimit)
                pt.diverged = true;
        }
        if (!pt.diverged) {
            pt.states.reserve(record_n);
            for (std::size_t t = 0; t < record_n; ++t) {
                u = map_step(map, u, pt.param);
                if (!std::isfinite(u) || std::abs(u) > kOrbitDivergenceLimit) {
                    pt.diverged = true;
                    pt.states.clear();
                    break;
                }
                pt.states.push_back(u);
            }
        }
        out.push_back(std::move(pt));
    }
    return out;
}

/// Average log-stretch (1/N) Σ ln|f′(u_t)| after burn-in; positive indicates
/// chaos. Terms with f′ = 0 are skipped; if every term is skipped the result
/// is −infinity (superstable orbit). Diverging orbits yield NaN.
inline double lyapunov_estimate(MapKind map, double param, double u0, std::size_t iterations,
                                std::size_t burn_in = 1000) {
    if (iterations < 1000)
        throw std::domain_error("lyapunov_estimate: need at least 1000 iterations");
    double u = u0;
    for (std::size_t t = 0; t < burn_in; ++t) {
        u = map_step(map, u, param);
        if (!std::isfinite(u) || std::abs(u) > kOrbitDivergenceLimit)
            return std::numeric_limits<double>::quiet_NaN();
    }
    double sum = 0.0;
    std::size_t counted = 0;
    for (std::size_t t = 0; t < iterations; ++t) {
        const double deriv = map_derivative(map, u, param);
        if (deriv != 0.0) {
            sum += std::log(std::abs(deriv));
            ++counted;
        }
        u = map_step(map, u, param);
        if (!std::isfinite(u) || std::abs(u) > kOrbitDivergenceLimit)
            return std::numeric_limits<double>::quiet_NaN();
    }
    if (counted == 0)
        return -std::numeric_limits<double>::infinity();
    return sum / static_cast<double>(counted);
}

/// Number of distinct values under an absolute tolerance (attractor
/// resolution for periodic-orbit counting).
inline std::size_t count_distinct(std::span<const double> values, double tol = 1e-6) {
    if (values.empty())
        return 0;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t distinct = 1;
    double anchor = sorted.front();
    for (double v : sorted) {
        if (v - anchor > tol) {
            ++distinct;
            anchor = v;
        }
    }
    return distinct;
}

} // namespace swarmopt

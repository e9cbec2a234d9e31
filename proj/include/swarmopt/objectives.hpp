#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swarmopt {

/// Bounded objective with an evaluation counter. Minimization is the
/// canonical direction throughout; firefly brightness is −f(x).
/// Counters are per-instance, so copies give independent per-trial counts.
struct ObjectiveSpec {
    std::string name;
    std::size_t dim = 1;
    std::vector<double> lower, upper;
    std::function<double(std::span<const double>)> evaluator;
    std::optional<std::pair<std::vector<double>, double>> known_optimum;
    std::size_t eval_count = 0;

    double evaluate(std::span<const double> x) {
        if (x.size() != dim)
            throw std::domain_error("ObjectiveSpec::evaluate: dimension mismatch");
        ++eval_count;
        return evaluator(x);
    }

    void validate() const {
        if (dim < 1)
            throw std::domain_error("ObjectiveSpec: dim must be >= 1");
        if (lower.size() != dim || upper.size() != dim)
            throw std::domain_error("ObjectiveSpec: bounds size mismatch");
        for (std::size_t i = 0; i < dim; ++i)
            if (!(lower[i] < upper[i]))
                throw std::domain_error("ObjectiveSpec: lower must be < upper per dimension");
        if (!evaluator)
            throw std::domain_error("ObjectiveSpec: missing evaluator");
    }
};

namespace detail {

inline double sphere_fn(std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
        s += v * v;
    return s;
}

inline double rosenbrock_fn(std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = 1.0 - x[i];
        s += 100.0 * a * a + b * b;
    }
    return s;
}

inline double ackley_fn(std::span<const double> x) {
    const double d = static_cast<double>(x.size());
    double sq = 0.0, cs = 0.0;
    for (double v : x) {
        sq += v * v;
        cs += std::cos(2.0 * std::numbers::pi * v);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(sq / d)) - std::exp(cs / d) + 20.0 +
           std::numbers::e;
}

inline double rastrigin_fn(std::span<const double> x) {
    double s = 10.0 * static_cast<double>(x.size());
    for (double v : x)
        s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    return s;
}

} // namespace detail

/// Benchmark objective by name with its conventional domain, or explicit
/// bounds when given. known_optimum is always populated.
inline ObjectiveSpec builtin(const std::string& name, std::size_t dim,
                             std::optional<double> lower = std::nullopt,
                             std::optional<double> upper = std::nullopt) {
    if (dim < 1)
        throw std::domain_error("builtin: dim must be >= 1");

    ObjectiveSpec spec;
    spec.name = name;
    spec.dim = dim;
    double lo, hi;
    std::vector<double> opt_point(dim, 0.0);
    if (name == "sphere") {
        lo = -5.12, hi = 5.12;
        spec.evaluator = detail::sphere_fn;
    } else if (name == "rosenbrock") {
        lo = -5.0, hi = 10.0;
        spec.evaluator = detail::rosenbrock_fn;
        opt_point.assign(dim, 1.0);
    } else if (name == "ackley") {
        lo = -32.768, hi = 32.768;
        spec.evaluator = detail::ackley_fn;
    } else if (name == "rastrigin") {
        lo = -5.12, hi = 5.12;
        spec.evaluator = detail::rastrigin_fn;
    } else {
        throw std::domain_error("builtin: unknown objective '" + name + "'");
    }
    if (lower)
        lo = *lower;
    if (upper)
        hi = *upper;
    spec.lower.assign(dim, lo);
    spec.upper.assign(dim, hi);
    spec.known_optimum = {std::move(opt_point), 0.0};
    spec.validate();
    return spec;
}

} // namespace swarmopt

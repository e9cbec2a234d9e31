#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace swarmopt {

/// 64-bit avalanche mix (splitmix64 finalizer). Used for child-seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seeded deterministic random source. Two streams built from the same seed
/// produce identical sample sequences; child streams derived from a master
/// seed are reproducible and pairwise distinct.
///
/// Backing generator: std::mt19937_64 (output sequence fixed by the C++
/// standard, so results are portable across platforms).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    /// Child stream for trial `index`: seed = splitmix64(master ^ GOLDEN*(index+1)).
    static RngStream child(std::uint64_t master_seed, std::uint64_t index) {
        return RngStream(splitmix64(master_seed ^ (0x9E3779B97F4A7C15ull * (index + 1))));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via the Marsaglia polar method (pairs are cached).
    double standard_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double x, y, s;
        do {
            x = 2.0 * uniform01() - 1.0;
            y = 2.0 * uniform01() - 1.0;
            s = x * x + y * y;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = y * f;
        has_spare_ = true;
        return x * f;
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct CauchyParams {
    double location = 0.0; // μ
    double scale = 1.0;    // γ > 0

    void validate() const {
        if (!(scale > 0.0))
            throw std::domain_error("CauchyParams: scale must be > 0");
    }
};

/// Stable-step parameters for Mantegna sampling. beta is the stability
/// index in (0,2); beta = 2 belongs to the Gaussian sampler instead.
struct LevyParams {
    double beta = 1.5;
    double scale = 1.0;
    double min_step = 0.0; // smallest admissible |step|; enforced by resampling

    void validate() const {
        if (!(beta > 0.0 && beta < 2.0))
            throw std::domain_error("LevyParams: beta must lie strictly in (0,2)");
        if (!(scale > 0.0))
            throw std::domain_error("LevyParams: scale must be > 0");
        if (!(min_step >= 0.0))
            throw std::domain_error("LevyParams: min_step must be >= 0");
    }
};

inline double sample_uniform(RngStream& rng, double lo, double hi) {
    if (!(lo <= hi))
        throw std::domain_error("sample_uniform: lo > hi");
    return lo + (hi - lo) * rng.uniform01();
}

inline double sample_gaussian(RngStream& rng, double mean, double sigma) {
    if (!(sigma >= 0.0))
        throw std::domain_error("sample_gaussian: sigma must be >= 0");
    if (sigma == 0.0)
        return mean;
    return mean + sigma * rng.standard_normal();
}

inline double cauchy_density(double x, const CauchyParams& p) {
    p.validate();
    const double d = x - p.location;
    return (1.0 / std::numbers::pi) * p.scale / (p.scale * p.scale + d * d);
}

/// Inverse-CDF draw: μ + γ tan(π(u − 1/2)).
inline double sample_cauchy(RngStream& rng, const CauchyParams& p) {
    p.validate();
    return p.location + p.scale * std::tan(std::numbers::pi * (rng.uniform01() - 0.5));
}

/// σ_u for Mantegna's algorithm; σ_v is fixed at 1.
///
///   σ_u = { Γ(1+β) sin(πβ/2) / ( Γ((1+β)/2) β 2^((β−1)/2) ) }^(1/β)
///
/// β = 2 degenerates (sin(π) = 0) and is rejected; use the Gaussian sampler.
inline double mantegna_sigma_u(double beta) {
    if (!(beta > 0.0 && beta < 2.0))
        throw std::domain_error("mantegna_sigma_u: beta must lie strictly in (0,2)");
    const double num = std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0);
    const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / beta);
}

/// Mantegna transform of one Gaussian pair: s = scale · u / |v|^(1/β).
inline double mantegna_step(double u, double v, double beta, double scale = 1.0) {
    return scale * u / std::pow(std::abs(v), 1.0 / beta);
}

/// Signed heavy-tailed step via Mantegna's algorithm; |s| < min_step is
/// resampled (not clamped) so the tail law |s|^(−1−β) stays intact.
inline double sample_levy_step(RngStream& rng, const LevyParams& p) {
    p.validate();
    const double sigma_u = mantegna_sigma_u(p.beta);
    for (;;) {
        const double u = sample_gaussian(rng, 0.0, sigma_u);
        const double v = rng.standard_normal();
        if (v == 0.0)
            continue;
        const double s = mantegna_step(u, v, p.beta, p.scale);
        if (!std::isfinite(s))
            continue;
        if (std::abs(s) >= p.min_step)
            return s;
    }
}

/// One logistic-map iterate λ u (1 − u); result stays in [0,1] for the
/// admissible domain.
inline double logistic_step(double u, double lambda) {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("logistic_step: u outside [0,1]");
    if (!(lambda >= 0.0 && lambda <= 4.0))
        throw std::domain_error("logistic_step: lambda outside [0,4]");
    return std::min(lambda * u * (1.0 - u), 1.0);
}

/// Histogram with logarithmically spaced bin edges over [lo, hi].
struct LogHistogram {
    std::vector<double> edges;       // bins + 1 edges, geometric spacing
    std::vector<std::size_t> counts; // per-bin counts

    double center(std::size_t bin) const { return std::sqrt(edges[bin] * edges[bin + 1]); }
    double width(std::size_t bin) const { return edges[bin + 1] - edges[bin]; }
};

inline LogHistogram log_histogram(std::span<const double> magnitudes, double lo, double hi,
                                  std::size_t bins) {
    if (!(lo > 0.0 && hi > lo) || bins == 0)
        throw std::domain_error("log_histogram: need 0 < lo < hi and bins >= 1");
    LogHistogram h;
    h.edges.resize(bins + 1);
    const double step = std::log(hi / lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i)
        h.edges[i] = lo * std::exp(step * static_cast<double>(i));
    h.edges.back() = hi; // exact upper edge
    h.counts.assign(bins, 0);
    for (double m : magnitudes) {
        if (m < lo || m > hi)
            continue;
        auto it = std::upper_bound(h.edges.begin(), h.edges.end(), m);
        std::size_t idx = static_cast<std::size_t>(it - h.edges.begin());
        idx = idx == 0 ? 0 : idx - 1;
        if (idx >= bins)
            idx = bins - 1;
        ++h.counts[idx];
    }
    return h;
}

namespace detail {

inline double quantile_of_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty())
        throw std::domain_error("quantile: empty sample");
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= sorted.size())
        return sorted.back();
    const double frac = pos - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

} // namespace detail

/// OLS slope of log-density vs log-magnitude over the upper tail of |samples|,
/// fitted across logarithmic bins spanning [10 · median, 99.9th percentile].
/// For a stable law of index β the expected value is −(1+β).
inline double tail_exponent(std::span<const double> samples, std::size_t bins = 40) {
    if (samples.size() < 1000)
        throw std::domain_error("tail_exponent: need at least 1000 samples");
    std::vector<double> mags(samples.size());
    std::transform(samples.begin(), samples.end(), mags.begin(),
                   [](double s) { return std::abs(s); });
    std::sort(mags.begin(), mags.end());
    const double median = detail::quantile_of_sorted(mags, 0.5);
    const double lo = 10.0 * median;
    const double hi = detail::quantile_of_sorted(mags, 0.999);
    if (!(lo > 0.0 && hi > lo))
        throw std::domain_error("tail_exponent: degenerate tail range");
    const LogHistogram h = log_histogram(mags, lo, hi, bins);

    // ln(count / bin width) against ln(bin center), bins with >= 5 entries
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
        if (h.counts[b] < 5)
            continue;
        const double x = std::log(h.center(b));
        const double y = std::log(static_cast<double>(h.counts[b]) / h.width(b));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2)
        throw std::domain_error("tail_exponent: too few populated tail bins");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

} // namespace swarmopt

#pragma once

// Statistical checks of sampler output: one-sample Kolmogorov-Smirnov test,
// moment z-scores, and the acceptance-efficiency sweep.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "gegamma/samplers.hpp"

namespace gegamma {

/// The eleven shapes 0.01, 0.1, 0.2, ..., 0.9, 0.99.
inline constexpr double reference_alpha_grid[] = {0.01, 0.1, 0.2, 0.3, 0.4, 0.5,
                                              0.6,  0.7, 0.8, 0.9, 0.99};

struct KsResult
{
    double statistic = 0.0;
    std::size_t n = 0;
    double p_value = 1.0;
};

/// Survival function of the limiting Kolmogorov distribution,
/// Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2).
inline double kolmogorov_survival(double t)
{
    if (!(t > 0.0)) {
        return 1.0;
    }
    if (t < 1.18) {
        // Theta-function form converges fast for small t.
        const double w = std::numbers::pi * std::numbers::pi / (8.0 * t * t);
        double sum = 0.0;
        for (int k = 1; k <= 20; ++k) {
            const double m = 2.0 * k - 1.0;
            sum += std::exp(-m * m * w);
        }
        const double cdf = std::sqrt(2.0 * std::numbers::pi) / t * sum;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        sum += sign * term;
        if (term < 1e-300) {
            break;
        }
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// One-sample KS test of sorted finite samples against a continuous CDF.
/// Requires at least 100 samples; the p-value is asymptotic.
template<class Cdf>
KsResult ks_test(std::span<const double> sorted, Cdf&& cdf)
{
    const std::size_t n = sorted.size();
    if (n < 100) {
        throw std::invalid_argument("ks_test: need at least 100 samples");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(sorted[i])) {
            throw std::invalid_argument("ks_test: non-finite sample");
        }
        if (i > 0 && sorted[i] < sorted[i - 1]) {
            throw std::invalid_argument("ks_test: samples are not sorted");
        }
    }
    const double dn = static_cast<double>(n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sorted[i]);
        const double above = static_cast<double>(i + 1) / dn - f;
        const double below = f - static_cast<double>(i) / dn;
        d = std::max({d, above, below});
    }
    const double root_n = std::sqrt(dn);
    return {d, n, kolmogorov_survival((root_n + 0.12 + 0.11 / root_n) * d)};
}

/// KS result on strictly positive samples, with exact zeros set aside.
struct PositiveKsResult
{
    KsResult ks;
    std::size_t zeros = 0;
    double zero_fraction = 0.0;
};

/// KS test on the positive part of a sample.
///
/// For very small shapes U^{1/alpha} underflows and a sampler returns exact
/// zeros. Those correspond to the event X < denorm_min; they are removed and the
/// remainder is compared with the CDF conditioned on X > denorm_min.
template<class Cdf>
PositiveKsResult ks_test_positive(std::vector<double> samples, Cdf&& cdf)
{
    std::sort(samples.begin(), samples.end());
    const auto first_positive = std::upper_bound(samples.begin(), samples.end(), 0.0);
    const auto zeros = static_cast<std::size_t>(first_positive - samples.begin());
    const double f0 = cdf(std::numeric_limits<double>::denorm_min());
    const double norm = 1.0 - f0;
    const std::span<const double> positive(samples.data() + zeros, samples.size() - zeros);
    PositiveKsResult result;
    result.ks = ks_test(positive, [&](double x) { return (cdf(x) - f0) / norm; });
    result.zeros = zeros;
    result.zero_fraction = samples.empty()
                               ? 0.0
                               : static_cast<double>(zeros) / static_cast<double>(samples.size());
    return result;
}

struct MomentCheck
{
    double mean = 0.0;
    double variance = 0.0;
    double expected_mean = 0.0;
    double expected_variance = 0.0;
    double mean_z = 0.0;
    double variance_z = 0.0;
    bool passed = false;
};

/// Compares sample mean and variance with alpha*lambda and alpha*lambda^2.
///
/// Standard errors: lambda sqrt(alpha / n) for the mean and
/// lambda^2 sqrt((2 alpha^2 + 6 alpha) / n) for the variance (from the gamma
/// fourth central moment 3 alpha^2 lambda^4 + 6 alpha lambda^4).
inline MomentCheck moment_check(std::span<const double> samples, double alpha, double lambda,
                                double z_limit = 4.0)
{
    const std::size_t n = samples.size();
    if (n < 10000) {
        throw std::invalid_argument("moment_check: need at least 1e4 samples");
    }
    const double dn = static_cast<double>(n);
    double mean = 0.0;
    for (double x : samples) {
        mean += x;
    }
    mean /= dn;
    double ss = 0.0;
    for (double x : samples) {
        ss += (x - mean) * (x - mean);
    }
    MomentCheck r;
    r.mean = mean;
    r.variance = ss / (dn - 1.0);
    r.expected_mean = alpha * lambda;
    r.expected_variance = alpha * lambda * lambda;
    r.mean_z = (r.mean - r.expected_mean) / (lambda * std::sqrt(alpha / dn));
    r.variance_z = (r.variance - r.expected_variance) /
                   (lambda * lambda * std::sqrt((2.0 * alpha * alpha + 6.0 * alpha) / dn));
    r.passed = std::fabs(r.mean_z) <= z_limit && std::fabs(r.variance_z) <= z_limit;
    return r;
}

struct EfficiencyReport
{
    double alpha = 0.0;
    Method algorithm = Method::alg1;
    std::uint64_t n_outputs = 0;
    double pairs_per_output = 0.0; //!< measured uniform pairs per output
    double theoretical = 0.0;
    double relative_error = 0.0;
};

/// Runs one (method, alpha) cell: n outputs from a counting source.
inline EfficiencyReport measure_efficiency(Method m, double alpha, std::uint64_t n,
                                           std::uint64_t seed)
{
    const PreparedMethod sampler(m, ShapeParams(alpha));
    DefaultSource source(seed);
    double sink = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        sink += sampler(source);
    }
    EfficiencyReport r;
    r.alpha = alpha;
    r.algorithm = m;
    r.n_outputs = n;
    r.pairs_per_output = static_cast<double>(source.draw_count()) / 2.0 / static_cast<double>(n);
    r.theoretical = theoretical_density(m, alpha);
    r.relative_error = std::fabs(r.pairs_per_output - r.theoretical) / r.theoretical;
    // Keeps the sampling loop observable.
    if (std::isnan(sink)) {
        throw std::runtime_error("measure_efficiency: sampler produced NaN");
    }
    return r;
}

/// Measured vs. theoretical uniform pairs per output over a list of shapes.
/// Cell seeds derive from `seed`, the method and the shape index, so results
/// do not depend on `parallel`.
inline std::vector<EfficiencyReport> efficiency_sweep(Method m, std::span<const double> alphas,
                                                      std::uint64_t n, std::uint64_t seed,
                                                      bool parallel = false)
{
    const auto cell_seed = [&](std::size_t i) {
        return derive_seed(seed, static_cast<std::uint64_t>(m), i);
    };
    std::vector<EfficiencyReport> reports;
    reports.reserve(alphas.size());
    if (!parallel) {
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            reports.push_back(measure_efficiency(m, alphas[i], n, cell_seed(i)));
        }
        return reports;
    }
    std::vector<std::future<EfficiencyReport>> pending;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        pending.push_back(std::async(std::launch::async, measure_efficiency, m, alphas[i], n,
                                     cell_seed(i)));
    }
    for (auto& f : pending) {
        reports.push_back(f.get());
    }
    return reports;
}

/// CSV with header algorithm,alpha,n,measured,theoretical,rel_error where
/// measured and theoretical are uniform pairs per output.
inline void write_efficiency_csv(std::ostream& os, std::span<const EfficiencyReport> reports)
{
    os << "algorithm,alpha,n,measured,theoretical,rel_error\n";
    const auto old_precision = os.precision(12);
    for (const auto& r : reports) {
        os << method_name(r.algorithm) << ',' << r.alpha << ',' << r.n_outputs << ','
           << r.pairs_per_output << ',' << r.theoretical << ',' << r.relative_error << '\n';
    }
    os.precision(old_precision);
}

} // namespace gegamma

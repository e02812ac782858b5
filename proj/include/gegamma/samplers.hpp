#pragma once

// Acceptance-rejection gamma generators for shape 0 < alpha < 1 built on the
// generalized exponential (GE) envelope.
//
//   alg1  GE proposal by inversion, exact test U2^{1/beta} x <= U1^{1/alpha}.
//   alg2  alg1 plus the rational squeeze on R1; decisions are unchanged.
//   alg3  piecewise envelope: GE truncated to [0, s] on the left, exponential
//         tail e^{-(x - s)} on the right, both with squeezes.
//
// Every loop pass draws exactly two uniforms. The expected number of passes
// per output is 1 / Gamma(alpha + 1) for alg1/alg2 and total_density(alpha, s)
// for alg3.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gegamma/special_functions.hpp"
#include "gegamma/squeeze.hpp"
#include "gegamma/uniform_source.hpp"

namespace gegamma {

//---------------------------------------------------------------------------//
// Draw accounting
//---------------------------------------------------------------------------//

/// Per-sampler counters. uniforms_drawn == 2 * iterations always holds.
struct SampleStats
{
    std::uint64_t uniforms_drawn = 0;
    std::uint64_t iterations = 0;
    std::uint64_t squeeze_accepts = 0;
    std::uint64_t squeeze_rejects = 0;
    std::uint64_t exact_evaluations = 0;
    std::uint64_t outputs = 0;
    // alg3 only: passes that took the GE (left) branch.
    std::uint64_t left_branch = 0;

    void on_iteration() noexcept
    {
        ++iterations;
        uniforms_drawn += 2;
    }
    void on_squeeze_accept() noexcept { ++squeeze_accepts; }
    void on_squeeze_reject() noexcept { ++squeeze_rejects; }
    void on_exact() noexcept { ++exact_evaluations; }
    void on_output() noexcept { ++outputs; }
    void on_left_branch() noexcept { ++left_branch; }

    /// Uniform pairs consumed per output.
    double pairs_per_output() const noexcept
    {
        return outputs == 0 ? 0.0
                            : static_cast<double>(iterations) / static_cast<double>(outputs);
    }
};

/// Counter sink that compiles away.
struct NullStats
{
    void on_iteration() noexcept {}
    void on_squeeze_accept() noexcept {}
    void on_squeeze_reject() noexcept {}
    void on_exact() noexcept {}
    void on_output() noexcept {}
    void on_left_branch() noexcept {}
};

//---------------------------------------------------------------------------//
// Building blocks
//---------------------------------------------------------------------------//

/// Largest value -log1p(-b) can take for b < 1 in double precision (53 ln 2).
inline constexpr double max_ge_sample = 36.7368005696771;

/// GE(alpha, 1) variate by inversion of its CDF: -log(1 - u^{1/alpha}).
///
/// u^{1/alpha} underflowing to zero yields 0, the valid limit.
inline double sample_ge(double alpha, double u)
{
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("sample_ge: uniform must lie in (0, 1)");
    }
    const double b = std::exp(std::log(u) / alpha);
    if (b >= 1.0) {
        return max_ge_sample;
    }
    return -std::log1p(-b);
}

constexpr double scale(double x, double lambda) noexcept
{
    return lambda * x;
}

/// Per-shape values reused by every pass of alg1/alg2.
struct RejectionCoefficients
{
    double alpha;
    double beta;
    double inv_alpha;
    double inv_beta;
    double lambda;

    explicit RejectionCoefficients(const ShapeParams& p)
        : alpha(p.alpha())
        , beta(p.beta())
        , inv_alpha(1.0 / p.alpha())
        , inv_beta(1.0 / p.beta())
        , lambda(p.lambda())
    {
    }
};

namespace detail {

inline double pow_via_log(double u, double exponent)
{
    return std::exp(std::log(u) * exponent);
}

template<UniformSource Source, class Stats>
double base_kernel(const RejectionCoefficients& k, Source& rng, Stats& stats)
{
    for (;;) {
        const double u1 = rng.next();
        const double u2 = rng.next();
        stats.on_iteration();
        const double b = pow_via_log(u1, k.inv_alpha);
        const double x = -std::log1p(-b);
        stats.on_exact();
        if (pow_via_log(u2, k.inv_beta) * x <= b) {
            stats.on_output();
            return scale(x, k.lambda);
        }
    }
}

template<UniformSource Source, class Stats>
double squeeze_kernel(const RejectionCoefficients& k, Source& rng, Stats& stats)
{
    for (;;) {
        const double u1 = rng.next();
        const double u2 = rng.next();
        stats.on_iteration();
        const double b = pow_via_log(u1, k.inv_alpha);
        const double x = -std::log1p(-b);
        if (r1_accepts(u2, x, k.beta)) {
            stats.on_squeeze_accept();
            stats.on_output();
            return scale(x, k.lambda);
        }
        if (!r1_admits(u2, x, k.beta)) {
            stats.on_squeeze_reject();
            continue;
        }
        stats.on_exact();
        if (pow_via_log(u2, k.inv_beta) * x <= b) {
            stats.on_output();
            return scale(x, k.lambda);
        }
    }
}

} // namespace detail

/// Base GE-rejection generator.
template<UniformSource Source, class Stats = NullStats>
double alg1_sample(const ShapeParams& p, Source& rng, Stats&& stats = Stats{})
{
    const RejectionCoefficients k(p);
    return detail::base_kernel(k, rng, stats);
}

/// GE-rejection generator with the R1 squeeze. Given the same uniform stream
/// it returns the same values as alg1_sample.
template<UniformSource Source, class Stats = NullStats>
double alg2_sample(const ShapeParams& p, Source& rng, Stats&& stats = Stats{})
{
    const RejectionCoefficients k(p);
    return detail::squeeze_kernel(k, rng, stats);
}

//---------------------------------------------------------------------------//
// Switch point of the piecewise envelope
//---------------------------------------------------------------------------//

/// Empirical near-optimal switch point, 1.28 + 0.23 alpha.
constexpr double approx_switch_point(double alpha) noexcept
{
    return 1.28 + 0.23 * alpha;
}

/// Expected passes per output of the piecewise method:
/// ((1 - e^{-s})^alpha + alpha s^{alpha-1} e^{-s}) / Gamma(alpha + 1).
inline double total_density(double alpha, double s)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("total_density: shape must lie in (0, 1)");
    }
    if (!(s > 0.0)) {
        throw std::invalid_argument("total_density: switch point must be > 0");
    }
    const double left = std::pow(-std::expm1(-s), alpha);
    const double right = alpha * std::pow(s, alpha - 1.0) * std::exp(-s);
    return (left + right) * std::exp(-ln_gamma(alpha + 1.0));
}

/// Switch point minimizing total_density(alpha, s).
///
/// Bisects the stationarity condition
///   (1 - e^{-s})^{alpha-1} + (alpha - 1) s^{alpha-2} - s^{alpha-1} = 0
/// on [0.5, 3] to a bracket width of 1e-10.
inline double optimal_switch_point(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("optimal_switch_point: shape must lie in (0, 1)");
    }
    const auto stationarity = [alpha](double s) {
        return std::pow(-std::expm1(-s), alpha - 1.0) +
               (alpha - 1.0) * std::pow(s, alpha - 2.0) - std::pow(s, alpha - 1.0);
    };
    double lo = 0.5;
    double hi = 3.0;
    double f_lo = stationarity(lo);
    if (f_lo * stationarity(hi) > 0.0) {
        throw std::runtime_error("optimal_switch_point: no sign change on [0.5, 3]");
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = stationarity(mid);
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

enum class SwitchMode
{
    approx, //!< s = 1.28 + 0.23 alpha
    unit,   //!< s = 1, with the simplified inner loop
};

/// Precomputed constants of the piecewise method. S_L and S_R are stored
/// without the 1/Gamma(alpha + 1) normalization.
class Alg3Constants
{
  public:
    /// Constants for an arbitrary switch point s > 0.
    static Alg3Constants at_switch_point(const ShapeParams& p, double s)
    {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("switch point must be positive and finite");
        }
        return Alg3Constants(p, s, false);
    }

    double s() const noexcept { return s_; }
    double t() const noexcept { return t_; }
    double s_left() const noexcept { return s_left_; }
    double s_right() const noexcept { return s_right_; }
    double total() const noexcept { return total_; }
    double p1() const noexcept { return p1_; }
    double d2() const noexcept { return d2_; }
    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double inv_alpha() const noexcept { return inv_alpha_; }
    double inv_beta() const noexcept { return inv_beta_; }
    double lambda() const noexcept { return lambda_; }
    bool unit_switch() const noexcept { return unit_; }

  private:
    friend Alg3Constants alg3_init(const ShapeParams& p, SwitchMode mode);

    Alg3Constants(const ShapeParams& p, double s, bool unit)
        : s_(s)
        , t_(std::exp(-s))
        , s_left_(std::pow(1.0 - t_, p.alpha()))
        , s_right_(p.alpha() * t_ * std::pow(s, p.alpha() - 1.0))
        , total_(s_left_ + s_right_)
        , p1_(s_left_ / total_)
        , d2_(total_ / s_right_)
        , alpha_(p.alpha())
        , beta_(p.beta())
        , inv_alpha_(1.0 / p.alpha())
        , inv_beta_(1.0 / p.beta())
        , lambda_(p.lambda())
        , unit_(unit)
    {
    }

    double s_;
    double t_;
    double s_left_;
    double s_right_;
    double total_;
    double p1_;
    double d2_;
    double alpha_;
    double beta_;
    double inv_alpha_;
    double inv_beta_;
    double lambda_;
    bool unit_;
};

inline Alg3Constants alg3_init(const ShapeParams& p, SwitchMode mode)
{
    if (mode == SwitchMode::unit) {
        return Alg3Constants(p, 1.0, true);
    }
    return Alg3Constants(p, approx_switch_point(p.alpha()), false);
}

/// Candidate of one piecewise pass, before the accept/reject decision.
struct PiecewiseCandidate
{
    bool left;  //!< GE part on [0, s]
    double x;   //!< unscaled candidate; NaN when the tail uniform rounded to 0
    double b;   //!< left branch: (S U1)^{1/alpha}; tail: x / s
};

namespace detail {

template<bool UnitSwitch>
inline PiecewiseCandidate piecewise_candidate(const Alg3Constants& c, double u1)
{
    if (u1 <= c.p1()) {
        const double b = pow_via_log(c.total() * u1, c.inv_alpha());
        return {true, -std::log1p(-b), b};
    }
    const double v = std::min(1.0, c.d2() * (u1 - c.p1()));
    if (!(v > 0.0)) {
        return {false, std::numeric_limits<double>::quiet_NaN(), 0.0};
    }
    if constexpr (UnitSwitch) {
        const double x = 1.0 - std::log(v);
        return {false, x, x};
    } else {
        const double x = c.s() - std::log(v);
        return {false, x, x / c.s()};
    }
}

template<bool UnitSwitch, UniformSource Source, class Stats>
double piecewise_kernel(const Alg3Constants& c, Source& rng, Stats& stats)
{
    for (;;) {
        const double u1 = rng.next();
        const double u2 = rng.next();
        stats.on_iteration();
        const PiecewiseCandidate cand = piecewise_candidate<UnitSwitch>(c, u1);
        if (cand.left) {
            stats.on_left_branch();
            const double x = cand.x;
            if (r1_accepts(u2, x, c.beta())) {
                stats.on_squeeze_accept();
                stats.on_output();
                return scale(x, c.lambda());
            }
            if (!r1_admits(u2, x, c.beta())) {
                stats.on_squeeze_reject();
                continue;
            }
            stats.on_exact();
            if (pow_via_log(u2, c.inv_beta()) * x <= cand.b) {
                stats.on_output();
                return scale(x, c.lambda());
            }
        } else {
            if (std::isnan(cand.x)) {
                continue;
            }
            const double y = cand.b;
            if (r2_accepts(u2, y, c.beta())) {
                stats.on_squeeze_accept();
                stats.on_output();
                return scale(cand.x, c.lambda());
            }
            if (!r2_admits(u2, y, c.beta())) {
                stats.on_squeeze_reject();
                continue;
            }
            stats.on_exact();
            if (u2 <= std::pow(y, c.alpha() - 1.0)) {
                stats.on_output();
                return scale(cand.x, c.lambda());
            }
        }
    }
}

} // namespace detail

/// Candidate produced from U1 by one pass of the piecewise method.
inline PiecewiseCandidate alg3_candidate(const Alg3Constants& c, double u1)
{
    return c.unit_switch() ? detail::piecewise_candidate<true>(c, u1)
                           : detail::piecewise_candidate<false>(c, u1);
}

/// Piecewise-envelope generator.
template<UniformSource Source, class Stats = NullStats>
double alg3_sample(const Alg3Constants& c, Source& rng, Stats&& stats = Stats{})
{
    return c.unit_switch() ? detail::piecewise_kernel<true>(c, rng, stats)
                           : detail::piecewise_kernel<false>(c, rng, stats);
}

//---------------------------------------------------------------------------//
// Named methods
//---------------------------------------------------------------------------//

enum class Method
{
    alg1,
    alg2,
    alg3_star,
    alg3_unit,
};

inline constexpr Method all_methods[] = {Method::alg1, Method::alg2, Method::alg3_star,
                                         Method::alg3_unit};

constexpr std::string_view method_name(Method m) noexcept
{
    switch (m) {
    case Method::alg1:
        return "alg1";
    case Method::alg2:
        return "alg2";
    case Method::alg3_star:
        return "alg3-star";
    case Method::alg3_unit:
        return "alg3-unit";
    }
    return "unknown";
}

inline std::optional<Method> parse_method(std::string_view name) noexcept
{
    for (Method m : all_methods) {
        if (method_name(m) == name) {
            return m;
        }
    }
    return std::nullopt;
}

/// Expected uniform pairs per output for a method.
inline double theoretical_density(Method m, double alpha)
{
    switch (m) {
    case Method::alg1:
    case Method::alg2:
        return std::exp(-ln_gamma(alpha + 1.0));
    case Method::alg3_star:
        return total_density(alpha, approx_switch_point(alpha));
    case Method::alg3_unit:
        return total_density(alpha, 1.0);
    }
    throw std::invalid_argument("unknown method");
}

/// A method with its per-shape constants prepared once.
class PreparedMethod
{
  public:
    PreparedMethod(Method m, const ShapeParams& p)
        : method_(m)
        , coefficients_(p)
        , piecewise_(alg3_init(p, m == Method::alg3_star ? SwitchMode::approx
                                                         : SwitchMode::unit))
    {
    }

    Method method() const noexcept { return method_; }

    template<UniformSource Source, class Stats = NullStats>
    double operator()(Source& rng, Stats&& stats = Stats{}) const
    {
        switch (method_) {
        case Method::alg1:
            return detail::base_kernel(coefficients_, rng, stats);
        case Method::alg2:
            return detail::squeeze_kernel(coefficients_, rng, stats);
        case Method::alg3_star:
            return detail::piecewise_kernel<false>(piecewise_, rng, stats);
        case Method::alg3_unit:
            return detail::piecewise_kernel<true>(piecewise_, rng, stats);
        }
        return 0.0;
    }

  private:
    Method method_;
    RejectionCoefficients coefficients_;
    Alg3Constants piecewise_;
};

//---------------------------------------------------------------------------//
// Library facade
//---------------------------------------------------------------------------//

enum class Algorithm
{
    base,      //!< alg1
    squeeze,   //!< alg2
    piecewise, //!< alg3, switch point chosen by SwitchMode
    automatic, //!< alg2 for next(), alg3 for next_batch()
};

/// Owning gamma generator: a seeded source, prepared constants and counters.
/// Single-owner; use one instance per thread.
class GammaSampler
{
  public:
    GammaSampler(Algorithm algorithm, const ShapeParams& p, std::uint64_t seed,
                 SwitchMode mode)
        : algorithm_(algorithm)
        , params_(p)
        , coefficients_(p)
        , piecewise_(alg3_init(p, mode))
        , source_(seed)
    {
    }

    double next()
    {
        switch (algorithm_) {
        case Algorithm::base:
            return detail::base_kernel(coefficients_, source_, stats_);
        case Algorithm::squeeze:
        case Algorithm::automatic:
            return detail::squeeze_kernel(coefficients_, source_, stats_);
        case Algorithm::piecewise:
            return alg3_sample(piecewise_, source_, stats_);
        }
        return 0.0;
    }

    void fill(std::span<double> out)
    {
        if (algorithm_ == Algorithm::piecewise || algorithm_ == Algorithm::automatic) {
            for (double& v : out) {
                v = alg3_sample(piecewise_, source_, stats_);
            }
            return;
        }
        for (double& v : out) {
            v = next();
        }
    }

    std::vector<double> next_batch(std::size_t n)
    {
        std::vector<double> out(n);
        fill(out);
        return out;
    }

    const SampleStats& stats() const noexcept { return stats_; }
    const ShapeParams& params() const noexcept { return params_; }
    Algorithm algorithm() const noexcept { return algorithm_; }
    std::uint64_t uniforms_drawn() const noexcept { return source_.draw_count(); }

  private:
    Algorithm algorithm_;
    ShapeParams params_;
    RejectionCoefficients coefficients_;
    Alg3Constants piecewise_;
    DefaultSource source_;
    SampleStats stats_;
};

inline GammaSampler create_sampler(Algorithm algorithm, double alpha, double lambda = 1.0,
                                   std::uint64_t seed = 5489u,
                                   SwitchMode mode = SwitchMode::unit)
{
    return GammaSampler(algorithm, ShapeParams(alpha, lambda), seed, mode);
}

} // namespace gegamma

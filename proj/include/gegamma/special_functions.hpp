#pragma once

// Densities, distribution functions and helper functions for the gamma and
// generalized exponential (GE) distributions with shape below one.
//
// All functions are pure and reentrant. Domain violations throw
// std::domain_error; invalid shape/scale parameters throw
// std::invalid_argument.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gegamma {

/// Validated shape/scale pair for the 0 < alpha < 1 regime.
class ShapeParams
{
  public:
    explicit ShapeParams(double alpha, double lambda = 1.0)
        : alpha_(alpha), beta_(1.0 - alpha), lambda_(lambda)
    {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw std::invalid_argument("shape must lie in (0, 1), got " +
                                        std::to_string(alpha));
        }
        if (!(lambda > 0.0) || !std::isfinite(lambda)) {
            throw std::invalid_argument("scale must be positive and finite, got " +
                                        std::to_string(lambda));
        }
    }

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double lambda() const noexcept { return lambda_; }

  private:
    double alpha_;
    double beta_;
    double lambda_;
};

namespace detail {

inline void require_nonnegative(double x, const char* what)
{
    if (!(x >= 0.0)) {
        throw std::domain_error(std::string(what) + ": argument must be >= 0");
    }
}

inline void require_positive(double v, const char* what)
{
    if (!(v > 0.0)) {
        throw std::domain_error(std::string(what) + ": parameter must be > 0");
    }
}

// Lanczos approximation, g = 7, n = 9.
inline constexpr std::array<double, 9> lanczos_coefficients = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

inline double ln_gamma_lanczos(double a)
{
    const double z = a - 1.0;
    double series = lanczos_coefficients[0];
    for (std::size_t i = 1; i < lanczos_coefficients.size(); ++i) {
        series += lanczos_coefficients[i] / (z + static_cast<double>(i));
    }
    const double t = z + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(series);
}

} // namespace detail

/// Natural log of the gamma function for a > 0.
inline double ln_gamma(double a)
{
    if (!(a > 0.0)) {
        throw std::domain_error("ln_gamma: argument must be > 0");
    }
    if (a == 1.0 || a == 2.0) {
        return 0.0;
    }
    if (a < 0.5) {
        // Reflection: Gamma(a) Gamma(1 - a) = pi / sin(pi a).
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * a)) -
               detail::ln_gamma_lanczos(1.0 - a);
    }
    return detail::ln_gamma_lanczos(a);
}

/// Gamma density with shape alpha > 0 and scale lambda > 0.
///
/// For alpha < 1 the density diverges at the origin; x == 0 then yields
/// +infinity rather than an error so that histogramming code needs no special
/// case.
inline double gamma_pdf(double x, double alpha, double lambda)
{
    detail::require_nonnegative(x, "gamma_pdf");
    detail::require_positive(alpha, "gamma_pdf");
    detail::require_positive(lambda, "gamma_pdf");
    if (x == 0.0) {
        if (alpha < 1.0) {
            return std::numeric_limits<double>::infinity();
        }
        return alpha == 1.0 ? 1.0 / lambda : 0.0;
    }
    const double z = x / lambda;
    return std::exp((alpha - 1.0) * std::log(z) - z - ln_gamma(alpha)) / lambda;
}

inline double gamma_pdf(double x, const ShapeParams& p)
{
    return gamma_pdf(x, p.alpha(), p.lambda());
}

namespace detail {

// Lower regularized incomplete gamma by its power series, valid for z < a + 1.
inline double incomplete_gamma_series(double a, double z)
{
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 1000; ++n) {
        term *= z / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-17) {
            break;
        }
    }
    return sum * std::exp(a * std::log(z) - z - ln_gamma(a));
}

// Upper regularized incomplete gamma by modified Lentz continued fraction,
// valid for z >= a + 1.
inline double incomplete_gamma_continued_fraction(double a, double z)
{
    constexpr double tiny = 1e-300;
    double b = z + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::fabs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) {
            break;
        }
    }
    return std::exp(a * std::log(z) - z - ln_gamma(a)) * h;
}

} // namespace detail

/// Gamma CDF, i.e. the regularized lower incomplete gamma P(alpha, x/lambda).
inline double gamma_cdf(double x, double alpha, double lambda)
{
    detail::require_nonnegative(x, "gamma_cdf");
    detail::require_positive(alpha, "gamma_cdf");
    detail::require_positive(lambda, "gamma_cdf");
    const double z = x / lambda;
    if (z == 0.0) {
        return 0.0;
    }
    if (std::isinf(z)) {
        return 1.0;
    }
    if (z < alpha + 1.0) {
        return std::min(1.0, detail::incomplete_gamma_series(alpha, z));
    }
    return std::max(0.0, 1.0 - detail::incomplete_gamma_continued_fraction(alpha, z));
}

inline double gamma_cdf(double x, const ShapeParams& p)
{
    return gamma_cdf(x, p.alpha(), p.lambda());
}

/// GE density (alpha / lambda) (1 - e^{-x/lambda})^{alpha-1} e^{-x/lambda}.
inline double ge_pdf(double x, double alpha, double lambda = 1.0)
{
    detail::require_nonnegative(x, "ge_pdf");
    detail::require_positive(alpha, "ge_pdf");
    detail::require_positive(lambda, "ge_pdf");
    const double z = x / lambda;
    const double one_minus_exp = -std::expm1(-z);
    return alpha / lambda * std::pow(one_minus_exp, alpha - 1.0) * std::exp(-z);
}

/// GE distribution function (1 - e^{-x/lambda})^alpha.
inline double ge_cdf(double x, double alpha, double lambda = 1.0)
{
    detail::require_nonnegative(x, "ge_cdf");
    detail::require_positive(alpha, "ge_cdf");
    detail::require_positive(lambda, "ge_cdf");
    return std::pow(-std::expm1(-x / lambda), alpha);
}

/// (1 - e^{-x}) / x, continuously extended with g(0) = 1.
inline double g(double x)
{
    detail::require_nonnegative(x, "g");
    if (x == 0.0) {
        return 1.0;
    }
    return -std::expm1(-x) / x;
}

/// Rejection function of the GE envelope: g(x)^beta.
inline double r1(double x, const ShapeParams& p)
{
    return std::pow(g(x), p.beta());
}

/// Rejection function of the exponential tail beyond switch point s:
/// (x/s)^(alpha-1), defined for x >= s.
inline double r2(double x, double s, const ShapeParams& p)
{
    detail::require_positive(s, "r2");
    if (!(x >= s)) {
        throw std::domain_error("r2: argument must be >= switch point");
    }
    return std::pow(x / s, p.alpha() - 1.0);
}

} // namespace gegamma

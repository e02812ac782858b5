#pragma once

// Rational squeeze bounds for the two rejection functions.
//
//   r1_lower(x) <= R1(x) = ((1 - e^{-x}) / x)^beta <= r1_upper(x),  x >= 0
//   r2_lower(y) <= y^{-beta}                       <= r2_upper(y),  y >= 1
//
// The *_accepts / *_admits predicates are the division-free forms used inside
// the samplers: `accepts` is true when u lies under the lower bound (certain
// acceptance), `admits` is false when u lies above the upper bound (certain
// rejection). Both are written exactly as the ratio bounds multiplied through by
// their positive denominators.

namespace gegamma {

/// (4 - beta x) / (4 + beta x). Negative for x > 4/beta, which is still a
/// valid lower bound.
constexpr double r1_lower(double x, double beta) noexcept
{
    return (4.0 - beta * x) / (4.0 + beta * x);
}

/// (4 + (1 - beta) x) / (4 + (1 + beta) x).
constexpr double r1_upper(double x, double beta) noexcept
{
    return (4.0 + (1.0 - beta) * x) / (4.0 + (1.0 + beta) * x);
}

/// 1 / (1 + beta (y - 1)), for y = x / s >= 1.
constexpr double r2_lower(double y, double beta) noexcept
{
    return 1.0 / (1.0 + beta * (y - 1.0));
}

/// ((1 + beta) + (1 - beta) y) / ((1 - beta) + (1 + beta) y), for y >= 1.
constexpr double r2_upper(double y, double beta) noexcept
{
    return ((1.0 + beta) + (1.0 - beta) * y) / ((1.0 - beta) + (1.0 + beta) * y);
}

/// u <= r1_lower(x, beta)
constexpr bool r1_accepts(double u, double x, double beta) noexcept
{
    return u * (4.0 + beta * x) <= 4.0 - beta * x;
}

/// u <= r1_upper(x, beta)
constexpr bool r1_admits(double u, double x, double beta) noexcept
{
    return u * (4.0 + (1.0 + beta) * x) <= 4.0 + (1.0 - beta) * x;
}

/// u <= r2_lower(y, beta)
constexpr bool r2_accepts(double u, double y, double beta) noexcept
{
    return u * (1.0 + beta * (y - 1.0)) <= 1.0;
}

/// u <= r2_upper(y, beta)
constexpr bool r2_admits(double u, double y, double beta) noexcept
{
    return u * ((1.0 - beta) + (1.0 + beta) * y) <= (1.0 + beta) + (1.0 - beta) * y;
}

} // namespace gegamma

#pragma once

#include <cstdint>
#include <optional>

#include "fbm/special.hpp"

namespace fbm {

// Closed-form bounds on E max B^H over [0,1] and over the N-point grid, and
// the H -> 0 limit of the grid expectation,
//   L(N) = (1/sqrt2) E(max of N iid N(0,1))^+ = N int_{1/2}^1 erfinv(2z-1) z^{N-1} dz.

struct BorovkovBounds {
    double lower;
    double upper;
};

/// 1/(2 sqrt(H pi e ln2)) <= E max_{[0,1]} B^H < 16.3/sqrt(H).
BorovkovBounds borovkov_bounds(double hurst);

/// 1/(2 sqrt(pi e ln2)), the coefficient of H^{-1/2} in the lower bound.
double borovkov_lower_coefficient();

/// A value that is only a proven bound when `valid` holds.
struct FlaggedBound {
    double value;
    bool valid;
};

/// Upper bound on the discretization error
/// Delta_N <= (2 sqrt(ln N)/N^H)(1 + 4/N^H + 0.0074/(ln N)^{3/2}),
/// proven for N >= 2^{1/H}; outside that region the value comes back with
/// valid = false. Throws for N < 2 or H <= 0.
FlaggedBound delta_upper_bound(double n_points, double hurst);

/// Sudakov lower bound sqrt(ln(N+1) / (N^{2H} 2 pi ln2)) on the grid expectation.
/// N is real so the maximizer can be evaluated past the integer range.
double sudakov_lower_bound(double n_points, double hurst);

struct SudakovMaximizer {
    /// floor(e^{1/(2H)}) when it fits in 63 bits.
    std::optional<std::uint64_t> n_star;
    /// log of e^{1/(2H)}, i.e. 1/(2H); always available.
    double log_n_star_real;
    /// sudakov_lower_bound at n_star (or at the real maximizer on overflow).
    double value;
    /// (4 H pi e ln2)^{-1/2}, the analytic maximum of the continuous relaxation.
    double analytic_value;
};

SudakovMaximizer sudakov_maximizer(double hurst);

/// Erf-inverse form of L(N) after t = z^N, integrated in r = 1 - t on
/// [0, 1 - 2^{-N}] with adaptive Gauss-Kronrod refinement toward r = 0.
double limit_integral_erfinv_form(std::uint64_t n_points);

/// Tail form (1/sqrt2) int_0^inf (1 - Phi(x)^N) dx, Phi^N as exp(N log1p(-Q)).
double limit_integral_tail_form(std::uint64_t n_points);

struct LimitIntegral {
    double value;
    double erfinv_form;
    double tail_form;
};

/// Cross-checked L(N). value is the erf-inverse form; throws NumericalError
/// if the two forms differ by more than kLimitIntegralAgreement.
LimitIntegral limit_integral_checked(std::uint64_t n_points);
double limit_integral(std::uint64_t n_points);

inline constexpr double kLimitIntegralAgreement = 1e-5;

/// 1 - N^{-2H}: bound on L(N) - E max_i B^H(i/N).
double limit_rate_bound(double n_points, double hurst);

/// Delta_N >= 1/(2 sqrt(H pi e ln2)) - L(N); may be negative (vacuous).
double delta_lower_bound(std::uint64_t n_points, double hurst);

/// Published coefficient of the relative-error corollary at N = 2^20.
inline constexpr double kRelativeErrorCoefficient = 16.765;
/// Published value of L(2^20).
inline constexpr double kLimitIntegral2Pow20 = 3.4452;

/// delta_H >= 1 - 16.765 sqrt(H) for N = 2^20; may be negative.
double relative_error_lower(double hurst);

/// 2 L sqrt(pi e ln2): the coefficient above recomputed from a given L(2^20).
double relative_error_coefficient(double limit_at_2pow20);

struct BoundsReport {
    double hurst;
    std::uint64_t n_points;
    double borovkov_lower;
    double borovkov_upper;
    double sudakov_lower;
    /// Empty for N < 2, where ln N <= 0 breaks the formula.
    std::optional<FlaggedBound> delta_upper;
    double limit_integral;
    double limit_rate;
    double delta_lower;
    double relative_error_lower;
};

/// Every bound at one (N, H).
BoundsReport bounds_report(std::uint64_t n_points, double hurst);

} // namespace fbm

#pragma once

namespace fbm {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// Standard normal density.
double normal_pdf(double x) noexcept;

/// Standard normal cdf via erfc, so Phi(-a) keeps full relative accuracy
/// for large a.
double normal_cdf(double x) noexcept;

/// Upper tail 1 - Phi(x), computed without cancellation.
double normal_upper_tail(double x) noexcept;

/// x with erf(x) = y, for -1 < y < 1. Rational first guess refined by
/// Halley/Newton steps against std::erf / std::erfc. Throws
/// std::invalid_argument for |y| >= 1.
double inverse_erf(double y);

/// x with erfc(x) = q, for 0 < q < 2. Accurate for q down to ~1e-300,
/// which inverse_erf(1 - q) cannot resolve.
double inverse_erfc(double q);

} // namespace fbm

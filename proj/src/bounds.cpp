#include "fbm/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fbm/errors.hpp"
#include "fbm/quadrature.hpp"

namespace fbm {

namespace {

constexpr double kE = 2.71828182845904523536;
constexpr double kLn2 = 0.69314718055994530942;
constexpr double kPiELn2 = kPi * kE * kLn2;

void require_hurst(double hurst, const char* who) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument(std::string(who) + ": hurst must lie in (0,1)");
}

void require_points(double n_points, double minimum, const char* who) {
    if (!(n_points >= minimum))
        throw std::invalid_argument(std::string(who) + ": N too small");
}

} // namespace

BorovkovBounds borovkov_bounds(double hurst) {
    require_hurst(hurst, "borovkov_bounds");
    return BorovkovBounds{1.0 / (2.0 * std::sqrt(hurst * kPiELn2)), 16.3 / std::sqrt(hurst)};
}

double borovkov_lower_coefficient() {
    return 1.0 / (2.0 * std::sqrt(kPiELn2));
}

FlaggedBound delta_upper_bound(double n_points, double hurst) {
    if (!(hurst > 0.0))
        throw std::invalid_argument("delta_upper_bound: hurst must be positive");
    if (!(n_points >= 2.0))
        throw std::invalid_argument("delta_upper_bound: N must be >= 2");
    const double log_n = std::log(n_points);
    const double n_pow_h = std::pow(n_points, hurst);
    const double value =
        2.0 * std::sqrt(log_n) / n_pow_h * (1.0 + 4.0 / n_pow_h + 0.0074 / std::pow(log_n, 1.5));
    // N >= 2^{1/H}  <=>  H log2 N >= 1
    const bool valid = hurst * std::log2(n_points) >= 1.0;
    return FlaggedBound{value, valid};
}

double sudakov_lower_bound(double n_points, double hurst) {
    require_hurst(hurst, "sudakov_lower_bound");
    require_points(n_points, 1.0, "sudakov_lower_bound");
    const double log_n = std::log(n_points);
    // N^{2H} as exp(2H ln N) stays finite for real N far beyond 2^64
    return std::sqrt(std::log1p(n_points) / (std::exp(2.0 * hurst * log_n) * 2.0 * kPi * kLn2));
}

SudakovMaximizer sudakov_maximizer(double hurst) {
    require_hurst(hurst, "sudakov_maximizer");
    SudakovMaximizer out;
    out.log_n_star_real = 1.0 / (2.0 * hurst);
    out.analytic_value = 1.0 / std::sqrt(4.0 * hurst * kPiELn2);
    if (out.log_n_star_real < std::log(9.2e18)) {
        const auto n_star = static_cast<std::uint64_t>(std::floor(std::exp(out.log_n_star_real)));
        out.n_star = n_star;
        out.value = sudakov_lower_bound(static_cast<double>(n_star), hurst);
    } else if (out.log_n_star_real < std::log(std::numeric_limits<double>::max())) {
        out.value = sudakov_lower_bound(std::floor(std::exp(out.log_n_star_real)), hurst);
    } else {
        // e^{1/2H} overflows a double; ln(N+1) = ln N = 1/(2H) to full precision
        out.value = std::sqrt(out.log_n_star_real / (std::exp(1.0) * 2.0 * kPi * kLn2));
    }
    return out;
}

double limit_integral_erfinv_form(std::uint64_t n_points) {
    if (n_points < 1)
        throw std::invalid_argument("limit_integral: N must be >= 1");
    const double n = static_cast<double>(n_points);
    // t = z^N, r = 1 - t; erfinv(2 t^{1/N} - 1) = erfcinv(2q) with q = 1 - t^{1/N}
    auto integrand = [n](double r) {
        const double q = -std::expm1(std::log1p(-r) / n);
        return inverse_erfc(2.0 * q);
    };
    const double upper = 1.0 - std::ldexp(1.0, -static_cast<int>(std::min<std::uint64_t>(n_points, 2000)));
    QuadratureOptions options;
    options.abs_tol = 1e-10;
    options.rel_tol = 1e-12;
    options.max_intervals = 4000;
    const QuadratureResult res = integrate_adaptive(integrand, 0.0, upper, options);
    if (!res.converged || !std::isfinite(res.value)) {
        std::ostringstream msg;
        msg << "limit_integral: erf-inverse quadrature did not converge for N=" << n_points
            << " (estimate " << res.value << ", error " << res.error_estimate << ", " << res.intervals
            << " intervals)";
        throw NumericalError(msg.str());
    }
    return res.value;
}

double limit_integral_tail_form(std::uint64_t n_points) {
    if (n_points < 1)
        throw std::invalid_argument("limit_integral: N must be >= 1");
    const double n = static_cast<double>(n_points);
    auto integrand = [n](double x) {
        const double log_cdf = std::log1p(-normal_upper_tail(x));
        return -std::expm1(n * log_cdf);
    };
    // N Q(sqrt(2 ln N) + 8) < e^{-32}, so the discarded tail is negligible
    const double mode = std::sqrt(2.0 * std::log(n));
    const double cutoff = mode + 8.0;
    double error = 0.0;
    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0;
    // integrate the flat part and the drop separately so the bisection tree
    // starts with the steep region isolated
    const double split = std::max(0.0, mode - 2.0);
    if (split > 0.0) {
        total += gauss_kronrod<double, 31>::integrate(integrand, 0.0, split, 30, 1e-13, &error);
        if (error > 1e-9)
            throw NumericalError("limit_integral: tail quadrature did not converge on [0, split]");
    }
    total += gauss_kronrod<double, 31>::integrate(integrand, split, cutoff, 30, 1e-13, &error);
    if (error > 1e-9 || !std::isfinite(total))
        throw NumericalError("limit_integral: tail quadrature did not converge for N=" + std::to_string(n_points));
    return total / kSqrt2;
}

LimitIntegral limit_integral_checked(std::uint64_t n_points) {
    LimitIntegral out;
    out.erfinv_form = limit_integral_erfinv_form(n_points);
    out.tail_form = limit_integral_tail_form(n_points);
    out.value = out.erfinv_form;
    if (std::abs(out.erfinv_form - out.tail_form) > kLimitIntegralAgreement) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "limit_integral: quadrature forms disagree for N=" << n_points << ": erf-inverse "
            << out.erfinv_form << " vs tail " << out.tail_form;
        throw NumericalError(msg.str());
    }
    return out;
}

double limit_integral(std::uint64_t n_points) {
    return limit_integral_checked(n_points).value;
}

double limit_rate_bound(double n_points, double hurst) {
    require_hurst(hurst, "limit_rate_bound");
    require_points(n_points, 1.0, "limit_rate_bound");
    return -std::expm1(-2.0 * hurst * std::log(n_points));
}

double delta_lower_bound(std::uint64_t n_points, double hurst) {
    return borovkov_bounds(hurst).lower - limit_integral(n_points);
}

double relative_error_lower(double hurst) {
    require_hurst(hurst, "relative_error_lower");
    return 1.0 - kRelativeErrorCoefficient * std::sqrt(hurst);
}

double relative_error_coefficient(double limit_at_2pow20) {
    return 2.0 * limit_at_2pow20 * std::sqrt(kPiELn2);
}

BoundsReport bounds_report(std::uint64_t n_points, double hurst) {
    const BorovkovBounds borovkov = borovkov_bounds(hurst);
    const double n = static_cast<double>(n_points);
    BoundsReport report{};
    report.hurst = hurst;
    report.n_points = n_points;
    report.borovkov_lower = borovkov.lower;
    report.borovkov_upper = borovkov.upper;
    report.sudakov_lower = sudakov_lower_bound(n, hurst);
    if (n_points >= 2)
        report.delta_upper = delta_upper_bound(n, hurst);
    report.limit_integral = limit_integral(n_points);
    report.limit_rate = limit_rate_bound(n, hurst);
    report.delta_lower = borovkov.lower - report.limit_integral;
    report.relative_error_lower = relative_error_lower(hurst);
    return report;
}

} // namespace fbm

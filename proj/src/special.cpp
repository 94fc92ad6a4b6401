#include "fbm/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbm {

namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257390;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Giles' single-precision rational approximation to erfinv written in terms of
// w = -log((1-y)(1+y)); takes q = 1-y so small q keeps full precision.
double erfinv_guess(double y, double q) {
    double w = -std::log(q * (2.0 - q));
    double p;
    if (w < 5.0) {
        w -= 2.5;
        p = 2.81022636e-08;
        p = 3.43273939e-07 + p * w;
        p = -3.5233877e-06 + p * w;
        p = -4.39150654e-06 + p * w;
        p = 0.00021858087 + p * w;
        p = -0.00125372503 + p * w;
        p = -0.00417768164 + p * w;
        p = 0.246640727 + p * w;
        p = 1.50140941 + p * w;
    } else {
        w = std::sqrt(w) - 3.0;
        p = -0.000200214257;
        p = 0.000100950558 + p * w;
        p = 0.00134934322 + p * w;
        p = -0.00367342844 + p * w;
        p = 0.00573950773 + p * w;
        p = -0.0076224613 + p * w;
        p = 0.00943887047 + p * w;
        p = 1.00167406 + p * w;
        p = 2.83297682 + p * w;
    }
    return p * y;
}

// Halley iteration on erf(x) - y; used for |y| <= 1/2.
double refine_erf(double x, double y) {
    for (int it = 0; it < 20; ++it) {
        const double f = std::erf(x) - y;
        const double fp = kTwoOverSqrtPi * std::exp(-x * x);
        const double ratio = f / fp;
        const double dx = ratio / (1.0 + x * ratio);
        x -= dx;
        if (std::abs(dx) <= 2.0 * kEps * std::abs(x))
            break;
    }
    return x;
}

// Newton iteration on log erfc(x) - log q; used for 0 < q <= 1/2, x > 0.
double refine_log_erfc(double x, double q) {
    const double log_q = std::log(q);
    for (int it = 0; it < 50; ++it) {
        const double e = std::erfc(x);
        if (e <= 0.0) {
            x *= 0.99;
            continue;
        }
        const double h = std::log(e) - log_q;
        const double hp = -kTwoOverSqrtPi * std::exp(-x * x) / e;
        const double dx = h / hp;
        x -= dx;
        if (std::abs(dx) <= 2.0 * kEps * std::abs(x))
            break;
    }
    return x;
}

} // namespace

double normal_pdf(double x) noexcept {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / kSqrt2);
}

double normal_upper_tail(double x) noexcept {
    return 0.5 * std::erfc(x / kSqrt2);
}

double inverse_erfc(double q) {
    if (!(q > 0.0 && q < 2.0))
        throw std::invalid_argument("inverse_erfc: argument must lie in (0,2)");
    if (q > 1.5)
        return -inverse_erfc(2.0 - q);
    if (q >= 0.5) {
        // 1 - q is exact here
        const double y = 1.0 - q;
        return refine_erf(erfinv_guess(y, q), y);
    }
    return refine_log_erfc(erfinv_guess(1.0 - q, q), q);
}

double inverse_erf(double y) {
    if (!(y > -1.0 && y < 1.0))
        throw std::invalid_argument("inverse_erf: argument must lie in (-1,1)");
    if (y == 0.0)
        return 0.0;
    const double a = std::abs(y);
    const double x = a <= 0.5 ? refine_erf(erfinv_guess(a, 1.0 - a), a) : refine_log_erfc(erfinv_guess(a, 1.0 - a), 1.0 - a);
    return y < 0.0 ? -x : x;
}

} // namespace fbm

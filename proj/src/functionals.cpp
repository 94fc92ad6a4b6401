#include "fbm/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fbm {

std::string_view to_string(FunctionalKind kind) noexcept {
    switch (kind) {
    case FunctionalKind::max:
        return "max";
    case FunctionalKind::average:
        return "average";
    }
    return "unknown";
}

double max_functional(std::span<const double> path) {
    if (path.empty())
        throw std::invalid_argument("max_functional: empty path");
    return *std::max_element(path.begin(), path.end());
}

double average_functional(std::span<const double> path) {
    if (path.empty())
        throw std::invalid_argument("average_functional: empty path");
    double sum = 0.0;
    for (double v : path)
        sum += v;
    return sum / static_cast<double>(path.size());
}

double average_second_moment_theoretical(const PathGrid& grid) {
    const long double exponent = 2.0L * grid.hurst() + 1.0L;
    const std::size_t n = grid.n_points();
    // Neumaier summation
    long double sum = 0.0L;
    long double carry = 0.0L;
    for (std::size_t i = 1; i <= n; ++i) {
        const long double term = std::pow(static_cast<long double>(i), exponent);
        const long double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            carry += (sum - t) + term;
        else
            carry += (term - t) + sum;
        sum = t;
    }
    const long double scale = std::pow(static_cast<long double>(n), -(exponent + 1.0L));
    return static_cast<double>((sum + carry) * scale);
}

double average_second_moment_limit(double hurst) {
    return 1.0 / (2.0 * hurst + 2.0);
}

} // namespace fbm

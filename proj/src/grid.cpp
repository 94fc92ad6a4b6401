#include "fbm/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fbm {

PathGrid::PathGrid(std::size_t n_points, double hurst) : n_points_(n_points), hurst_(hurst) {
    if (n_points < 1)
        throw std::invalid_argument("PathGrid: n_points must be >= 1");
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("PathGrid: hurst must lie in (0,1), got " + std::to_string(hurst));
}

double fbm_covariance(double t, double u, double hurst) {
    const double two_h = 2.0 * hurst;
    return 0.5 * (std::pow(t, two_h) + std::pow(u, two_h) - std::pow(std::abs(t - u), two_h));
}

} // namespace fbm

#pragma once

#include <cstddef>

namespace fbm {

/// N equally spaced points i/N, i = 1..N, on [0,1] and the Hurst index H.
class PathGrid {
public:
    PathGrid(std::size_t n_points, double hurst);

    std::size_t n_points() const noexcept { return n_points_; }
    double hurst() const noexcept { return hurst_; }

    /// Time of the zero-based point i, i.e. (i+1)/N.
    double time(std::size_t i) const noexcept {
        return static_cast<double>(i + 1) / static_cast<double>(n_points_);
    }

    friend bool operator==(const PathGrid&, const PathGrid&) = default;

private:
    std::size_t n_points_;
    double hurst_;
};

/// fBm covariance E[B^H(t) B^H(u)] = (t^{2H} + u^{2H} - |t-u|^{2H}) / 2.
double fbm_covariance(double t, double u, double hurst);

} // namespace fbm

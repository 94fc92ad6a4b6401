#pragma once

#include <cstddef>
#include <functional>

namespace fbm {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t intervals = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    std::size_t max_intervals = 4000;
    /// Smallest interval width that may still be bisected.
    double min_width = 1e-300;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a,b]: the interval with the
/// largest error estimate is bisected until the summed estimate drops below
/// max(abs_tol, rel_tol |I|). Kronrod nodes are interior, so integrable
/// endpoint singularities are never evaluated directly.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options = {});

} // namespace fbm

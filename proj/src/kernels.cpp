#include "fbm/kernels.hpp"

#include <cstdint>

namespace fbm::kernels {

namespace {

inline double correlation_entry(double corr, double cov_new, double inv_sd, const CorrelationStep& s,
                                bool& clamped) {
    if (s.sd_result <= 0.0)
        return 0.0;
    // sd_new * Corr(tau, xi) == Cov(tau, xi) / sd_tau
    const double numerator = s.sd_max * corr * s.cdf_alpha + cov_new * inv_sd * s.cdf_neg;
    double value = numerator / s.sd_result;
    clamped = false;
    if (value > 1.0) {
        value = 1.0;
        clamped = true;
    } else if (value < -1.0) {
        value = -1.0;
        clamped = true;
    }
    return value;
}

} // namespace

std::size_t update_correlations_serial(std::span<double> corr, std::span<const double> cov_new,
                                       std::span<const double> inv_sd, const CorrelationStep& step) {
    std::size_t clamps = 0;
    for (std::size_t j = 0; j < corr.size(); ++j) {
        bool clamped = false;
        corr[j] = correlation_entry(corr[j], cov_new[j], inv_sd[j], step, clamped);
        clamps += clamped ? 1 : 0;
    }
    return clamps;
}

std::size_t update_correlations_parallel(std::span<double> corr, std::span<const double> cov_new,
                                         std::span<const double> inv_sd, const CorrelationStep& step) {
    if (corr.size() < kParallelThreshold)
        return update_correlations_serial(corr, cov_new, inv_sd, step);
    const auto n = static_cast<std::int64_t>(corr.size());
    std::size_t clamps = 0;
#pragma omp parallel for schedule(static) reduction(+ : clamps)
    for (std::int64_t j = 0; j < n; ++j) {
        bool clamped = false;
        corr[j] = correlation_entry(corr[j], cov_new[j], inv_sd[j], step, clamped);
        clamps += clamped ? 1 : 0;
    }
    return clamps;
}

void fbm_covariance_row_serial(std::span<const double> pow_table, std::size_t row, std::size_t first,
                               std::span<double> out) {
    const double diag = pow_table[row];
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t col = first + k;
        out[k] = 0.5 * (diag + pow_table[col] - pow_table[col - row]);
    }
}

void fbm_covariance_row_parallel(std::span<const double> pow_table, std::size_t row, std::size_t first,
                                 std::span<double> out) {
    if (out.size() < kParallelThreshold) {
        fbm_covariance_row_serial(pow_table, row, first, out);
        return;
    }
    const double diag = pow_table[row];
    const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k) {
        const std::size_t col = first + static_cast<std::size_t>(k);
        out[k] = 0.5 * (diag + pow_table[col] - pow_table[col - row]);
    }
}

} // namespace fbm::kernels

#pragma once

#include <cstddef>
#include <span>

namespace fbm {

/// Serial is the reference schedule; parallel must reproduce it bit for bit.
enum class ExecutionPolicy { serial, parallel };

namespace kernels {

/// Coefficients of one Clark absorption step M' = max(M, xi).
struct CorrelationStep {
    double sd_max;      // sqrt(Var M)
    double sd_new;      // sqrt(Var xi)
    double cdf_alpha;   // Phi(alpha)
    double cdf_neg;     // Phi(-alpha)
    double sd_result;   // sqrt(Var M')
};

/// For every remaining variable tau_j:
///   corr[j] <- (sd_max corr[j] Phi(a) + sd_new (cov_new[j] * inv_sd[j] / sd_new) Phi(-a)) / sd_result
/// clamped to [-1,1]. Returns how many entries needed clamping. When
/// sd_result is zero every entry becomes 0.
std::size_t update_correlations_serial(std::span<double> corr, std::span<const double> cov_new,
                                       std::span<const double> inv_sd, const CorrelationStep& step);
std::size_t update_correlations_parallel(std::span<double> corr, std::span<const double> cov_new,
                                         std::span<const double> inv_sd, const CorrelationStep& step);

inline std::size_t update_correlations(ExecutionPolicy policy, std::span<double> corr,
                                       std::span<const double> cov_new, std::span<const double> inv_sd,
                                       const CorrelationStep& step) {
    return policy == ExecutionPolicy::parallel ? update_correlations_parallel(corr, cov_new, inv_sd, step)
                                               : update_correlations_serial(corr, cov_new, inv_sd, step);
}

/// out[k] = 0.5 (pow_table[row] + pow_table[first + k] - pow_table[first + k - row])
/// for k in [0, out.size()): one row of the tabulated fBm covariance, with
/// pow_table[k] = (k/N)^{2H} and indices one-based.
void fbm_covariance_row_serial(std::span<const double> pow_table, std::size_t row, std::size_t first,
                               std::span<double> out);
void fbm_covariance_row_parallel(std::span<const double> pow_table, std::size_t row, std::size_t first,
                                 std::span<double> out);

/// Below this many entries the parallel variants run the serial loop.
inline constexpr std::size_t kParallelThreshold = 4096;

} // namespace kernels
} // namespace fbm

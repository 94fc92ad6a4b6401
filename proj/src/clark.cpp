#include "fbm/clark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fbm/errors.hpp"
#include "fbm/special.hpp"

namespace fbm {

double PairMoments::variance() const noexcept {
    return std::max(second_moment - mean * mean, 0.0);
}

PairMoments clark_pair_moments(double mean1, double var1, double mean2, double var2, double cov) {
    if (var1 < 0.0 || var2 < 0.0)
        throw std::invalid_argument("clark_pair_moments: negative variance");
    const double second1 = mean1 * mean1 + var1;
    const double second2 = mean2 * mean2 + var2;
    const double a2 = var1 + var2 - 2.0 * cov;
    // Below this the difference xi - eta is constant to rounding.
    const double scale = std::max(var1 + var2, std::numeric_limits<double>::min());
    if (a2 <= 1e-15 * scale) {
        const bool first = mean1 >= mean2;
        return PairMoments{first ? mean1 : mean2, first ? second1 : second2, 0.0,
                           first ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity(),
                           first ? 1.0 : 0.0, first ? 0.0 : 1.0, true};
    }
    const double a = std::sqrt(a2);
    const double alpha = (mean1 - mean2) / a;
    const double cdf = normal_cdf(alpha);
    const double cdf_neg = normal_cdf(-alpha);
    const double pdf = normal_pdf(alpha);
    PairMoments out;
    out.mean = cdf * mean1 + cdf_neg * mean2 + a * pdf;
    out.second_moment = cdf * second1 + cdf_neg * second2 + a * pdf * (mean1 + mean2);
    out.a = a;
    out.alpha = alpha;
    out.cdf_alpha = cdf;
    out.cdf_neg = cdf_neg;
    out.degenerate = false;
    return out;
}

CorrelationUpdate clark_correlation_update(double var1, double corr_tau_1, double var2, double corr_tau_2,
                                           const PairMoments& pair) {
    const double sd_result = std::sqrt(pair.variance());
    if (sd_result <= 0.0)
        return CorrelationUpdate{0.0, false, true};
    const double numerator =
        std::sqrt(var1) * corr_tau_1 * pair.cdf_alpha + std::sqrt(var2) * corr_tau_2 * pair.cdf_neg;
    const double raw = numerator / sd_result;
    const double value = std::clamp(raw, -1.0, 1.0);
    return CorrelationUpdate{value, value != raw, false};
}

void GaussianVectorSpec::covariance_tail(std::size_t i, std::span<double> out, ExecutionPolicy) const {
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = covariance(i, i + 1 + k);
}

FbmVectorSpec::FbmVectorSpec(const PathGrid& grid) : grid_(grid), pow_table_(grid.n_points() + 1) {
    const double n = static_cast<double>(grid.n_points());
    const double two_h = 2.0 * grid.hurst();
    for (std::size_t k = 0; k <= grid.n_points(); ++k)
        pow_table_[k] = std::pow(static_cast<double>(k) / n, two_h);
}

double FbmVectorSpec::covariance(std::size_t i, std::size_t j) const {
    const std::size_t lo = std::min(i, j) + 1;
    const std::size_t hi = std::max(i, j) + 1;
    return 0.5 * (pow_table_[lo] + pow_table_[hi] - pow_table_[hi - lo]);
}

void FbmVectorSpec::covariance_tail(std::size_t i, std::span<double> out, ExecutionPolicy policy) const {
    // zero-based i is one-based row i+1; tail columns start at i+2
    if (policy == ExecutionPolicy::parallel)
        kernels::fbm_covariance_row_parallel(pow_table_, i + 1, i + 2, out);
    else
        kernels::fbm_covariance_row_serial(pow_table_, i + 1, i + 2, out);
}

DenseVectorSpec::DenseVectorSpec(std::vector<double> means, std::vector<double> covariance)
    : means_(std::move(means)), cov_(std::move(covariance)) {
    if (cov_.size() != means_.size() * means_.size())
        throw std::invalid_argument("DenseVectorSpec: covariance must be N x N");
}

bool clark_size_allowed(std::size_t size, const ClarkOptions& options) noexcept {
    return options.allow_large || size <= options.max_size;
}

ClarkResult clark_expected_max(const GaussianVectorSpec& spec, const ClarkOptions& options) {
    const std::size_t n = spec.size();
    if (n == 0)
        throw std::invalid_argument("clark_expected_max: empty Gaussian vector");
    if (!clark_size_allowed(n, options))
        throw SizeGuardError("clark_expected_max: N=" + std::to_string(n) + " exceeds the O(N^2) guard " +
                             std::to_string(options.max_size) + "; pass an override to run it anyway");

    std::vector<double> var(n);
    std::vector<double> sd(n);
    std::vector<double> inv_sd(n);
    for (std::size_t i = 0; i < n; ++i) {
        var[i] = std::max(spec.covariance(i, i), 0.0);
        sd[i] = std::sqrt(var[i]);
        inv_sd[i] = sd[i] > 0.0 ? 1.0 / sd[i] : 0.0;
    }

    ClarkResult result{spec.mean(0), spec.mean(0) * spec.mean(0) + var[0], 0, 0};
    if (n == 1)
        return result;

    // corr[k] = Corr(running max, variable k), k not yet absorbed
    std::vector<double> corr(n, 0.0);
    std::vector<double> cov_row(n);
    spec.covariance_tail(0, std::span<double>(cov_row).subspan(0, n - 1), options.policy);
    for (std::size_t k = 1; k < n; ++k)
        corr[k] = cov_row[k - 1] * inv_sd[0] * inv_sd[k];
    const double first_cov = cov_row[0];

    double var_max = var[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double sd_max = std::sqrt(var_max);
        const double cov_max_new = i == 1 ? first_cov : corr[i] * sd_max * sd[i];
        const PairMoments pair = clark_pair_moments(result.expected_max, var_max, spec.mean(i), var[i], cov_max_new);

        const std::size_t remaining = n - i - 1;
        if (remaining > 0) {
            std::span<double> tail_cov = std::span<double>(cov_row).subspan(0, remaining);
            spec.covariance_tail(i, tail_cov, options.policy);
            const double sd_result = std::sqrt(pair.variance());
            if (sd_result <= 0.0)
                ++result.degenerate_events;
            const kernels::CorrelationStep step{sd_max, sd[i], pair.cdf_alpha, pair.cdf_neg, sd_result};
            result.clamp_events += kernels::update_correlations(
                options.policy, std::span<double>(corr).subspan(i + 1, remaining), tail_cov,
                std::span<const double>(inv_sd).subspan(i + 1, remaining), step);
        }
        result.expected_max = pair.mean;
        result.second_moment = pair.second_moment;
        var_max = pair.variance();
    }
    return result;
}

ClarkResult clark_expected_max(const PathGrid& grid, const ClarkOptions& options) {
    if (!clark_size_allowed(grid.n_points(), options))
        throw SizeGuardError("clark_expected_max: N=" + std::to_string(grid.n_points()) +
                             " exceeds the O(N^2) guard " + std::to_string(options.max_size) +
                             "; pass an override to run it anyway");
    return clark_expected_max(FbmVectorSpec(grid), options);
}

} // namespace fbm

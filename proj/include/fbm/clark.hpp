#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fbm/grid.hpp"
#include "fbm/kernels.hpp"

namespace fbm {

/// First two moments of max{xi, eta} for a bivariate normal pair, with
/// a^2 = Var xi + Var eta - 2 Cov and alpha = (E xi - E eta)/a.
struct PairMoments {
    double mean;
    double second_moment;
    double a;
    double alpha;
    double cdf_alpha; // Phi(alpha)
    double cdf_neg;   // Phi(-alpha)
    bool degenerate;  // a == 0: max is whichever variable has the larger mean

    double variance() const noexcept;
};

/// Exact moments of the max of two jointly normal variables. A zero `a`
/// (xi - eta constant) is handled, not an error.
PairMoments clark_pair_moments(double mean1, double var1, double mean2, double var2, double cov);

struct CorrelationUpdate {
    double value;
    bool clamped;
    bool degenerate; // Var max == 0, value forced to 0
};

/// Corr(tau, max{xi, eta}) from Corr(tau, xi), Corr(tau, eta) and the pair
/// moments of (xi, eta), clamped to [-1, 1].
CorrelationUpdate clark_correlation_update(double var1, double corr_tau_1, double var2, double corr_tau_2,
                                           const PairMoments& pair);

/// Mean vector and covariance of a finite Gaussian vector, zero-based.
class GaussianVectorSpec {
public:
    virtual ~GaussianVectorSpec() = default;
    virtual std::size_t size() const = 0;
    virtual double mean(std::size_t i) const = 0;
    virtual double covariance(std::size_t i, std::size_t j) const = 0;
    /// out[k] = covariance(i, i + 1 + k); override when rows are cheap in bulk.
    virtual void covariance_tail(std::size_t i, std::span<double> out, ExecutionPolicy policy) const;
};

/// (B^H(1/N), ..., B^H(N/N)) with (k/N)^{2H} tabulated once, so each
/// covariance costs three lookups.
class FbmVectorSpec final : public GaussianVectorSpec {
public:
    explicit FbmVectorSpec(const PathGrid& grid);

    std::size_t size() const override { return grid_.n_points(); }
    double mean(std::size_t) const override { return 0.0; }
    double covariance(std::size_t i, std::size_t j) const override;
    void covariance_tail(std::size_t i, std::span<double> out, ExecutionPolicy policy) const override;

private:
    PathGrid grid_;
    std::vector<double> pow_table_; // pow_table_[k] = (k/N)^{2H}, k = 0..N
};

/// Explicit means and a dense row-major covariance matrix.
class DenseVectorSpec final : public GaussianVectorSpec {
public:
    DenseVectorSpec(std::vector<double> means, std::vector<double> covariance);

    std::size_t size() const override { return means_.size(); }
    double mean(std::size_t i) const override { return means_[i]; }
    double covariance(std::size_t i, std::size_t j) const override { return cov_[i * means_.size() + j]; }

private:
    std::vector<double> means_;
    std::vector<double> cov_;
};

inline constexpr std::size_t kClarkDefaultMaxSize = std::size_t{1} << 17;

struct ClarkOptions {
    ExecutionPolicy policy = ExecutionPolicy::serial;
    std::size_t max_size = kClarkDefaultMaxSize;
    /// Skip the size guard.
    bool allow_large = false;
};

struct ClarkResult {
    double expected_max;
    double second_moment;
    std::size_t clamp_events;
    std::size_t degenerate_events;
};

/// True when clark_expected_max would accept a vector of this size.
bool clark_size_allowed(std::size_t size, const ClarkOptions& options) noexcept;

/// Clark's recursion: absorb the variables in index order, treating the
/// running maximum as Gaussian and tracking its correlation with every
/// variable not yet absorbed. O(N^2) time, O(N) memory. Throws
/// std::invalid_argument for an empty vector and SizeGuardError above
/// options.max_size unless allow_large is set.
ClarkResult clark_expected_max(const GaussianVectorSpec& spec, const ClarkOptions& options = {});

/// clark_expected_max on the fBm grid vector.
ClarkResult clark_expected_max(const PathGrid& grid, const ClarkOptions& options = {});

} // namespace fbm

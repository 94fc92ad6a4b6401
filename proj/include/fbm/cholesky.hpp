#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "fbm/circulant.hpp"
#include "fbm/grid.hpp"
#include "fbm/rng.hpp"

namespace fbm {

/// Largest N the dense reference sampler accepts.
inline constexpr std::size_t kCholeskyMaxPoints = 1024;

/// G[i][j] = Cov(B^H((i+1)/N), B^H((j+1)/N)).
Eigen::MatrixXd covariance_matrix(const PathGrid& grid);

/// Exact small-N reference sampler: path = L z with G = L L^T.
/// Used only to validate the circulant sampler.
class CholeskySampler {
public:
    /// Throws std::invalid_argument for N > kCholeskyMaxPoints and
    /// OracleError when the factorization breaks down.
    explicit CholeskySampler(const PathGrid& grid);

    const PathGrid& grid() const noexcept { return grid_; }
    const Eigen::MatrixXd& factor() const noexcept { return lower_; }

    FbmPath sample(ReplicationStream& randomness) const;

private:
    PathGrid grid_;
    Eigen::MatrixXd lower_;
};

/// One-shot convenience wrapper; factorizes on every call.
FbmPath cholesky_oracle_sample(const PathGrid& grid, ReplicationStream& randomness);

} // namespace fbm

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "fbm/grid.hpp"
#include "fbm/rng.hpp"

namespace fbm {

/// Autocovariance of unit-lag fractional Gaussian noise on the grid,
/// c_j = (|j-1|^{2H} - 2 j^{2H} + (j+1)^{2H}) / (2 N^{2H}).
/// Throws std::invalid_argument unless 0 <= lag <= N-1.
double fgn_autocovariance(std::size_t lag, const PathGrid& grid);

/// Same formula without the lag range check; the embedding needs lags up to m/2.
double fgn_lag_covariance(std::size_t lag, double hurst, std::size_t n_points);

/// m = 2^{1+v} where 2^v is the smallest power of two >= N.
std::size_t embedding_size(std::size_t n_points);

namespace detail {
struct FftPlan;
}

struct FgnPair;

/// Eigenvalues of the m x m circulant that embeds the fGn covariance.
/// Immutable once built; share it freely between threads.
class CirculantSpectrum {
public:
    const PathGrid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return eigenvalues_.size(); }
    std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
    /// Smallest eigenvalue before clipping.
    double min_raw_eigenvalue() const noexcept { return min_raw_eigenvalue_; }
    std::size_t clipped_count() const noexcept { return clipped_count_; }

private:
    friend CirculantSpectrum build_embedding_from_row(std::span<const double>, const PathGrid&);
    friend FgnPair sample_fgn_pair(const CirculantSpectrum&, ReplicationStream&);

    CirculantSpectrum(PathGrid grid) : grid_(grid) {}

    PathGrid grid_;
    std::vector<double> eigenvalues_;
    std::vector<double> weights_; // sqrt(lambda_k / m)
    double min_raw_eigenvalue_ = 0.0;
    std::size_t clipped_count_ = 0;
    std::shared_ptr<const detail::FftPlan> plan_;
};

/// Builds the circulant row c_0..c_{m-1} with the wraparound rule and
/// diagonalizes it by FFT. Eigenvalues in [-1e-9 max, 0) are clipped to
/// zero; anything more negative throws EmbeddingError.
CirculantSpectrum build_embedding(const PathGrid& grid);

/// Diagonalizes an arbitrary symmetric circulant first row (size must be a
/// power of two). build_embedding is this applied to the fGn row.
CirculantSpectrum build_embedding_from_row(std::span<const double> row, const PathGrid& grid);

/// Two independent fGn increment vectors of length N from one FFT.
struct FgnPair {
    std::vector<double> first;
    std::vector<double> second;
};

/// Draws W_k = sqrt(lambda_k/m)(A_k + i B_k) with A, B iid N(0,1), applies one
/// FFT, and returns the real and imaginary parts truncated to N entries.
/// Each part is exactly N(0, C_N) and the two parts are independent.
FgnPair sample_fgn_pair(const CirculantSpectrum& spectrum, ReplicationStream& randomness);

/// First vector of sample_fgn_pair.
std::vector<double> sample_fgn(const CirculantSpectrum& spectrum, ReplicationStream& randomness);

/// One simulated path (B^H(1/N), ..., B^H(N/N)).
struct FbmPath {
    std::vector<double> values;
    PathGrid grid;
    std::uint64_t seed = 0;
    std::uint64_t replication = 0;
};

/// values[i] = increments[0] + ... + increments[i].
FbmPath path_from_increments(std::span<const double> increments, const PathGrid& grid);

} // namespace fbm

#include "fbm/cholesky.hpp"

#include <stdexcept>
#include <string>

#include "fbm/errors.hpp"

namespace fbm {

Eigen::MatrixXd covariance_matrix(const PathGrid& grid) {
    const auto n = static_cast<Eigen::Index>(grid.n_points());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double c = fbm_covariance(grid.time(static_cast<std::size_t>(i)),
                                            grid.time(static_cast<std::size_t>(j)), grid.hurst());
            g(i, j) = c;
            g(j, i) = c;
        }
    }
    return g;
}

CholeskySampler::CholeskySampler(const PathGrid& grid) : grid_(grid) {
    if (grid.n_points() > kCholeskyMaxPoints)
        throw std::invalid_argument("CholeskySampler: N=" + std::to_string(grid.n_points()) +
                                    " exceeds the dense limit " + std::to_string(kCholeskyMaxPoints));
    Eigen::LLT<Eigen::MatrixXd> llt(covariance_matrix(grid));
    if (llt.info() != Eigen::Success)
        throw OracleError("CholeskySampler: covariance factorization failed for N=" +
                          std::to_string(grid.n_points()) + ", H=" + std::to_string(grid.hurst()));
    lower_ = llt.matrixL();
}

FbmPath CholeskySampler::sample(ReplicationStream& randomness) const {
    const auto n = lower_.rows();
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i)
        z[i] = randomness();
    Eigen::VectorXd x = lower_.triangularView<Eigen::Lower>() * z;
    return FbmPath{std::vector<double>(x.data(), x.data() + n), grid_};
}

FbmPath cholesky_oracle_sample(const PathGrid& grid, ReplicationStream& randomness) {
    return CholeskySampler(grid).sample(randomness);
}

} // namespace fbm

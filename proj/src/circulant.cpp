#include "fbm/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <fftw3.h>

#include "fbm/errors.hpp"

namespace fbm {

namespace detail {

// FFTW planning and plan destruction are not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using FftBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftBuffer make_buffer(std::size_t m) {
    auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m));
    if (!p)
        throw std::bad_alloc();
    return FftBuffer(p);
}

/// In-place complex transform with kernel exp(+2 pi i jk/m).
struct FftPlan {
    explicit FftPlan(std::size_t m) : size(m) {
        FftBuffer scratch = make_buffer(m);
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(m), scratch.get(), scratch.get(), FFTW_BACKWARD,
                                FFTW_ESTIMATE);
        if (!plan)
            throw std::runtime_error("FFTW planning failed");
    }
    ~FftPlan() {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    // buffer must come from fftw_malloc so alignment matches the plan.
    void execute(fftw_complex* buffer) const { fftw_execute_dft(plan, buffer, buffer); }

    std::size_t size;
    fftw_plan plan;
};

} // namespace detail

double fgn_lag_covariance(std::size_t lag, double hurst, std::size_t n_points) {
    const double two_h = 2.0 * hurst;
    const double j = static_cast<double>(lag);
    const double scale = std::pow(static_cast<double>(n_points), -two_h);
    if (lag == 0)
        return scale;
    return 0.5 * scale * (std::pow(j - 1.0, two_h) - 2.0 * std::pow(j, two_h) + std::pow(j + 1.0, two_h));
}

double fgn_autocovariance(std::size_t lag, const PathGrid& grid) {
    if (lag >= grid.n_points())
        throw std::invalid_argument("fgn_autocovariance: lag must be in [0, N-1]");
    return fgn_lag_covariance(lag, grid.hurst(), grid.n_points());
}

std::size_t embedding_size(std::size_t n_points) {
    std::size_t pow2 = 1;
    while (pow2 < n_points)
        pow2 <<= 1;
    return 2 * pow2;
}

CirculantSpectrum build_embedding_from_row(std::span<const double> row, const PathGrid& grid) {
    const std::size_t m = row.size();
    if (m == 0 || (m & (m - 1)) != 0)
        throw std::invalid_argument("build_embedding: circulant size must be a power of two");

    CirculantSpectrum spectrum(grid);
    auto plan = std::make_shared<const detail::FftPlan>(m);

    detail::FftBuffer buffer = detail::make_buffer(m);
    for (std::size_t j = 0; j < m; ++j) {
        buffer[j][0] = row[j];
        buffer[j][1] = 0.0;
    }
    plan->execute(buffer.get());

    std::vector<double> lambda(m);
    for (std::size_t k = 0; k < m; ++k)
        lambda[k] = buffer[k][0];

    const double max_lambda = *std::max_element(lambda.begin(), lambda.end());
    const double min_lambda = *std::min_element(lambda.begin(), lambda.end());
    const double clip = 1e-9 * std::max(max_lambda, 0.0);
    if (min_lambda < -clip) {
        std::ostringstream msg;
        msg << "circulant embedding is not nonnegative definite for N=" << grid.n_points()
            << ", H=" << grid.hurst() << ": minimal eigenvalue " << min_lambda;
        throw EmbeddingError(msg.str(), min_lambda);
    }

    spectrum.min_raw_eigenvalue_ = min_lambda;
    spectrum.weights_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        if (lambda[k] < 0.0) {
            lambda[k] = 0.0;
            ++spectrum.clipped_count_;
        }
        spectrum.weights_[k] = std::sqrt(lambda[k] / static_cast<double>(m));
    }
    spectrum.eigenvalues_ = std::move(lambda);
    spectrum.plan_ = std::move(plan);
    return spectrum;
}

CirculantSpectrum build_embedding(const PathGrid& grid) {
    const std::size_t n = grid.n_points();
    const std::size_t m = embedding_size(n);
    const std::size_t half = m / 2;
    std::vector<double> row(m);
    for (std::size_t j = 0; j <= half; ++j)
        row[j] = fgn_lag_covariance(j, grid.hurst(), n);
    for (std::size_t j = half + 1; j < m; ++j)
        row[j] = row[m - j];
    return build_embedding_from_row(row, grid);
}

FgnPair sample_fgn_pair(const CirculantSpectrum& spectrum, ReplicationStream& randomness) {
    const std::size_t m = spectrum.size();
    const std::size_t n = spectrum.grid().n_points();

    detail::FftBuffer buffer = detail::make_buffer(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double a = randomness();
        const double b = randomness();
        buffer[k][0] = spectrum.weights_[k] * a;
        buffer[k][1] = spectrum.weights_[k] * b;
    }
    spectrum.plan_->execute(buffer.get());

    FgnPair out;
    out.first.resize(n);
    out.second.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.first[i] = buffer[i][0];
        out.second[i] = buffer[i][1];
    }
    return out;
}

std::vector<double> sample_fgn(const CirculantSpectrum& spectrum, ReplicationStream& randomness) {
    return sample_fgn_pair(spectrum, randomness).first;
}

FbmPath path_from_increments(std::span<const double> increments, const PathGrid& grid) {
    if (increments.size() != grid.n_points())
        throw std::invalid_argument("path_from_increments: expected " + std::to_string(grid.n_points()) +
                                    " increments, got " + std::to_string(increments.size()));
    FbmPath path{std::vector<double>(increments.size()), grid};
    double running = 0.0;
    for (std::size_t i = 0; i < increments.size(); ++i) {
        running += increments[i];
        path.values[i] = running;
    }
    return path;
}

} // namespace fbm

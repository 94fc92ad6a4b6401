#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "fbm/functionals.hpp"
#include "fbm/grid.hpp"
#include "fbm/kernels.hpp"

namespace fbm {

/// Mean, unbiased variance and normal-approximation 95% interval.
struct SampleSummary {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    FunctionalKind functional = FunctionalKind::max;

    double std_error() const noexcept;
};

inline constexpr double kZ95 = 1.96;

/// mean +- 1.96 sqrt(variance / n). Throws for fewer than two samples.
SampleSummary summarize(std::span<const double> samples, FunctionalKind kind = FunctionalKind::max);

enum class ExperimentMode { fbm, iid_limit };

/// Which exact sampler produces the fBm paths.
enum class SamplerKind { circulant, cholesky };

struct ExperimentConfig {
    PathGrid grid;
    std::size_t sample_size = 1000;
    std::uint64_t master_seed = 0;
    std::vector<FunctionalKind> functionals{FunctionalKind::max, FunctionalKind::average};
    ExperimentMode mode = ExperimentMode::fbm;
    SamplerKind sampler = SamplerKind::circulant;
    ExecutionPolicy policy = ExecutionPolicy::parallel;
};

struct ExperimentResult {
    std::map<FunctionalKind, SampleSummary> summaries;
    /// Per-replication functional values, index = replication.
    std::map<FunctionalKind, std::vector<double>> samples;
};

/// Raw per-replication functional values. With the circulant sampler one FFT
/// yields replications 2k and 2k+1 from the stream keyed (master_seed, k);
/// the Cholesky sampler keys replication r by (master_seed, r). Either way a
/// replication's value does not depend on the schedule or on sample_size.
std::map<FunctionalKind, std::vector<double>> simulate_functionals(const ExperimentConfig& config);

/// n replications of the configured fBm functionals, summarized in
/// replication order. Requires mode == fbm and sample_size >= 2.
ExperimentResult run_fbm_experiment(const ExperimentConfig& config);

/// (1/sqrt2) max(0, max of N iid N(0,1)) for replications 0..n-1; each
/// replication streams its N draws without storing them.
std::vector<double> iid_limit_samples(std::uint64_t n_points, std::size_t sample_size, std::uint64_t master_seed,
                                      ExecutionPolicy policy = ExecutionPolicy::parallel);

SampleSummary run_iid_limit_experiment(std::uint64_t n_points, std::size_t sample_size,
                                       std::uint64_t master_seed,
                                       ExecutionPolicy policy = ExecutionPolicy::parallel);

} // namespace fbm

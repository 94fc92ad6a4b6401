#include "fbm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "fbm/cholesky.hpp"
#include "fbm/circulant.hpp"
#include "fbm/rng.hpp"
#include "fbm/special.hpp"

namespace fbm {

namespace {

// Keeps the iid streams apart from the fBm streams under the same seed.
constexpr std::uint64_t kIidStreamTag = 0x6969645f6c696d69ULL;

void record(const ExperimentConfig& config, std::span<const double> path, std::size_t replication,
            std::map<FunctionalKind, std::vector<double>>& out) {
    for (FunctionalKind kind : config.functionals) {
        out.at(kind)[replication] =
            kind == FunctionalKind::max ? max_functional(path) : average_functional(path);
    }
}

void simulate_circulant(const ExperimentConfig& config, std::map<FunctionalKind, std::vector<double>>& out) {
    const CirculantSpectrum spectrum = build_embedding(config.grid);
    const std::size_t n = config.sample_size;
    const auto pairs = static_cast<std::int64_t>((n + 1) / 2);

    auto body = [&](std::int64_t k) {
        ReplicationStream stream(config.master_seed, static_cast<std::uint64_t>(k));
        const FgnPair fgn = sample_fgn_pair(spectrum, stream);
        const std::size_t rep = 2 * static_cast<std::size_t>(k);
        record(config, path_from_increments(fgn.first, config.grid).values, rep, out);
        if (rep + 1 < n)
            record(config, path_from_increments(fgn.second, config.grid).values, rep + 1, out);
    };

    if (config.policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t k = 0; k < pairs; ++k)
            body(k);
    } else {
        for (std::int64_t k = 0; k < pairs; ++k)
            body(k);
    }
}

void simulate_cholesky(const ExperimentConfig& config, std::map<FunctionalKind, std::vector<double>>& out) {
    const CholeskySampler sampler(config.grid);
    const auto n = static_cast<std::int64_t>(config.sample_size);

    auto body = [&](std::int64_t r) {
        ReplicationStream stream(config.master_seed, static_cast<std::uint64_t>(r));
        record(config, sampler.sample(stream).values, static_cast<std::size_t>(r), out);
    };

    if (config.policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t r = 0; r < n; ++r)
            body(r);
    } else {
        for (std::int64_t r = 0; r < n; ++r)
            body(r);
    }
}

double iid_limit_replication(std::uint64_t n_points, std::uint64_t master_seed, std::uint64_t replication) {
    ReplicationStream stream(master_seed ^ kIidStreamTag, replication);
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < n_points; ++i)
        best = std::max(best, stream());
    return std::max(best, 0.0) / kSqrt2;
}

} // namespace

double SampleSummary::std_error() const noexcept {
    return count > 0 ? std::sqrt(variance / static_cast<double>(count)) : 0.0;
}

SampleSummary summarize(std::span<const double> samples, FunctionalKind kind) {
    if (samples.size() < 2)
        throw std::invalid_argument("summarize: need at least two samples");
    const double n = static_cast<double>(samples.size());
    // two-pass in replication order; deterministic for any schedule
    double sum = 0.0;
    for (double x : samples)
        sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    double comp = 0.0;
    for (double x : samples) {
        const double d = x - mean;
        ss += d * d;
        comp += d;
    }
    const double variance = std::max((ss - comp * comp / n) / (n - 1.0), 0.0);

    SampleSummary s;
    s.count = samples.size();
    s.mean = mean;
    s.variance = variance;
    s.functional = kind;
    const double half = kZ95 * std::sqrt(variance / n);
    s.ci95_low = mean - half;
    s.ci95_high = mean + half;
    return s;
}

std::map<FunctionalKind, std::vector<double>> simulate_functionals(const ExperimentConfig& config) {
    if (config.mode != ExperimentMode::fbm)
        throw std::invalid_argument("simulate_functionals: config.mode must be fbm");
    if (config.functionals.empty())
        throw std::invalid_argument("simulate_functionals: no functionals requested");
    std::map<FunctionalKind, std::vector<double>> out;
    for (FunctionalKind kind : config.functionals)
        out[kind].assign(config.sample_size, 0.0);
    if (config.sampler == SamplerKind::cholesky)
        simulate_cholesky(config, out);
    else
        simulate_circulant(config, out);
    return out;
}

ExperimentResult run_fbm_experiment(const ExperimentConfig& config) {
    if (config.sample_size < 2)
        throw std::invalid_argument("run_fbm_experiment: sample_size must be >= 2");
    ExperimentResult result;
    result.samples = simulate_functionals(config);
    for (const auto& [kind, values] : result.samples)
        result.summaries[kind] = summarize(values, kind);
    return result;
}

std::vector<double> iid_limit_samples(std::uint64_t n_points, std::size_t sample_size, std::uint64_t master_seed,
                                      ExecutionPolicy policy) {
    if (n_points < 1)
        throw std::invalid_argument("iid_limit_samples: N must be >= 1");
    std::vector<double> out(sample_size);
    const auto n = static_cast<std::int64_t>(sample_size);
    if (policy == ExecutionPolicy::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t r = 0; r < n; ++r)
            out[r] = iid_limit_replication(n_points, master_seed, static_cast<std::uint64_t>(r));
    } else {
        for (std::int64_t r = 0; r < n; ++r)
            out[r] = iid_limit_replication(n_points, master_seed, static_cast<std::uint64_t>(r));
    }
    return out;
}

SampleSummary run_iid_limit_experiment(std::uint64_t n_points, std::size_t sample_size, std::uint64_t master_seed,
                                       ExecutionPolicy policy) {
    if (sample_size < 2)
        throw std::invalid_argument("run_iid_limit_experiment: sample_size must be >= 2");
    return summarize(iid_limit_samples(n_points, sample_size, master_seed, policy), FunctionalKind::max);
}

} // namespace fbm

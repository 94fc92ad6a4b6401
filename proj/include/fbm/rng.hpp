#pragma once

#include <cstdint>
#include <random>

namespace fbm {

/// Mixes (master seed, stream index) into a 64-bit engine seed with two
/// rounds of splitmix64, so neighbouring indices give unrelated streams.
std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Standard normal variates for one replication. Streams are keyed by
/// (master seed, index) so replications can run in any order.
class ReplicationStream {
public:
    ReplicationStream(std::uint64_t master_seed, std::uint64_t index)
        : engine_(stream_key(master_seed, index)) {}

    double operator()() { return normal_(engine_); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

} // namespace fbm

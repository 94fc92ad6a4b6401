/*
Serial reference vs OpenMP schedule for the three hot loops:
fBm replications (circulant FFT + functionals), Clark's O(N^2) correlation
sweep, and the iid-limit replications. Also checks the two schedules agree.

usage: fbm_bench [--quick]
*/

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fbm/clark.hpp"
#include "fbm/montecarlo.hpp"

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const std::string& name, double serial, double parallel, bool same) {
    std::cout << std::left << std::setw(34) << name << std::right << std::fixed << std::setprecision(3)
              << std::setw(10) << serial << std::setw(10) << parallel << std::setw(9)
              << (parallel > 0 ? serial / parallel : 0.0) << "x  " << (same ? "identical" : "MISMATCH") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "threads: " << threads << "\n";
    std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(10) << "serial" << std::setw(10)
              << "parallel" << std::setw(10) << "speedup" << "\n";

    bool all_same = true;

    {
        const std::size_t n = quick ? std::size_t{1} << 10 : std::size_t{1} << 15;
        fbm::ExperimentConfig cfg{fbm::PathGrid(n, 0.01)};
        cfg.sample_size = quick ? 64 : 400;
        cfg.master_seed = 7;
        fbm::ExperimentResult a, b;
        cfg.policy = fbm::ExecutionPolicy::serial;
        const double ts = seconds([&] { a = fbm::run_fbm_experiment(cfg); });
        cfg.policy = fbm::ExecutionPolicy::parallel;
        const double tp = seconds([&] { b = fbm::run_fbm_experiment(cfg); });
        const bool same = a.samples == b.samples;
        all_same = all_same && same;
        report("fbm replications N=" + std::to_string(n), ts, tp, same);
    }
    {
        const std::size_t n = quick ? std::size_t{1} << 11 : std::size_t{1} << 14;
        const fbm::PathGrid grid(n, 0.01);
        fbm::ClarkOptions opt;
        fbm::ClarkResult a{}, b{};
        opt.policy = fbm::ExecutionPolicy::serial;
        const double ts = seconds([&] { a = fbm::clark_expected_max(grid, opt); });
        opt.policy = fbm::ExecutionPolicy::parallel;
        const double tp = seconds([&] { b = fbm::clark_expected_max(grid, opt); });
        const bool same = a.expected_max == b.expected_max && a.clamp_events == b.clamp_events;
        all_same = all_same && same;
        report("clark sweep N=" + std::to_string(n), ts, tp, same);
    }
    {
        const std::uint64_t n = quick ? std::uint64_t{1} << 12 : std::uint64_t{1} << 18;
        const std::size_t reps = quick ? 64 : 200;
        std::vector<double> a, b;
        const double ts =
            seconds([&] { a = fbm::iid_limit_samples(n, reps, 11, fbm::ExecutionPolicy::serial); });
        const double tp =
            seconds([&] { b = fbm::iid_limit_samples(n, reps, 11, fbm::ExecutionPolicy::parallel); });
        const bool same = a == b;
        all_same = all_same && same;
        report("iid limit N=" + std::to_string(n), ts, tp, same);
    }
    return all_same ? 0 : 1;
}

// Parallel kernels vs their serial reference implementations.
//
//   ./bench_kernels                # all kernels
//   OMP_NUM_THREADS=1 ./bench_kernels --benchmark_filter=parallel

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "codesense/codeanalysis.hpp"
#include "codesense/ensemble.hpp"
#include "codesense/gf2.hpp"
#include "codesense/sensing.hpp"

using namespace codesense;

namespace {

BinaryMatrix random_full_rank(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (;;) {
        BinaryMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if (rng() & 1u) m.set(i, j, true);
        if (rank(m) == rows) return m;
    }
}

void bm_weight_dist_serial(benchmark::State& state) {
    auto g = random_full_rank(static_cast<std::size_t>(state.range(0)), 64, 1);
    for (auto _ : state) benchmark::DoNotOptimize(weight_distribution_serial(g));
}

void bm_weight_dist_parallel(benchmark::State& state) {
    auto g = random_full_rank(static_cast<std::size_t>(state.range(0)), 64, 1);
    for (auto _ : state) benchmark::DoNotOptimize(weight_distribution(g));
}

void bm_matvec_serial(benchmark::State& state) {
    auto k = static_cast<std::size_t>(state.range(0));
    auto sm = CompactSensingMatrix::from_generator(random_full_rank(k, 64, 2), 64 - k);
    std::vector<double> x(sm.m(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(sm.matvec_serial(x));
}

void bm_matvec_parallel(benchmark::State& state) {
    auto k = static_cast<std::size_t>(state.range(0));
    auto sm = CompactSensingMatrix::from_generator(random_full_rank(k, 64, 2), 64 - k);
    std::vector<double> x(sm.m(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(sm.matvec(x));
}

void bm_scan_serial(benchmark::State& state) {
    std::vector<Rational> eps = {{1, 2}};
    for (auto _ : state)
        benchmark::DoNotOptimize(exhaustive_scan_serial(5, static_cast<std::size_t>(state.range(0)), eps));
}

void bm_scan_parallel(benchmark::State& state) {
    std::vector<Rational> eps = {{1, 2}};
    for (auto _ : state)
        benchmark::DoNotOptimize(exhaustive_scan(5, static_cast<std::size_t>(state.range(0)), eps));
}

}  // namespace

BENCHMARK(bm_weight_dist_serial)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_weight_dist_parallel)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_matvec_serial)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_matvec_parallel)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_scan_serial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_scan_parallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

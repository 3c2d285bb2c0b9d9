// Throughput comparison of the OpenMP kernels against the serial loops on
// the bundled smooth problem. Both paths produce identical bits; this
// target only measures speed.

#include <benchmark/benchmark.h>

#include "photokin/experiments.hpp"
#include "photokin/grid.hpp"
#include "photokin/schemes.hpp"

namespace {

using namespace photokin;

const ValidatedProblem& bench_problem() {
    static const ValidatedProblem problem = builtin_problem("test-1");
    return problem;
}

void run_scheme(benchmark::State& state, SchemeId scheme, bool parallel) {
    const ValidatedProblem& problem = bench_problem();
    const GridSpec grid = GridSpec::from_theta(problem, 1.0 / 32.0);
    SchemeConfig config;
    config.scheme = scheme;
    config.parallel = parallel;
    for (auto _ : state) {
        SolutionField field = run_simulation(problem, grid, config);
        benchmark::DoNotOptimize(field.data().data());
    }
}

void BM_nsfd_serial(benchmark::State& state) { run_scheme(state, SchemeId::nsfd, false); }
void BM_nsfd_parallel(benchmark::State& state) { run_scheme(state, SchemeId::nsfd, true); }
void BM_pc_serial(benchmark::State& state) { run_scheme(state, SchemeId::pc, false); }
void BM_pc_parallel(benchmark::State& state) { run_scheme(state, SchemeId::pc, true); }
void BM_dq_serial(benchmark::State& state) { run_scheme(state, SchemeId::dq, false); }
void BM_dq_parallel(benchmark::State& state) { run_scheme(state, SchemeId::dq, true); }

BENCHMARK(BM_nsfd_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nsfd_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pc_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pc_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dq_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dq_parallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

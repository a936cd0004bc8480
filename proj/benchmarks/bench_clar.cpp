#include <benchmark/benchmark.h>

#include "clar/alm_solver.hpp"
#include "clar/data_io.hpp"
#include "clar/logdet_prox.hpp"
#include "clar/pipeline.hpp"

using namespace clar;

namespace {

void BM_ScalarProx(benchmark::State& state) {
    Rng rng(1);
    std::vector<ScalarProxProblem> problems;
    for (int i = 0; i < 1024; ++i)
        problems.push_back({100.0 * rng.uniform(), 0.3 + 99.0 * rng.uniform()});
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(scalar_prox(problems[i++ & 1023]));
    }
}
BENCHMARK(BM_ScalarProx);

void BM_MatrixProx(benchmark::State& state) {
    const auto n = state.range(0);
    const Matrix a = seeded_random_matrix(n, n, Distribution::standard_normal, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matrix_prox(a, 1.0).data());
    }
}
BENCHMARK(BM_MatrixProx)->Arg(50)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

SynthSpec spec(int per_subspace) {
    SynthSpec s;
    s.points_per_subspace = per_subspace;
    return s;
}

void BM_Solve(benchmark::State& state) {
    const Dataset d = generate_synthetic(spec(static_cast<int>(state.range(0))));
    SolverConfig c;
    c.lambda = 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(d.X, c).Z.data());
    }
    state.SetLabel("n=" + std::to_string(d.X.cols()));
}
BENCHMARK(BM_Solve)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
    const Dataset d = generate_synthetic(spec(50));
    PipelineOptions o;
    o.solver.lambda = 10.0;
    o.k = 3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_pipeline(d, o).labels.labels.data());
    }
}
BENCHMARK(BM_Pipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

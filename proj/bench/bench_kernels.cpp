// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include "icamuv/enumeration.hpp"
#include "icamuv/instance_lab.hpp"
#include "icamuv/oracle.hpp"

#include <benchmark/benchmark.h>

using namespace icamuv;

namespace {

Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

IntegrationInput bench_input(std::size_t d, std::size_t u, std::uint64_t seed) {
    return project_all(generate_instance({d, 0.3, 2, u}, seed));
}

// Priority evaluation for every child of the root: the hot loop of the search.
void BM_EvaluatePriorities(benchmark::State& state) {
    IntegrationInput input = bench_input(10, 3, 1);
    OverlapResult base = with_edge_order(overlap(input), EdgeOrderPolicy::ConstrainedFirst);
    CostModel model(base);
    std::vector<SearchState> children = successors({Assignment(), 0, 0}, model, Execution::Serial);
    for (auto _ : state) {
        evaluate_priorities(model, children, mode(state));
        benchmark::DoNotOptimize(children.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * children.size()));
}
BENCHMARK(BM_EvaluatePriorities)->Arg(0)->Arg(1);

void BM_Enumerate(benchmark::State& state) {
    IntegrationInput input = bench_input(10, 3, 3);
    SearchOptions options;
    options.execution = mode(state);
    for (auto _ : state) {
        EnumerationResult r = enumerate(input, options);
        benchmark::DoNotOptimize(r.solutions.size());
    }
}
BENCHMARK(BM_Enumerate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
    // Smallest seed whose open set fits the oracle comfortably.
    IntegrationInput input;
    for (std::uint64_t seed = 0;; ++seed) {
        input = bench_input(7, 2, seed);
        auto open = oracle::reference_overlap(input).second.size();
        if (open >= 7 && open <= 9) break;
    }
    for (auto _ : state) {
        auto r = oracle::brute_force_enumerate(input, 1, oracle::kDefaultOpenPairCap, mode(state));
        benchmark::DoNotOptimize(r.dag_count);
    }
}
BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

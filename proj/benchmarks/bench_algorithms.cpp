#include <benchmark/benchmark.h>

#include <filesystem>
#include <numeric>

#include "treelab/algorithms.hpp"
#include "treelab/dataset.hpp"
#include "treelab/splitcore.hpp"

using namespace treelab;

namespace {

const Dataset& breast() {
    static const Dataset data = load_csv(std::filesystem::path(TREELAB_DATA_DIR) / "breast.csv");
    return data;
}

// One fold of a 10-fold split on Breast; range(0) is the bootstrap count.
void fit_predict_fold(benchmark::State& state, Algorithm algorithm) {
    const Dataset& data = breast();
    const FoldPlan plan = make_folds(data.row_count(), 10, 1);
    const auto train = plan.train_rows(0);
    const auto test = plan.test_rows(0);
    BaggingParams params;
    params.bootstraps = static_cast<std::size_t>(state.range(0));
    std::uint64_t nodes = 0;
    for (auto _ : state) {
        const auto result = fit_predict(algorithm, data, train, data, test, params);
        nodes = result.metrics.nodes_explored;
        benchmark::DoNotOptimize(result.probabilities.values().data());
    }
    state.counters["nodes"] = static_cast<double>(nodes);
}

void BM_Eager(benchmark::State& state) { fit_predict_fold(state, Algorithm::Eager); }
void BM_Lazy(benchmark::State& state) { fit_predict_fold(state, Algorithm::Lazy); }
void BM_Batched(benchmark::State& state) { fit_predict_fold(state, Algorithm::Batched); }

void BM_BestCondition(benchmark::State& state) {
    const Dataset& data = breast();
    std::vector<RowIndex> rows(data.row_count());
    std::iota(rows.begin(), rows.end(), RowIndex{0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(best_condition(data, rows));
    }
}

}  // namespace

BENCHMARK(BM_Eager)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lazy)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Batched)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BestCondition)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

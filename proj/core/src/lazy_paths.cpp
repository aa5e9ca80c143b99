#include "treelab/lazy_paths.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace treelab {

FitPredictResult fit_predict_lazy(const Dataset& train, std::span<const RowIndex> train_rows,
                                  const Dataset& test, std::span<const RowIndex> test_rows,
                                  const BaggingParams& params, TraceLog* trace) {
    params.validate();
    if (test_rows.empty()) {
        throw std::invalid_argument("no test rows");
    }
    CpuTimer timer;
    FitPredictResult result;
    result.metrics.algorithm = Algorithm::Lazy;
    result.probabilities = PredictionMatrix(test_rows.size(), train.class_count());
    const double weight = 1.0 / static_cast<double>(params.bootstraps);
    const SplitParams& split = params.split;

    StackMeter stack;
    std::vector<ClassIndex> votes(test_rows.size());
    std::vector<RowIndex> held;
    std::vector<RowIndex> next;
    std::string path;
    for (std::size_t i = 0; i < params.bootstraps; ++i) {
        const std::vector<RowIndex> sample = bootstrap(train_rows, params.bootstrap_seed(i));
        FrameCharge sample_frame(stack, sample.size(), 0);
        const std::uint64_t before = result.metrics.nodes_explored;

        for (std::size_t j = 0; j < test_rows.size(); ++j) {
            std::span<const RowIndex> subset = sample;  // aliases the sample until the first step
            held.clear();
            path = kRootNode;
            for (std::size_t depth = 0;; ++depth) {
                ++result.metrics.nodes_explored;
                const LabelHistogram hist = LabelHistogram::of(train, subset);
                std::optional<ScoredCondition> best;
                if (subset.size() >= split.min_count && depth <= split.max_depth && !is_pure(hist)) {
                    best = best_condition(train, subset);
                }
                if (!best) {
                    votes[j] = majority_class(hist);
                    if (trace != nullptr) {
                        trace->push_back(TraceEvent{i, j, path, depth, subset.size(), 1, std::nullopt, votes[j]});
                    }
                    break;
                }
                if (trace != nullptr) {
                    trace->push_back(TraceEvent{i, j, path, depth, subset.size(), 1, best->condition, 0});
                }

                const bool valid = best->condition.holds(test, test_rows[j]);
                next.clear();
                for (const RowIndex r : subset) {
                    if (best->condition.holds(train, r) == valid) {
                        next.push_back(r);
                    }
                }
                stack.charge_frame(next.size(), 0);
                stack.release_frame(held.size(), 0);
                held.swap(next);
                subset = held;
                if (trace != nullptr) {
                    path = child_node(path, valid);
                }
            }
            stack.release_frame(held.size(), 0);
        }
        result.probabilities.add_votes(votes, weight);
        result.nodes_per_bootstrap.push_back(result.metrics.nodes_explored - before);
    }
    result.metrics.peak_stack_words = stack.peak_words();
    result.metrics.cpu_seconds = timer.elapsed_seconds();
    result.metrics.cpu_time_is_wall_clock = timer.uses_wall_clock();
    return result;
}

}  // namespace treelab

#include "treelab/batched_lazy.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace treelab {

namespace {

class BatchedRun {
public:
    BatchedRun(const Dataset& train, const Dataset& test, std::span<const RowIndex> test_rows,
               const SplitParams& params, RunMetrics& metrics, StackMeter& stack, std::vector<ClassIndex>& votes,
               TraceLog* trace, std::size_t bootstrap)
        : train_(train),
          test_(test),
          test_rows_(test_rows),
          params_(params),
          metrics_(metrics),
          stack_(stack),
          votes_(votes),
          trace_(trace),
          bootstrap_(bootstrap) {}

    // train_slice: training rows reaching this node; test_slice: positions
    // into test_rows of the test observations reaching it.
    void run(std::span<const RowIndex> train_slice, std::span<const std::size_t> test_slice, std::size_t depth,
             std::string& path) {
        FrameCharge frame(stack_, train_slice.size(), test_slice.size());
        ++metrics_.nodes_explored;

        const LabelHistogram hist = LabelHistogram::of(train_, train_slice);
        std::optional<ScoredCondition> best;
        if (depth <= params_.max_depth && train_slice.size() >= params_.min_count && !is_pure(hist)) {
            best = best_condition(train_, train_slice);
        }
        if (!best) {
            const ClassIndex label = majority_class(hist);
            for (const std::size_t j : test_slice) {
                votes_[j] = label;
            }
            record(path, depth, train_slice.size(), test_slice.size(), std::nullopt, label);
            return;
        }
        record(path, depth, train_slice.size(), test_slice.size(), best->condition, 0);

        const Condition& cond = best->condition;
        std::vector<std::size_t> invalid_tests;
        std::vector<std::size_t> valid_tests;
        for (const std::size_t j : test_slice) {
            (cond.holds(test_, test_rows_[j]) ? valid_tests : invalid_tests).push_back(j);
        }
        if (!invalid_tests.empty()) {
            descend(cond, false, train_slice, invalid_tests, depth, path);
        }
        if (!valid_tests.empty()) {
            descend(cond, true, train_slice, valid_tests, depth, path);
        }
    }

private:
    void descend(const Condition& cond, bool valid, std::span<const RowIndex> train_slice,
                 std::span<const std::size_t> test_slice, std::size_t depth, std::string& path) {
        std::vector<RowIndex> child_rows;
        for (const RowIndex r : train_slice) {
            if (cond.holds(train_, r) == valid) {
                child_rows.push_back(r);
            }
        }
        if (trace_ != nullptr) {
            path.push_back(valid ? '1' : '0');
        }
        run(child_rows, test_slice, depth + 1, path);
        if (trace_ != nullptr) {
            path.pop_back();
        }
    }

    void record(const std::string& path, std::size_t depth, std::size_t train_count, std::size_t test_count,
                std::optional<Condition> split, ClassIndex leaf_class) {
        if (trace_ != nullptr) {
            trace_->push_back(TraceEvent{bootstrap_, std::nullopt, path, depth, train_count, test_count, split,
                                         leaf_class});
        }
    }

    const Dataset& train_;
    const Dataset& test_;
    std::span<const RowIndex> test_rows_;
    const SplitParams& params_;
    RunMetrics& metrics_;
    StackMeter& stack_;
    std::vector<ClassIndex>& votes_;
    TraceLog* trace_;
    std::size_t bootstrap_;
};

}  // namespace

FitPredictResult fit_predict_batched(const Dataset& train, std::span<const RowIndex> train_rows,
                                     const Dataset& test, std::span<const RowIndex> test_rows,
                                     const BaggingParams& params, TraceLog* trace) {
    params.validate();
    if (test_rows.empty()) {
        throw std::invalid_argument("no test rows");
    }
    CpuTimer timer;
    FitPredictResult result;
    result.metrics.algorithm = Algorithm::Batched;
    result.probabilities = PredictionMatrix(test_rows.size(), train.class_count());
    const double weight = 1.0 / static_cast<double>(params.bootstraps);

    StackMeter stack;
    std::vector<ClassIndex> votes(test_rows.size());
    std::vector<std::size_t> all_tests(test_rows.size());
    for (std::size_t j = 0; j < all_tests.size(); ++j) {
        all_tests[j] = j;
    }
    std::string path;
    for (std::size_t i = 0; i < params.bootstraps; ++i) {
        const std::vector<RowIndex> sample = bootstrap(train_rows, params.bootstrap_seed(i));
        const std::uint64_t before = result.metrics.nodes_explored;
        path = kRootNode;
        BatchedRun(train, test, test_rows, params.split, result.metrics, stack, votes, trace, i)
            .run(sample, all_tests, 0, path);
        result.probabilities.add_votes(votes, weight);
        result.nodes_per_bootstrap.push_back(result.metrics.nodes_explored - before);
    }
    result.metrics.peak_stack_words = stack.peak_words();
    result.metrics.cpu_seconds = timer.elapsed_seconds();
    result.metrics.cpu_time_is_wall_clock = timer.uses_wall_clock();
    return result;
}

}  // namespace treelab

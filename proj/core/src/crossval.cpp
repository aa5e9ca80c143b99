#include "treelab/crossval.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "treelab/rng.hpp"

namespace treelab {

namespace {

struct FoldRun {
    FoldOutcome outcome;
    std::vector<RowIndex> test_rows;
    PredictionMatrix probabilities;
};

FoldRun run_fold(const Dataset& data, Algorithm algorithm, const FoldPlan& plan, const BaggingParams& params,
                 std::size_t fold) {
    FoldRun run;
    run.test_rows = plan.test_rows(fold);
    const std::vector<RowIndex> train_rows = plan.train_rows(fold);
    BaggingParams fold_params = params;
    fold_params.base_seed = derive_seed(params.base_seed, fold);
    FitPredictResult result = fit_predict(algorithm, data, train_rows, data, run.test_rows, fold_params);
    run.outcome = FoldOutcome{fold, run.test_rows.size(), result.metrics, std::move(result.nodes_per_bootstrap)};
    run.probabilities = std::move(result.probabilities);
    return run;
}

}  // namespace

CrossValidationResult run_cross_validation(const Dataset& data, Algorithm algorithm, const FoldPlan& plan,
                                           const BaggingParams& params, std::size_t jobs) {
    if (!data.has_labels()) {
        throw std::invalid_argument("cross-validation needs a labeled dataset");
    }
    if (plan.assignment.size() != data.row_count()) {
        throw std::invalid_argument("fold plan does not match the dataset");
    }
    params.validate();

    std::vector<FoldRun> runs(plan.k);
    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, plan.k);
    if (workers == 1) {
        for (std::size_t f = 0; f < plan.k; ++f) {
            runs[f] = run_fold(data, algorithm, plan, params, f);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t f = next++; f < plan.k; f = next++) {
                        runs[f] = run_fold(data, algorithm, plan, params, f);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        for (const auto& error : errors) {
            if (error) {
                std::rethrow_exception(error);
            }
        }
    }

    CrossValidationResult result;
    result.algorithm = algorithm;
    result.k = plan.k;
    result.totals.algorithm = algorithm;
    result.out_of_fold = PredictionMatrix(data.row_count(), data.class_count());
    for (auto& run : runs) {
        result.totals.merge(run.outcome.metrics);
        for (std::size_t j = 0; j < run.test_rows.size(); ++j) {
            const RowIndex row = run.test_rows[j];
            for (std::size_t f = 0; f < data.class_count(); ++f) {
                result.out_of_fold(row, f) = run.probabilities(j, f);
            }
            if (run.probabilities.argmax(j) == data.label(row)) {
                ++result.correct;
            }
        }
        result.folds.push_back(std::move(run.outcome));
    }
    return result;
}

}  // namespace treelab

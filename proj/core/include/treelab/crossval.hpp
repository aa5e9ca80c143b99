#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "treelab/algorithms.hpp"
#include "treelab/dataset.hpp"

namespace treelab {

struct FoldOutcome {
    std::size_t fold = 0;
    std::size_t test_count = 0;
    RunMetrics metrics;
    std::vector<std::uint64_t> nodes_per_bootstrap;
};

struct CrossValidationResult {
    Algorithm algorithm = Algorithm::Eager;
    std::size_t k = 0;
    RunMetrics totals;  // merge of every fold
    std::vector<FoldOutcome> folds;
    PredictionMatrix out_of_fold;  // one row per dataset row, filled by the fold that tested it
    std::size_t correct = 0;

    double accuracy() const noexcept {
        return out_of_fold.rows() == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(out_of_fold.rows());
    }
};

/// Runs k-fold cross-validation. Fold f bags with base seed
/// derive_seed(params.base_seed, f), so every algorithm sees the same samples.
/// Folds run on up to `jobs` threads; results are merged in fold order.
CrossValidationResult run_cross_validation(const Dataset& data, Algorithm algorithm, const FoldPlan& plan,
                                           const BaggingParams& params, std::size_t jobs = 1);

}  // namespace treelab

#pragma once

#include <span>

#include "treelab/dataset.hpp"
#include "treelab/prediction.hpp"
#include "treelab/trace.hpp"

namespace treelab {

/// Bagged batched lazy decision tree.
///
/// Training and test rows are co-partitioned depth-first from the root, so
/// every node needed by at least one test row is explored exactly once and a
/// child whose test subset is empty is never explored. The invalid child is
/// visited before the valid one; test rows keep their original positions in
/// the output matrix. Stack words: each live call holds its training and test
/// slices.
FitPredictResult fit_predict_batched(const Dataset& train, std::span<const RowIndex> train_rows,
                                     const Dataset& test, std::span<const RowIndex> test_rows,
                                     const BaggingParams& params, TraceLog* trace = nullptr);

}  // namespace treelab

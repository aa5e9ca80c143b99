#pragma once

#include <span>

#include "treelab/dataset.hpp"
#include "treelab/prediction.hpp"
#include "treelab/trace.hpp"

namespace treelab {

/// Bagged lazy decision tree: for every bootstrap round and every test row,
/// grows only the root-to-leaf path that row follows, recomputing each split
/// from scratch.
///
/// One node is explored per split decision plus one per terminal leaf. Stack
/// words: the bootstrap sample for the round, plus the current and next
/// working subsets while a step narrows the subset.
FitPredictResult fit_predict_lazy(const Dataset& train, std::span<const RowIndex> train_rows,
                                  const Dataset& test, std::span<const RowIndex> test_rows,
                                  const BaggingParams& params, TraceLog* trace = nullptr);

}  // namespace treelab

#pragma once

#include <span>

#include "treelab/batched_lazy.hpp"
#include "treelab/eager_tree.hpp"
#include "treelab/lazy_paths.hpp"

namespace treelab {

FitPredictResult fit_predict(Algorithm algorithm, const Dataset& train, std::span<const RowIndex> train_rows,
                             const Dataset& test, std::span<const RowIndex> test_rows, const BaggingParams& params,
                             TraceLog* trace = nullptr);

}  // namespace treelab

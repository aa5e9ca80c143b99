#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "treelab/dataset.hpp"
#include "treelab/metrics.hpp"
#include "treelab/splitcore.hpp"

namespace treelab {

/// Row-major n_test x h matrix of accumulated class probabilities.
class PredictionMatrix {
public:
    PredictionMatrix() = default;
    PredictionMatrix(std::size_t rows, std::size_t classes) : rows_(rows), classes_(classes), values_(rows * classes, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t classes() const noexcept { return classes_; }

    double operator()(std::size_t row, std::size_t cls) const noexcept { return values_[row * classes_ + cls]; }
    double& operator()(std::size_t row, std::size_t cls) noexcept { return values_[row * classes_ + cls]; }
    std::span<const double> row(std::size_t row) const noexcept { return {&values_[row * classes_], classes_}; }
    std::span<const double> values() const noexcept { return values_; }

    /// Highest-probability class of a row; ties go to the lowest index.
    ClassIndex argmax(std::size_t row) const noexcept;

    /// Adds `weight` to (j, votes[j]) for every row j.
    void add_votes(std::span<const ClassIndex> votes, double weight);

    /// Exact element-wise equality.
    friend bool operator==(const PredictionMatrix&, const PredictionMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t classes_ = 0;
    std::vector<double> values_;
};

struct BaggingParams {
    std::size_t bootstraps = 100;
    SplitParams split;
    std::uint64_t base_seed = 0;

    void validate() const;
    /// Seed of the bootstrap sample drawn in round `index`.
    std::uint64_t bootstrap_seed(std::size_t index) const;
};

struct FitPredictResult {
    PredictionMatrix probabilities;
    RunMetrics metrics;
    std::vector<std::uint64_t> nodes_per_bootstrap;
};

}  // namespace treelab

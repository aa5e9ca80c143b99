#include "treelab/algorithms.hpp"

#include <stdexcept>

#include "treelab/rng.hpp"

namespace treelab {

ClassIndex PredictionMatrix::argmax(std::size_t row) const noexcept {
    const auto values = this->row(row);
    ClassIndex best = 0;
    for (std::size_t f = 1; f < values.size(); ++f) {
        if (values[f] > values[best]) {
            best = static_cast<ClassIndex>(f);
        }
    }
    return best;
}

void PredictionMatrix::add_votes(std::span<const ClassIndex> votes, double weight) {
    if (votes.size() != rows_) {
        throw std::invalid_argument("vote count does not match prediction rows");
    }
    for (std::size_t j = 0; j < rows_; ++j) {
        values_[j * classes_ + votes[j]] += weight;
    }
}

void BaggingParams::validate() const {
    if (bootstraps < 1) {
        throw std::invalid_argument("at least one bootstrap is required");
    }
    split.validate();
}

std::uint64_t BaggingParams::bootstrap_seed(std::size_t index) const { return derive_seed(base_seed, index); }

FitPredictResult fit_predict(Algorithm algorithm, const Dataset& train, std::span<const RowIndex> train_rows,
                             const Dataset& test, std::span<const RowIndex> test_rows, const BaggingParams& params,
                             TraceLog* trace) {
    switch (algorithm) {
        case Algorithm::Eager: return fit_predict_eager(train, train_rows, test, test_rows, params, trace);
        case Algorithm::Lazy: return fit_predict_lazy(train, train_rows, test, test_rows, params, trace);
        case Algorithm::Batched: return fit_predict_batched(train, train_rows, test, test_rows, params, trace);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace treelab

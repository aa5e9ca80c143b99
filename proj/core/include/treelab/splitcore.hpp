#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "treelab/dataset.hpp"

namespace treelab {

/// Per-class row counts of a (multi)set of training rows.
class LabelHistogram {
public:
    explicit LabelHistogram(std::size_t class_count) : counts_(class_count, 0) {}
    LabelHistogram(std::initializer_list<std::uint64_t> counts);

    /// Histogram of `rows` (duplicates counted) over data's labels.
    static LabelHistogram of(const Dataset& data, std::span<const RowIndex> rows);

    void add(ClassIndex label, std::uint64_t count = 1) {
        counts_.at(label) += count;
        total_ += count;
    }

    std::size_t class_count() const noexcept { return counts_.size(); }
    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t count(ClassIndex label) const { return counts_.at(label); }
    std::span<const std::uint64_t> counts() const noexcept { return counts_; }

    LabelHistogram& operator+=(const LabelHistogram& other);
    friend LabelHistogram operator+(LabelHistogram lhs, const LabelHistogram& rhs) { return lhs += rhs; }
    friend bool operator==(const LabelHistogram&, const LabelHistogram&) = default;

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Shannon entropy in bits. Throws std::invalid_argument on an empty histogram.
double entropy(const LabelHistogram& hist);

/// entropy(parent) minus the size-weighted entropies of the two sides.
/// The sides must be non-empty and sum to parent.
double information_gain(const LabelHistogram& parent, const LabelHistogram& invalid_side,
                        const LabelHistogram& valid_side);

/// Most frequent class; ties go to the lowest index.
ClassIndex majority_class(const LabelHistogram& hist);

bool is_pure(const LabelHistogram& hist);

enum class ConditionKind { NumericLE, CategoricalEQ };

/// Binary test on one attribute. Rows for which it holds are "valid".
struct Condition {
    std::size_t attribute = 0;
    ConditionKind kind = ConditionKind::NumericLE;
    double value = 0.0;  // threshold, or category code

    bool holds(double cell) const noexcept {
        return kind == ConditionKind::NumericLE ? cell <= value : cell == value;
    }
    bool holds(const Dataset& data, RowIndex row) const noexcept {
        return holds(data.value(row, attribute));
    }

    static Condition numeric_le(std::size_t attribute, double threshold) {
        return {attribute, ConditionKind::NumericLE, threshold};
    }
    static Condition categorical_eq(std::size_t attribute, std::uint32_t code) {
        return {attribute, ConditionKind::CategoricalEQ, static_cast<double>(code)};
    }

    friend bool operator==(const Condition&, const Condition&) = default;
};

/// Stopping parameters shared by all three algorithms.
struct SplitParams {
    std::size_t min_count = 5;   // nodes with fewer training rows become leaves
    std::size_t max_depth = 20;  // root is depth 0; a node at depth > max_depth is a leaf

    void validate() const;
};

struct ScoredCondition {
    Condition condition;
    double gain = 0.0;
};

/// Gains within this distance are ties; a best gain at or below it means "no split".
inline constexpr double kGainTolerance = 1e-12;

/// Highest-information-gain condition over `rows`.
///
/// Numeric candidates are midpoints between consecutive distinct values
/// present in rows; categorical candidates are one equality test per present
/// code. Only candidates leaving both sides non-empty are considered. Ties are
/// broken by lowest attribute, then lowest threshold or code. Returns nullopt
/// when no candidate exists or the best gain is not positive.
std::optional<ScoredCondition> best_condition(const Dataset& data, std::span<const RowIndex> rows);

struct Partition {
    std::vector<RowIndex> invalid;
    std::vector<RowIndex> valid;
};

/// Stable split of rows by cond.
Partition partition(const Condition& cond, const Dataset& data, std::span<const RowIndex> rows);

}  // namespace treelab

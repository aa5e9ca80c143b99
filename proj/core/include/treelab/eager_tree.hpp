#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "treelab/dataset.hpp"
#include "treelab/metrics.hpp"
#include "treelab/prediction.hpp"
#include "treelab/splitcore.hpp"
#include "treelab/trace.hpp"

namespace treelab {

struct TreeNode {
    bool is_leaf = true;
    ClassIndex label = 0;  // leaves
    Condition condition;   // internal nodes
    std::uint32_t invalid_child = 0;
    std::uint32_t valid_child = 0;

    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Binary decision tree stored in preorder; node 0 is the root.
class DecisionTree {
public:
    DecisionTree() = default;
    explicit DecisionTree(std::vector<TreeNode> nodes);

    const TreeNode& root() const { return nodes_.at(0); }
    const TreeNode& node(std::size_t index) const { return nodes_.at(index); }
    std::span<const TreeNode> nodes() const noexcept { return nodes_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    /// Longest root-to-leaf path in edges.
    std::size_t depth() const;

    friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

private:
    std::vector<TreeNode> nodes_;
};

struct BaggedModel {
    std::vector<DecisionTree> trees;
    std::size_t class_count = 0;
};

/// Recursively grows a full tree over `rows` (a bootstrap sample).
///
/// A node becomes a leaf labeled with its majority class when its depth
/// exceeds max_depth, it holds fewer than min_count rows, it is pure, or no
/// split has positive gain. Otherwise the invalid child is built before the
/// valid one. Each call counts one explored node. Stack words: the input rows
/// for the whole build, plus both children's rows while an internal node's
/// subtrees are pending.
DecisionTree build_tree(const Dataset& data, std::span<const RowIndex> rows, const SplitParams& params,
                        RunMetrics& metrics, StackMeter& stack, TraceLog* trace = nullptr,
                        std::size_t bootstrap = 0);

ClassIndex predict_row(const DecisionTree& tree, const Dataset& data, RowIndex row);

/// kWordsPerNode words per node over all trees.
std::uint64_t model_word_count(const BaggedModel& model);

/// Builds one tree per bootstrap round.
BaggedModel fit_eager(const Dataset& train, std::span<const RowIndex> train_rows, const BaggingParams& params,
                      RunMetrics& metrics, std::vector<std::uint64_t>* nodes_per_bootstrap = nullptr,
                      TraceLog* trace = nullptr);

PredictionMatrix predict_proba(const BaggedModel& model, const Dataset& test, std::span<const RowIndex> test_rows);

FitPredictResult fit_predict_eager(const Dataset& train, std::span<const RowIndex> train_rows,
                                   const Dataset& test, std::span<const RowIndex> test_rows,
                                   const BaggingParams& params, TraceLog* trace = nullptr);

/// Preorder text dump, one node per line: `L <class>` or `I <attr> le|eq <value>`.
void dump_tree(std::ostream& out, const DecisionTree& tree);
/// Inverse of dump_tree. Throws std::runtime_error on malformed input.
DecisionTree parse_tree(std::istream& in);

}  // namespace treelab

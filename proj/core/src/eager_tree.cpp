#include "treelab/eager_tree.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "treelab/format.hpp"

namespace treelab {

namespace {

class TreeBuilder {
public:
    TreeBuilder(const Dataset& data, const SplitParams& params, RunMetrics& metrics, StackMeter& stack,
                TraceLog* trace, std::size_t bootstrap)
        : data_(data), params_(params), metrics_(metrics), stack_(stack), trace_(trace), bootstrap_(bootstrap) {}

    DecisionTree build(std::span<const RowIndex> rows) {
        FrameCharge sample(stack_, rows.size(), 0);
        std::string path = kRootNode;
        grow(rows, 0, path);
        return DecisionTree(std::move(nodes_));
    }

private:
    std::uint32_t grow(std::span<const RowIndex> rows, std::size_t depth, std::string& path) {
        ++metrics_.nodes_explored;
        const auto index = static_cast<std::uint32_t>(nodes_.size());
        nodes_.emplace_back();

        const LabelHistogram hist = LabelHistogram::of(data_, rows);
        std::optional<ScoredCondition> best;
        if (depth <= params_.max_depth && rows.size() >= params_.min_count && !is_pure(hist)) {
            best = best_condition(data_, rows);
        }
        if (!best) {
            nodes_[index].label = majority_class(hist);
            record(path, depth, rows.size(), std::nullopt, nodes_[index].label);
            return index;
        }
        record(path, depth, rows.size(), best->condition, 0);

        Partition sides = partition(best->condition, data_, rows);
        FrameCharge children(stack_, sides.invalid.size() + sides.valid.size(), 0);
        path.push_back('0');
        const std::uint32_t invalid_child = grow(sides.invalid, depth + 1, path);
        path.back() = '1';
        const std::uint32_t valid_child = grow(sides.valid, depth + 1, path);
        path.pop_back();

        TreeNode& node = nodes_[index];
        node.is_leaf = false;
        node.condition = best->condition;
        node.invalid_child = invalid_child;
        node.valid_child = valid_child;
        return index;
    }

    void record(const std::string& path, std::size_t depth, std::size_t train_count,
                std::optional<Condition> split, ClassIndex leaf_class) {
        if (trace_ != nullptr) {
            trace_->push_back(TraceEvent{bootstrap_, std::nullopt, path, depth, train_count, 0, split, leaf_class});
        }
    }

    const Dataset& data_;
    const SplitParams& params_;
    RunMetrics& metrics_;
    StackMeter& stack_;
    TraceLog* trace_;
    std::size_t bootstrap_;
    std::vector<TreeNode> nodes_;
};

std::size_t subtree_depth(const DecisionTree& tree, std::size_t index) {
    const TreeNode& node = tree.node(index);
    if (node.is_leaf) {
        return 0;
    }
    return 1 + std::max(subtree_depth(tree, node.invalid_child), subtree_depth(tree, node.valid_child));
}

}  // namespace

DecisionTree::DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) {
        throw std::invalid_argument("a decision tree needs at least one node");
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const TreeNode& node = nodes_[i];
        if (!node.is_leaf && (node.invalid_child <= i || node.valid_child <= i ||
                              node.invalid_child >= nodes_.size() || node.valid_child >= nodes_.size())) {
            throw std::invalid_argument("decision tree child index out of preorder range");
        }
    }
}

std::size_t DecisionTree::depth() const { return subtree_depth(*this, 0); }

DecisionTree build_tree(const Dataset& data, std::span<const RowIndex> rows, const SplitParams& params,
                        RunMetrics& metrics, StackMeter& stack, TraceLog* trace, std::size_t bootstrap) {
    if (rows.empty()) {
        throw std::invalid_argument("build_tree on an empty row set");
    }
    params.validate();
    return TreeBuilder(data, params, metrics, stack, trace, bootstrap).build(rows);
}

ClassIndex predict_row(const DecisionTree& tree, const Dataset& data, RowIndex row) {
    const TreeNode* node = &tree.root();
    while (!node->is_leaf) {
        node = &tree.node(node->condition.holds(data, row) ? node->valid_child : node->invalid_child);
    }
    return node->label;
}

std::uint64_t model_word_count(const BaggedModel& model) {
    std::uint64_t nodes = 0;
    for (const auto& tree : model.trees) {
        nodes += tree.node_count();
    }
    return nodes * kWordsPerNode;
}

BaggedModel fit_eager(const Dataset& train, std::span<const RowIndex> train_rows, const BaggingParams& params,
                      RunMetrics& metrics, std::vector<std::uint64_t>* nodes_per_bootstrap, TraceLog* trace) {
    params.validate();
    BaggedModel model;
    model.class_count = train.class_count();
    model.trees.reserve(params.bootstraps);
    StackMeter stack;
    for (std::size_t i = 0; i < params.bootstraps; ++i) {
        const std::vector<RowIndex> sample = bootstrap(train_rows, params.bootstrap_seed(i));
        const std::uint64_t before = metrics.nodes_explored;
        model.trees.push_back(build_tree(train, sample, params.split, metrics, stack, trace, i));
        if (nodes_per_bootstrap != nullptr) {
            nodes_per_bootstrap->push_back(metrics.nodes_explored - before);
        }
    }
    metrics.peak_stack_words = std::max(metrics.peak_stack_words, stack.peak_words());
    return model;
}

PredictionMatrix predict_proba(const BaggedModel& model, const Dataset& test, std::span<const RowIndex> test_rows) {
    PredictionMatrix probabilities(test_rows.size(), model.class_count);
    const double weight = 1.0 / static_cast<double>(model.trees.size());
    std::vector<ClassIndex> votes(test_rows.size());
    for (const auto& tree : model.trees) {
        for (std::size_t j = 0; j < test_rows.size(); ++j) {
            votes[j] = predict_row(tree, test, test_rows[j]);
        }
        probabilities.add_votes(votes, weight);
    }
    return probabilities;
}

FitPredictResult fit_predict_eager(const Dataset& train, std::span<const RowIndex> train_rows,
                                   const Dataset& test, std::span<const RowIndex> test_rows,
                                   const BaggingParams& params, TraceLog* trace) {
    if (test_rows.empty()) {
        throw std::invalid_argument("no test rows");
    }
    CpuTimer timer;
    FitPredictResult result;
    result.metrics.algorithm = Algorithm::Eager;
    const BaggedModel model = fit_eager(train, train_rows, params, result.metrics, &result.nodes_per_bootstrap, trace);
    result.metrics.model_words = model_word_count(model);
    result.probabilities = predict_proba(model, test, test_rows);
    result.metrics.cpu_seconds = timer.elapsed_seconds();
    result.metrics.cpu_time_is_wall_clock = timer.uses_wall_clock();
    return result;
}

void dump_tree(std::ostream& out, const DecisionTree& tree) {
    for (const TreeNode& node : tree.nodes()) {
        if (node.is_leaf) {
            out << "L " << node.label << '\n';
        } else {
            out << "I " << node.condition.attribute << ' '
                << (node.condition.kind == ConditionKind::NumericLE ? "le" : "eq") << ' '
                << format_number(node.condition.value) << '\n';
        }
    }
}

namespace {

struct TreeParser {
    std::istream& in;
    std::vector<TreeNode> nodes;
    std::size_t line_number = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error("tree dump line " + std::to_string(line_number) + ": " + what);
    }

    std::uint32_t parse_node() {
        std::string line;
        do {
            if (!std::getline(in, line)) {
                fail("unexpected end of input");
            }
            ++line_number;
        } while (line.empty());
        std::istringstream fields(line);
        std::string tag;
        fields >> tag;
        const auto index = static_cast<std::uint32_t>(nodes.size());
        nodes.emplace_back();
        if (tag == "L") {
            ClassIndex label = 0;
            if (!(fields >> label)) {
                fail("bad leaf");
            }
            nodes[index].label = label;
            return index;
        }
        if (tag != "I") {
            fail("unknown node tag '" + tag + "'");
        }
        std::size_t attribute = 0;
        std::string op;
        std::string value;
        if (!(fields >> attribute >> op >> value) || (op != "le" && op != "eq")) {
            fail("bad internal node");
        }
        Condition cond{attribute, op == "le" ? ConditionKind::NumericLE : ConditionKind::CategoricalEQ,
                       std::stod(value)};
        const std::uint32_t invalid_child = parse_node();
        const std::uint32_t valid_child = parse_node();
        nodes[index] = TreeNode{false, 0, cond, invalid_child, valid_child};
        return index;
    }
};

}  // namespace

DecisionTree parse_tree(std::istream& in) {
    TreeParser parser{in, {}};
    parser.parse_node();
    return DecisionTree(std::move(parser.nodes));
}

}  // namespace treelab

#pragma once

// Reference computations that deliberately avoid the library's split search,
// partitioning and accounting code paths.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "treelab/dataset.hpp"
#include "treelab/eager_tree.hpp"
#include "treelab/splitcore.hpp"

namespace treelab::testing {

inline double oracle_entropy(const std::map<ClassIndex, std::size_t>& counts) {
    std::size_t n = 0;
    for (const auto& [label, c] : counts) {
        n += c;
    }
    // H = log2(n) - (1/n) * sum c log2 c
    double sum = 0.0;
    for (const auto& [label, c] : counts) {
        sum += static_cast<double>(c) * std::log2(static_cast<double>(c));
    }
    return std::log2(static_cast<double>(n)) - sum / static_cast<double>(n);
}

struct OracleCandidate {
    Condition condition;
    double gain = 0.0;
};

/// Every candidate split over `rows`, in tie-break order, with gains computed
/// from raw counts.
inline std::vector<OracleCandidate> enumerate_candidates(const Dataset& data, std::span<const RowIndex> rows) {
    std::map<ClassIndex, std::size_t> parent;
    for (const RowIndex r : rows) {
        ++parent[data.label(r)];
    }
    const double parent_h = oracle_entropy(parent);
    const double n = static_cast<double>(rows.size());

    std::vector<OracleCandidate> out;
    auto score = [&](const Condition& cond) {
        std::map<ClassIndex, std::size_t> valid;
        std::map<ClassIndex, std::size_t> invalid;
        std::size_t nv = 0;
        for (const RowIndex r : rows) {
            const double x = data.value(r, cond.attribute);
            const bool holds = cond.kind == ConditionKind::NumericLE ? x <= cond.value : x == cond.value;
            if (holds) {
                ++valid[data.label(r)];
                ++nv;
            } else {
                ++invalid[data.label(r)];
            }
        }
        if (nv == 0 || nv == rows.size()) {
            return;
        }
        const double ni = n - static_cast<double>(nv);
        const double gain = parent_h - (static_cast<double>(nv) / n) * oracle_entropy(valid) -
                            (ni / n) * oracle_entropy(invalid);
        out.push_back({cond, gain});
    };

    for (std::size_t a = 0; a < data.attribute_count(); ++a) {
        std::set<double> present;
        for (const RowIndex r : rows) {
            present.insert(data.value(r, a));
        }
        if (data.attribute(a).kind == AttributeKind::Numeric) {
            for (auto it = present.begin(); std::next(it) != present.end() && it != present.end(); ++it) {
                const double lo = *it;
                const double hi = *std::next(it);
                double thr = (lo + hi) / 2.0;
                if (!(thr < hi)) {
                    thr = lo;
                }
                score(Condition::numeric_le(a, thr));
            }
        } else {
            for (const double code : present) {
                score(Condition{a, ConditionKind::CategoricalEQ, code});
            }
        }
    }
    return out;
}

/// Brute-force best condition: first candidate (in tie-break order) whose gain
/// is within kGainTolerance of the maximum.
inline std::optional<OracleCandidate> oracle_best_condition(const Dataset& data, std::span<const RowIndex> rows) {
    const auto candidates = enumerate_candidates(data, rows);
    if (candidates.empty()) {
        return std::nullopt;
    }
    double best = -1.0;
    for (const auto& c : candidates) {
        best = std::max(best, c.gain);
    }
    if (best <= kGainTolerance) {
        return std::nullopt;
    }
    for (const auto& c : candidates) {
        if (c.gain >= best - kGainTolerance) {
            return c;
        }
    }
    return std::nullopt;
}

/// Node ids ("r", "r0", "r01", ...) along the path a row takes through tree.
inline std::vector<std::string> eager_path(const DecisionTree& tree, const Dataset& data, RowIndex row) {
    std::vector<std::string> path{"r"};
    std::size_t index = 0;
    while (!tree.node(index).is_leaf) {
        const TreeNode& node = tree.node(index);
        const double x = data.value(row, node.condition.attribute);
        const bool valid = node.condition.kind == ConditionKind::NumericLE ? x <= node.condition.value
                                                                           : x == node.condition.value;
        path.push_back(path.back() + (valid ? '1' : '0'));
        index = valid ? node.valid_child : node.invalid_child;
    }
    return path;
}

/// Eager stack-word peak replayed from the finished tree: the bootstrap is
/// live throughout, and every internal node on the current root path keeps
/// both child subsets (together its own size) alive.
inline std::uint64_t replay_eager_peak(const DecisionTree& tree, const Dataset& data,
                                       std::span<const RowIndex> sample) {
    std::uint64_t peak = sample.size();
    struct Frame {
        std::size_t node;
        std::vector<RowIndex> rows;
        std::uint64_t live_above;  // words live on entry
    };
    std::vector<Frame> pending{{0, {sample.begin(), sample.end()}, sample.size()}};
    while (!pending.empty()) {
        Frame frame = std::move(pending.back());
        pending.pop_back();
        const TreeNode& node = tree.node(frame.node);
        if (node.is_leaf) {
            continue;
        }
        const std::uint64_t live = frame.live_above + frame.rows.size();
        peak = std::max(peak, live);
        std::vector<RowIndex> invalid;
        std::vector<RowIndex> valid;
        for (const RowIndex r : frame.rows) {
            const double x = data.value(r, node.condition.attribute);
            const bool holds = node.condition.kind == ConditionKind::NumericLE ? x <= node.condition.value
                                                                               : x == node.condition.value;
            (holds ? valid : invalid).push_back(r);
        }
        pending.push_back({node.valid_child, std::move(valid), live});
        pending.push_back({node.invalid_child, std::move(invalid), live});
    }
    return peak;
}

}  // namespace treelab::testing

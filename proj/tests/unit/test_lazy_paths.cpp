#include "doctest.h"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "treelab/eager_tree.hpp"
#include "treelab/lazy_paths.hpp"

using namespace treelab;
using namespace treelab::testing;

TEST_CASE("single test row follows the eager path of the same bootstrap") {
    SplitMix64 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
        SyntheticShape shape;
        shape.rows = 4 + gen.bounded(40);
        shape.classes = 2 + gen.bounded(2);
        const Dataset data = make_synthetic(shape, gen());
        const auto rows = all_rows(data);
        const RowIndex query = static_cast<RowIndex>(gen.bounded(data.row_count()));
        const std::vector<RowIndex> test{query};
        const BaggingParams params{1, {1 + gen.bounded(4), 20}, gen()};

        TraceLog lazy_trace;
        const auto lazy = fit_predict_lazy(data, rows, data, test, params, &lazy_trace);
        RunMetrics metrics;
        const BaggedModel model = fit_eager(data, rows, params, metrics);
        const auto expected_path = eager_path(model.trees[0], data, query);

        REQUIRE(lazy_trace.size() == expected_path.size());
        for (std::size_t step = 0; step < expected_path.size(); ++step) {
            CHECK(lazy_trace[step].node == expected_path[step]);
            CHECK(lazy_trace[step].depth == step);
        }
        CHECK(lazy.metrics.nodes_explored == expected_path.size());
        CHECK(lazy.probabilities(0, predict_row(model.trees[0], data, query)) == 1.0);
    }
}

TEST_CASE("pure training set explores one node per bootstrap and test row") {
    const Dataset data = numeric_dataset({{1, 2, 3, 4, 5, 6}}, {0, 0, 0, 0, 0, 0});
    const auto rows = all_rows(data);
    const auto result = fit_predict_lazy(data, rows, data, rows, {3, {1, 20}, 5});
    CHECK(result.metrics.nodes_explored == 3 * rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        CHECK(result.probabilities(j, 0) == 1.0);
    }
}

TEST_CASE("four-row toy: two visits per test row on a non-pure bootstrap") {
    const Dataset toy = four_row_toy();
    const auto rows = all_rows(toy);
    const Dataset queries = numeric_dataset({{1.0, 4.0}}, {0, 1});
    const std::vector<RowIndex> test{0, 1};
    const BaggingParams params{20, {1, 20}, 2024};

    const auto lazy = fit_predict_lazy(toy, rows, queries, test, params);
    const auto eager = fit_predict_eager(toy, rows, queries, test, params);
    std::size_t split_rounds = 0;
    for (std::size_t i = 0; i < params.bootstraps; ++i) {
        if (eager.nodes_per_bootstrap[i] == 3) {
            ++split_rounds;
            CHECK(lazy.nodes_per_bootstrap[i] == 4);
        } else {
            CHECK(eager.nodes_per_bootstrap[i] == 1);
            CHECK(lazy.nodes_per_bootstrap[i] == 2);
        }
    }
    CHECK(split_rounds > 0);
    CHECK(lazy.probabilities == eager.probabilities);
    CHECK(lazy.probabilities(0, 0) > 0.5);
    CHECK(lazy.probabilities(1, 1) > 0.5);
}

TEST_CASE("lazy visits per path are bounded by depth and scale with test rows") {
    SyntheticShape shape;
    shape.rows = 200;
    shape.numeric = 4;
    const Dataset data = make_synthetic(shape, 21);
    const FoldPlan plan = make_folds(data.row_count(), 2, 3);
    const auto train = plan.train_rows(0);
    const auto pool = plan.test_rows(0);
    const BaggingParams params{3, {2, 4}, 17};

    std::vector<double> sizes;
    std::vector<double> visits;
    std::uint64_t previous = 0;
    for (std::size_t count = 10; count <= pool.size(); count += 10) {
        const std::vector<RowIndex> test(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
        TraceLog trace;
        const auto result = fit_predict_lazy(data, train, data, test, params, &trace);
        for (const auto& event : trace) {
            CHECK(event.depth <= params.split.max_depth + 1);
        }
        CHECK(result.metrics.nodes_explored >= previous);
        previous = result.metrics.nodes_explored;
        sizes.push_back(static_cast<double>(count));
        visits.push_back(static_cast<double>(result.metrics.nodes_explored));
    }
    // Least-squares line through the origin; every point within 10% of it.
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        sxy += sizes[i] * visits[i];
        sxx += sizes[i] * sizes[i];
    }
    const double slope = sxy / sxx;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        CHECK(std::abs(visits[i] - slope * sizes[i]) <= 0.1 * slope * sizes[i]);
    }
}

TEST_CASE("lazy rejects empty test sets and zero bootstraps") {
    const Dataset toy = four_row_toy();
    const auto rows = all_rows(toy);
    CHECK_THROWS_AS(fit_predict_lazy(toy, rows, toy, std::vector<RowIndex>{}, {}), std::invalid_argument);
    CHECK_THROWS_AS(fit_predict_lazy(toy, rows, toy, rows, {0, {}, 0}), std::invalid_argument);
}

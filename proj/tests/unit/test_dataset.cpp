#include <cmath>
#include <set>

#include "doctest.h"
#include "support/synthetic.hpp"
#include "support/temp_files.hpp"
#include "treelab/dataset.hpp"
#include "treelab/rng.hpp"

using namespace treelab;
using treelab::testing::TempDir;

TEST_CASE("splitmix64 stream is reproducible and bounded draws stay in range") {
    SplitMix64 a(123);
    SplitMix64 b(123);
    for (int i = 0; i < 100; ++i) {
        CHECK(a() == b());
    }
    SplitMix64 rng(9);
    for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL, (1ULL << 63) + 5}) {
        for (int i = 0; i < 200; ++i) {
            CHECK(rng.bounded(bound) < bound);
        }
    }
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(5, 3) == derive_seed(5, 3));
}

TEST_CASE("splitmix64 matches the published reference stream") {
    // First outputs of SplitMix64 seeded with 0 (reference C implementation).
    SplitMix64 rng(0);
    CHECK(rng() == 0xE220A8397B1DCDAFULL);
    CHECK(rng() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng() == 0x06C45D188009454FULL);
}

TEST_CASE("load_csv infers kinds, codes classes in first-appearance order") {
    TempDir dir;
    const auto path = dir.write("mixed.csv",
                                "age,color,label\n"
                                "1.5,red,yes\n"
                                "2,blue,no\n"
                                "-3e1,red,yes\n"
                                "4,green,maybe\n");
    const Dataset data = load_csv(path);
    CHECK(data.name() == "mixed");
    CHECK(data.row_count() == 4);
    REQUIRE(data.attribute_count() == 2);
    CHECK(data.attribute(0).kind == AttributeKind::Numeric);
    CHECK(data.attribute(1).kind == AttributeKind::Categorical);
    CHECK(data.attribute(1).categories == std::vector<std::string>{"red", "blue", "green"});
    CHECK(data.class_names() == std::vector<std::string>{"yes", "no", "maybe"});
    CHECK(data.value(2, 0) == -30.0);
    CHECK(data.value(3, 1) == 2.0);
    CHECK(data.label(3) == 2);
    // ranks follow sorted distinct values
    CHECK(data.rank(2, 0) == 0);
    CHECK(data.rank(0, 0) == 1);
}

TEST_CASE("minimal one-row file parses; load_csv rejects it for having a single class") {
    TempDir dir;
    const auto path = dir.write("tiny.csv", "a,b\n1,x\n");
    const CsvTable table = read_csv_table(path, {.has_header = true});
    REQUIRE(table.rows.size() == 1);
    CHECK(table.kinds == std::vector<AttributeKind>{AttributeKind::Numeric});
    CHECK(table.rows[0][1] == "x");
    CHECK_THROWS_AS(load_csv(path), DatasetError);

    const CsvTable headless = read_csv_table(path, {.has_header = false});
    CHECK(headless.rows.size() == 2);
    CHECK(headless.kinds == std::vector<AttributeKind>{AttributeKind::Categorical});
}

TEST_CASE("rows with a missing marker are dropped") {
    TempDir dir;
    const auto path = dir.write("missing.csv",
                                "x,y,c\n"
                                "1,2,a\n"
                                "3,?,b\n"
                                "5,6,a\n"
                                "7,8,b\n"
                                "9,10,a\n");
    const Dataset data = load_csv(path);
    CHECK(data.row_count() == 4);
    CHECK(read_csv_table(path).dropped_rows == 1);

    const auto empty_cell = dir.write("empty.csv", "x,c\n1,a\n,b\n2,b\n");
    CHECK(load_csv(empty_cell).row_count() == 2);
}

TEST_CASE("load_csv error paths") {
    TempDir dir;
    CHECK_THROWS_AS(load_csv(dir.path() / "nope.csv"), DatasetError);
    CHECK_THROWS_AS(load_csv(dir.write("allmissing.csv", "x,c\n?,a\n")), DatasetError);
    CHECK_THROWS_AS(load_csv(dir.write("oneclass.csv", "x,c\n1,a\n2,a\n")), DatasetError);
    CHECK_THROWS_AS(load_csv(dir.write("ragged.csv", "x,c\n1,a\n2\n")), DatasetError);
    CHECK_THROWS_AS(load_csv(dir.write("narrow.csv", "c\na\nb\n")), DatasetError);
}

TEST_CASE("quoted fields and infinities") {
    TempDir dir;
    const Dataset data = load_csv(dir.write("quoted.csv",
                                            "name,v,c\n"
                                            "\"a, b\",1,x\n"
                                            "plain,inf,y\n"));
    CHECK(data.attribute(0).categories.front() == "a, b");
    CHECK(data.attribute(1).kind == AttributeKind::Categorical);  // "inf" is not finite
}

TEST_CASE("breast dataset loads with its published shape") {
    const Dataset data = load_csv(TREELAB_DATA_DIR "/breast.csv");
    CHECK(data.row_count() == 569);
    CHECK(data.attribute_count() + 1 == 31);
    CHECK(data.class_count() == 2);
    for (const auto& attribute : data.attributes()) {
        CHECK(attribute.kind == AttributeKind::Numeric);
    }
}

TEST_CASE("load_csv_with_schema maps categories and allows a missing label column") {
    TempDir dir;
    const Dataset train = load_csv(dir.write("train.csv", "x,color,c\n1,red,a\n2,blue,b\n"));
    const Dataset unlabeled = load_csv_with_schema(dir.write("test.csv", "x,color\n5,blue\n6,purple\n"), train);
    CHECK_FALSE(unlabeled.has_labels());
    CHECK(unlabeled.class_count() == 2);
    CHECK(unlabeled.value(0, 1) == 1.0);
    CHECK(unlabeled.value(1, 1) == kUnknownCategory);

    const Dataset labeled = load_csv_with_schema(dir.write("test2.csv", "x,color,c\n5,blue,b\n"), train);
    CHECK(labeled.label(0) == 1);

    CHECK_THROWS_AS(load_csv_with_schema(dir.write("bad1.csv", "x\n1\n"), train), SchemaError);
    CHECK_THROWS_AS(load_csv_with_schema(dir.write("bad2.csv", "x,color\nabc,red\n"), train), SchemaError);
    CHECK_THROWS_AS(load_csv_with_schema(dir.write("bad3.csv", "y,color\n1,red\n"), train), SchemaError);
    CHECK_THROWS_AS(load_csv_with_schema(dir.write("bad4.csv", "x,color,c\n1,red,zzz\n"), train), SchemaError);
}

TEST_CASE("make_folds balances fold sizes") {
    SUBCASE("divisible") {
        const FoldPlan plan = make_folds(6, 3, 99);
        for (std::size_t f = 0; f < 3; ++f) {
            CHECK(plan.fold_size(f) == 2);
        }
    }
    SUBCASE("remainder") {
        const FoldPlan plan = make_folds(7, 3, 42);
        std::multiset<std::size_t> sizes;
        for (std::size_t f = 0; f < 3; ++f) {
            sizes.insert(plan.fold_size(f));
        }
        CHECK(sizes == std::multiset<std::size_t>{2, 2, 3});
    }
    SUBCASE("leave-one-out") {
        const FoldPlan plan = make_folds(569, 569, 1);
        for (std::size_t f = 0; f < 569; ++f) {
            REQUIRE(plan.fold_size(f) == 1);
        }
    }
    CHECK_THROWS_AS(make_folds(5, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_folds(5, 6, 0), std::invalid_argument);
}

TEST_CASE("fold plans are deterministic partitions") {
    SplitMix64 gen(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + gen.bounded(200);
        const std::size_t k = 2 + gen.bounded(n - 1);
        const std::uint64_t seed = gen();
        const FoldPlan plan = make_folds(n, k, seed);
        CHECK(plan.assignment == make_folds(n, k, seed).assignment);
        std::size_t smallest = n;
        std::size_t largest = 0;
        std::size_t covered = 0;
        for (std::size_t f = 0; f < k; ++f) {
            const auto test = plan.test_rows(f);
            const auto train = plan.train_rows(f);
            CHECK(test.size() + train.size() == n);
            smallest = std::min(smallest, test.size());
            largest = std::max(largest, test.size());
            covered += test.size();
        }
        CHECK(covered == n);
        CHECK(largest - smallest <= 1);
    }
}

TEST_CASE("bootstrap draws with replacement deterministically") {
    const std::vector<RowIndex> single{17};
    CHECK(bootstrap(single, 5) == std::vector<RowIndex>{17});

    std::vector<RowIndex> ten(10);
    std::iota(ten.begin(), ten.end(), RowIndex{0});
    CHECK(bootstrap(ten, 7) == bootstrap(ten, 7));
    CHECK(bootstrap(ten, 7).size() == 10);

    const std::vector<RowIndex> sparse{3, 9, 27, 81};
    for (const RowIndex r : bootstrap(sparse, 11)) {
        CHECK(std::find(sparse.begin(), sparse.end(), r) != sparse.end());
    }
    CHECK_THROWS_AS(bootstrap(std::vector<RowIndex>{}, 1), std::invalid_argument);
}

TEST_CASE("bootstrap keeps about 63.2% distinct rows") {
    constexpr std::size_t n = 1000;
    const double expected = 1.0 - std::pow(1.0 - 1.0 / n, static_cast<double>(n));
    CHECK(expected == doctest::Approx(0.6323).epsilon(1e-3));
    std::vector<RowIndex> rows(n);
    std::iota(rows.begin(), rows.end(), RowIndex{0});
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto sample = bootstrap(rows, derive_seed(7, seed));
        const std::set<RowIndex> distinct(sample.begin(), sample.end());
        CHECK(std::abs(static_cast<double>(distinct.size()) / n - expected) <= 0.05);
    }
}

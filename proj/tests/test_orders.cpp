#include <doctest.h>

#include <stdexcept>

#include <set>

#include "qswitch/orders.hpp"

using namespace qswitch;

TEST_SUITE("orders") {

TEST_CASE("label mapping for N = 3 matches the control-state encoding") {
    const std::vector<std::vector<int>> expected = {
        {3, 2, 1}, {2, 3, 1}, {3, 1, 2}, {1, 3, 2}, {2, 1, 3}, {1, 2, 3}};
    for (int k = 1; k <= 6; ++k) {
        const CausalOrder o = order_from_label(k, 3);
        CHECK(o.label == k);
        CHECK(o.sequence == expected[k - 1]);
    }
}

TEST_CASE("label mapping for N = 2: channel 2 first under label 1") {
    CHECK(order_from_label(1, 2).sequence == std::vector<int>{2, 1});
    CHECK(order_from_label(2, 2).sequence == std::vector<int>{1, 2});
}

TEST_CASE("labels out of range are rejected") {
    CHECK_THROWS_AS((void)order_from_label(0, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)order_from_label(7, 3), std::invalid_argument);
}

TEST_CASE("label_from_order inverts order_from_label") {
    for (int n : {2, 3, 4})
        for (int k = 1; k <= factorial(n); ++k)
            CHECK(label_from_order(order_from_label(k, n).sequence) == k);
    CHECK_THROWS_AS(((void)label_from_order({1, 1, 2})), std::invalid_argument);
}

TEST_CASE("enumerate_combinations counts and ordering") {
    CHECK(enumerate_combinations(3, 2).size() == 15);
    CHECK(enumerate_combinations(3, 6).size() == 1);
    CHECK(enumerate_combinations(3, 1).size() == 6);
    CHECK_THROWS_AS((void)enumerate_combinations(3, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)enumerate_combinations(3, 7), std::invalid_argument);

    const auto all2 = enumerate_combinations(3, 2);
    CHECK(all2.front().labels() == std::vector<int>{1, 2});
    CHECK(all2.back().labels() == std::vector<int>{5, 6});
    for (std::size_t i = 1; i < all2.size(); ++i)
        CHECK(all2[i - 1].labels() < all2[i].labels());
    for (const auto& c : all2) {
        CHECK(c.uniform());
        CHECK(c.weights == std::vector<double>{0.5, 0.5});
    }
}

TEST_CASE("classify_pair finds fixed points") {
    const auto p1 = order_from_label(1, 3);  // (3,2,1)
    const auto p2 = order_from_label(2, 3);  // (2,3,1)
    const auto p4 = order_from_label(4, 3);  // (1,3,2)

    const PairClass local = classify_pair(p1, p2);
    CHECK(local.kind == Switching::Local);
    CHECK(local.fixed_points == std::vector<int>{2});  // channel 1 last in both

    const PairClass global = classify_pair(p1, p4);
    CHECK(global.kind == Switching::Global);
    CHECK(global.fixed_points.empty());

    // symmetric in its arguments
    CHECK(classify_pair(p4, p1).kind == Switching::Global);
    CHECK(classify_pair(p2, p1).fixed_points == local.fixed_points);

    CHECK_THROWS_AS((void)classify_pair(p1, p1), std::invalid_argument);
}

TEST_CASE("global pair counts for the worked combinations") {
    const auto count = [](std::vector<int> labels) {
        return global_pair_count(uniform_combination(3, std::move(labels)));
    };
    CHECK(count({3, 1, 2}).global == 1);
    CHECK(count({3, 1, 2}).total == 3);
    CHECK(count({1, 4, 5}).global == 3);
    CHECK(count({1, 4, 5}).total == 3);
    CHECK(count({1, 5, 2, 4}).global == 3);
    CHECK(count({1, 5, 2, 4}).total == 6);
    CHECK_THROWS_AS(((void)global_pair_count(uniform_combination(3, {1}))), std::invalid_argument);
}

TEST_CASE("exactly six global pairs among the fifteen m = 2 combinations") {
    std::set<std::vector<int>> global;
    for (const auto& c : enumerate_combinations(3, 2))
        if (global_pair_count(c).global == 1) global.insert(c.labels());
    const std::set<std::vector<int>> expected = {{1, 4}, {1, 5}, {2, 3}, {2, 6}, {3, 6}, {4, 5}};
    CHECK(global == expected);
}

TEST_CASE("exactly two all-global triples") {
    std::set<std::vector<int>> all_global;
    for (const auto& c : enumerate_combinations(3, 3))
        if (global_pair_count(c).global == 3) all_global.insert(c.labels());
    const std::set<std::vector<int>> expected = {{1, 4, 5}, {2, 3, 6}};
    CHECK(all_global == expected);
}

TEST_CASE("every m = 4 combination has two or three global pairs") {
    int threes = 0;
    for (const auto& c : enumerate_combinations(3, 4)) {
        const int global = global_pair_count(c).global;
        CHECK((global == 2 || global == 3));
        threes += global == 3;
    }
    CHECK(threes == 6);
}

TEST_CASE("predict_class on known combinations") {
    CHECK(predict_class(uniform_combination(3, {1, 4})) == CombinationClass::Max);
    CHECK(predict_class(uniform_combination(3, {1, 2, 3})) == CombinationClass::Min);
    CHECK(predict_class(uniform_combination(3, {2, 3, 6})) == CombinationClass::Max);
    CHECK(predict_class(uniform_combination(3, {1, 5, 2, 4})) == CombinationClass::Max);
    CHECK(predict_class(uniform_combination(3, {1, 2, 3, 4})) == CombinationClass::Min);
    for (int m : {1, 5, 6})
        for (const auto& c : enumerate_combinations(3, m))
            CHECK(predict_class(c) == CombinationClass::Single);

    CHECK_THROWS_AS(((void)predict_class(make_combination(3, {1, 4}, {0.3, 0.7}))),
                    std::invalid_argument);
}

TEST_CASE("combination validation") {
    CHECK_THROWS_AS(((void)make_combination(3, {1, 1}, {0.5, 0.5})), std::invalid_argument);
    CHECK_THROWS_AS(((void)make_combination(3, {1, 2}, {0.6, 0.6})), std::invalid_argument);
    CHECK_THROWS_AS(((void)make_combination(3, {1, 2}, {1.5, -0.5})), std::invalid_argument);
    CHECK_THROWS_AS(((void)make_combination(3, {1, 2}, {1.0})), std::invalid_argument);

    // labels are sorted and weights follow them
    const auto c = make_combination(3, {5, 1}, {0.25, 0.75});
    CHECK(c.labels() == std::vector<int>{1, 5});
    CHECK(c.weights == std::vector<double>{0.75, 0.25});
}

}  // TEST_SUITE

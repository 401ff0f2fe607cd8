#include <doctest.h>

#include "fig/knapsack.hpp"
#include "fig/rng.hpp"
#include "oracles.hpp"

using namespace fig;

namespace {

UmikInstance random_umik(uint64_t seed, int n_max, int m) {
    Rng rng(seed);
    UmikInstance u;
    int n = rng.range(1, n_max);
    Int wsum = 0, psum = 0;
    for (int i = 0; i < n; ++i) {
        Int w = rng.range(1, 5);
        Int p = rng.range(1, 7);
        wsum += w;
        psum += p;
        u.items.push_back({w, p});
    }
    u.capacity = rng.range(1, static_cast<int>(wsum));
    u.goal = rng.range(1, static_cast<int>(psum));
    u.m = m;
    for (int l = 0; l < m; ++l) u.level_budgets.push_back(rng.range(0, 2));
    return u;
}

} // namespace

TEST_SUITE("knapsack") {

TEST_CASE("kp_max_profit basics") {
    CHECK(kp_max_profit({{2, 3}, {2, 4}}, 2) == 4);
    CHECK(kp_max_profit({}, 100) == 0);
    CHECK(kp_max_profit({{1, 1}}, 0) == 0);
}

TEST_CASE("kp_max_profit size guard") {
    std::vector<KnapsackItem> items(26, {1, 1});
    CHECK_THROWS_AS(kp_max_profit(items, 10), SizeLimitError);
}

TEST_CASE("kp_max_profit agrees with the profit-indexed DP") {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        std::vector<KnapsackItem> items;
        int n = rng.range(0, 10);
        for (int i = 0; i < n; ++i)
            items.push_back({Int(rng.range(0, 12)), Int(rng.range(0, 15))});
        Int W = rng.range(0, 30);
        CHECK(kp_max_profit(items, W) == oracles::kp_profit_dp(items, W));
    }
}

TEST_CASE("ubik_decide small cases") {
    UmikInstance u;
    u.items = {{1, 1}};
    u.capacity = 1;
    u.goal = 1;
    u.m = 1;
    u.level_budgets = {0};
    CHECK_FALSE(ubik_decide(u).value);
    u.level_budgets = {1};
    auto d = ubik_decide(u);
    CHECK(d.value);
    CHECK(*d.witness == std::vector<int>{0});
}

TEST_CASE("utik_decide small cases") {
    UmikInstance u;
    u.items = {{1, 1}};
    u.capacity = 1;
    u.goal = 1;
    u.m = 2;
    u.level_budgets = {1, 1}; // B2, B3
    auto d = utik_decide(u);
    CHECK(d.value);
    CHECK(*d.witness == std::vector<int>{0}); // fortify the item
    u.level_budgets = {1, 0};
    CHECK_FALSE(utik_decide(u).value);
}

TEST_CASE("umik matches the specialised deciders") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        auto u1 = random_umik(seed, 5, 1);
        CHECK(umik_decide(u1).value == ubik_decide(u1).value);
        auto u2 = random_umik(seed + 1000, 4, 2);
        CHECK(umik_decide(u2).value == utik_decide(u2).value);
    }
}

TEST_CASE("four-level game with one item") {
    // the top attacker interdicts the only item; no later round can undo
    // that, so the final profit stays below the goal
    UmikInstance u;
    u.items = {{1, 1}};
    u.capacity = 1;
    u.goal = 1;
    u.m = 3;
    u.level_budgets = {1, 1, 1};
    CHECK(umik_decide(u).value);
}

TEST_CASE("level guard") {
    UmikInstance u;
    u.items = {{1, 1}};
    u.capacity = 1;
    u.goal = 1;
    u.m = 5;
    u.level_budgets = {1, 1, 1, 1, 1};
    CHECK_THROWS_AS(umik_decide(u), SizeLimitError);
}

TEST_CASE("budget monotonicity") {
    int attack_viol = 0, fort_viol = 0;
    for (uint64_t seed = 0; seed < 150; ++seed) {
        auto u = random_umik(seed, 5, 1);
        if (u.level_budgets[0] < static_cast<int>(u.items.size())) {
            bool before = ubik_decide(u).value;
            auto u2 = u;
            u2.level_budgets[0]++;
            if (before && !ubik_decide(u2).value) ++attack_viol;
        }
        auto t = random_umik(seed + 5000, 4, 2);
        if (t.level_budgets[1] < static_cast<int>(t.items.size())) {
            bool before = utik_decide(t).value;
            auto t2 = t;
            t2.level_budgets[1]++;
            if (before && !utik_decide(t2).value) ++fort_viol;
        }
    }
    CHECK(attack_viol == 0);
    CHECK(fort_viol == 0);
}

TEST_CASE("unit fastpath equals the exact decider") {
    CHECK_THROWS_AS(umik_unit_fastpath(random_umik(3, 4, 1)), ShapeError);

    int checked = 0;
    for (uint64_t seed = 0; seed < 600; ++seed) {
        Rng rng(seed);
        UmikInstance u;
        int n = rng.range(1, 8);
        bool unit_weights = rng.flip();
        Int wsum = 0, psum = 0;
        for (int i = 0; i < n; ++i) {
            Int w = unit_weights ? Int(1) : Int(rng.range(1, 6));
            Int p = unit_weights ? Int(rng.range(1, 6)) : Int(1);
            wsum += w;
            psum += p;
            u.items.push_back({w, p});
        }
        u.capacity = rng.range(1, static_cast<int>(wsum));
        u.goal = rng.range(1, static_cast<int>(psum));
        u.m = 1 + static_cast<int>(seed % 3);
        for (int l = 0; l < u.m; ++l) u.level_budgets.push_back(rng.range(0, 2));
        CHECK(umik_unit_fastpath(u) == umik_decide(u).value);
        ++checked;
    }
    CHECK(checked == 600);
}

TEST_CASE("fastpath worked examples") {
    UmikInstance u;
    u.items = {{3, 1}, {2, 1}, {1, 1}}; // unit profits
    u.capacity = 3;
    u.goal = 2;
    u.m = 1;
    u.level_budgets = {1};
    CHECK(umik_unit_fastpath(u) == umik_decide(u).value);

    UmikInstance v;
    v.items = {{1, 5}, {1, 1}}; // unit weights
    v.capacity = 1;
    v.goal = 5;
    v.m = 1;
    v.level_budgets = {1};
    CHECK(umik_unit_fastpath(v)); // attack the profit-5 item
    CHECK(umik_decide(v).value);

    UmikInstance w;
    w.items = {{1, 2}, {1, 2}, {1, 2}}; // identical items
    w.capacity = 2;
    w.goal = 4;
    w.m = 2;
    w.level_budgets = {1, 1};
    CHECK(umik_unit_fastpath(w) == umik_decide(w).value);
}

TEST_CASE("json round trip is bit exact") {
    UmikInstance u;
    u.items = {{Int("100000101"), Int("1100000101")}, {Int("10001"), Int("10001")}};
    u.capacity = Int("202011444");
    u.goal = Int("2111111444");
    u.m = 2;
    u.level_budgets = {2, 1};
    auto text = umik_to_json(u);
    auto v = umik_from_json(text);
    CHECK(v.items == u.items);
    CHECK(v.capacity == u.capacity);
    CHECK(v.goal == u.goal);
    CHECK(v.level_budgets == u.level_budgets);
    CHECK(v.m == u.m);
    CHECK(umik_to_json(v) == text);
    CHECK_THROWS_AS(umik_from_json("{\"items\":[]}"), ParseError);
}

} // TEST_SUITE

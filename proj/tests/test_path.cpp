#include <doctest.h>

#include "fig/engine.hpp"
#include "fig/path.hpp"
#include "fig/verify.hpp"
#include "oracles.hpp"

using namespace fig;

TEST_SUITE("path") {

TEST_CASE("shortest_path basics") {
    SpGraph g;
    g.node_count = 3;
    g.s = 0;
    g.t = 2;
    g.arcs = {{0, 1, 1, 0}, {1, 2, 1, 0}};
    CHECK(*shortest_path(g) == 2);
    CHECK_FALSE(shortest_path(g, 0b01).has_value()); // remove (s,a)
}

TEST_CASE("shortest_path equals path enumeration on random dags") {
    for (uint64_t seed = 0; seed < 300; ++seed) {
        auto g = oracles::random_dag(seed, 4, 12);
        CHECK(shortest_path(g) == oracles::shortest_path_enum(g));
    }
}

TEST_CASE("removing arcs never shortens the path") {
    int violations = 0;
    for (uint64_t seed = 0; seed < 200; ++seed) {
        auto g = oracles::random_dag(seed, 4, 10);
        auto base = shortest_path(g);
        for (size_t a = 0; a < g.arcs.size(); ++a) {
            auto after = shortest_path(g, uint64_t{1} << a);
            if (!base) continue;
            if (after && *after < *base) ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("spipuf_decide small cases") {
    SpipufInstance inst;
    inst.graph.node_count = 2;
    inst.graph.s = 0;
    inst.graph.t = 1;
    inst.graph.arcs = {{0, 1, 1, 1}};
    inst.fortify_budget = 1;
    inst.attack_budget = 1;
    inst.goal = 2;
    auto d = spipuf_decide(inst);
    CHECK(d.value); // fortify the only arc
    inst.fortify_budget = 0;
    CHECK_FALSE(spipuf_decide(inst).value); // disconnection counts as >= goal
}

TEST_CASE("spipuf guard") {
    SpipufInstance inst;
    inst.graph.node_count = 2;
    for (int i = 0; i < 37; ++i) inst.graph.arcs.push_back({0, 1, 1, 1});
    inst.goal = 1;
    CHECK_THROWS_AS(spipuf_decide(inst), SizeLimitError);
}

TEST_CASE("gadget arithmetic") {
    UmikInstance u;
    u.items = {{2, 5}};
    u.capacity = 7;
    u.goal = 3;
    u.m = 1;
    u.level_budgets = {1};
    auto art = compile_ubik_to_spipuf(u);
    REQUIRE(art.instance.graph.arcs.size() == 3);
    CHECK(art.instance.graph.arcs[0].length == 7); // p+2
    CHECK(art.instance.graph.arcs[0].attack_cost == 8); // W+1
    CHECK(art.instance.graph.arcs[1].length == 1);
    CHECK(art.instance.graph.arcs[1].attack_cost == 2); // w_i
    CHECK(art.instance.graph.arcs[2].length == 1);
    CHECK(art.instance.graph.arcs[2].attack_cost == 8);
    CHECK(art.instance.goal == 5); // K + 2n
    CHECK(art.instance.attack_budget == 7);
    CHECK(art.instance.fortify_budget == 1);
}

TEST_CASE("node and arc counts") {
    UmikInstance u;
    u.items = {{1, 1}, {2, 3}, {1, 4}};
    u.capacity = 3;
    u.goal = 10;
    u.m = 1;
    u.level_budgets = {1};
    auto art = compile_ubik_to_spipuf(u);
    CHECK(art.instance.graph.node_count == 7);
    CHECK(art.instance.graph.arcs.size() == 9);
    CHECK(art.instance.goal == 16);
}

TEST_CASE("only the item arcs are attackable") {
    for (uint64_t seed = 0; seed < 30; ++seed) {
        auto u = gen_random_ubik(seed, 4, 5, 7);
        auto art = compile_ubik_to_spipuf(u);
        uint64_t item_arcs = 0;
        for (int a : art.item_arc) item_arcs |= uint64_t{1} << a;
        std::vector<Int> costs;
        for (const auto &a : art.instance.graph.arcs) costs.push_back(a.attack_cost);
        for_each_feasible_set(
            (uint64_t{1} << art.instance.graph.arcs.size()) - 1,
            Budget::weighted(costs, art.instance.attack_budget), [&](uint64_t D) {
                CHECK((D & ~item_arcs) == 0);
                return false;
            });
    }
}

TEST_CASE("path length decomposes as 2n plus the blocked profits") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        auto u = gen_random_ubik(seed, 4, 5, 7);
        auto art = compile_ubik_to_spipuf(u);
        int n = static_cast<int>(u.items.size());
        Rng rng(seed);
        uint64_t attacked_items = rng.next() & ((uint64_t{1} << n) - 1);
        uint64_t removed = 0;
        Int blocked = 0;
        for (int i = 0; i < n; ++i)
            if (attacked_items & (uint64_t{1} << i)) {
                removed |= uint64_t{1} << art.item_arc[i];
                blocked += u.items[i].profit;
            }
        auto len = shortest_path(art.instance.graph, removed);
        REQUIRE(len.has_value());
        CHECK(*len == Int(2 * n) + blocked);
    }
}

TEST_CASE("json and dot round trip") {
    auto u = gen_random_ubik(5, 4, 5, 7);
    auto art = compile_ubik_to_spipuf(u);
    auto text = path_to_json(art.instance);
    auto back = path_from_json(text);
    CHECK(path_to_json(back) == text);
    CHECK(path_to_dot(back.graph).find("digraph") == 0);
    CHECK_THROWS_AS(path_from_json("[]"), ParseError);
}

} // TEST_SUITE

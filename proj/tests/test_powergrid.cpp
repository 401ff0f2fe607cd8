#include <doctest.h>

#include "fig/powergrid.hpp"
#include "fig/rng.hpp"
#include "fig/verify.hpp"

using namespace fig;

namespace {

GridInstance single_line_grid() {
    GridInstance g;
    g.bus_count = 2;
    g.demand = {Rat(0), Rat(5)};
    g.generators.push_back({0, Rat(5), Rat(5), Rat(0), Rat(5)});
    g.lines.push_back({0, 1, Rat(5), Rat(1), Int(1), Rat(1)});
    g.fortify_budget = 0;
    g.attack_budget = 0;
    g.shed_goal = Rat(0);
    return g;
}

} // namespace

TEST_SUITE("powergrid") {

TEST_CASE("full delivery when nothing is attacked") {
    auto g = single_line_grid();
    auto r = min_load_shed(g, 0);
    CHECK(r.total_shed == 0);
    CHECK(r.line_flow[0] == 5);
    CHECK(r.bus_shed[1] == 0);
    CHECK(r.lp_objective == r.lp_dual_objective);
}

TEST_CASE("attacked line isolates the demand") {
    auto g = single_line_grid();
    auto r = min_load_shed(g, 0b1);
    CHECK(r.total_shed == 5);
    CHECK(r.line_flow[0] == 0);
}

TEST_CASE("line capacity limits delivery") {
    auto g = single_line_grid();
    g.lines[0].capacity = Rat(3);
    auto r = min_load_shed(g, 0);
    CHECK(r.total_shed == 2);
}

TEST_CASE("ramping limits delivery") {
    auto g = single_line_grid();
    g.generators[0] = {0, Rat(2), Rat(2), Rat(1), Rat(5)}; // can reach at most 3
    auto r = min_load_shed(g, 0);
    CHECK(r.total_shed == 2);
}

TEST_CASE("angle reference choice does not change the shed") {
    // two demand buses in a chain; solving with either endpoint as the
    // generator bus is a relabeling and must give the same optimum
    GridInstance g;
    g.bus_count = 3;
    g.demand = {Rat(0), Rat(2), Rat(3)};
    g.generators.push_back({0, Rat(5), Rat(5), Rat(0), Rat(5)});
    g.lines.push_back({0, 1, Rat(5), Rat(1, 2), Int(1), Rat(1)});
    g.lines.push_back({1, 2, Rat(3), Rat(2), Int(1), Rat(1)});
    auto r = min_load_shed(g, 0);
    CHECK(r.total_shed == 0);

    GridInstance h = g; // same grid, generator listed on the far bus side
    h.demand = {Rat(3), Rat(2), Rat(0)};
    h.generators = {{2, Rat(5), Rat(5), Rat(0), Rat(5)}};
    h.lines = {{2, 1, Rat(5), Rat(1, 2), Int(1), Rat(1)},
               {1, 0, Rat(3), Rat(2), Int(1), Rat(1)}};
    CHECK(min_load_shed(h, 0).total_shed == r.total_shed);
}

TEST_CASE("closed form matches the simplex on compiled stars") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        auto u = gen_random_ubik(seed, 4, 5, 7);
        auto art = compile_ubik_to_tepgfu(u);
        int nl = static_cast<int>(art.instance.lines.size());
        for (uint64_t D = 0; D < (uint64_t{1} << nl); ++D) {
            auto lp = min_load_shed(art.instance, D);
            CHECK(lp.total_shed == star_shed_closed_form(art.instance, D));
            CHECK(lp.lp_objective == lp.lp_dual_objective);
        }
    }
}

TEST_CASE("closed form worked example") {
    UmikInstance u;
    u.items = {{1, 3}, {1, 5}, {1, 7}};
    u.capacity = 2;
    u.goal = 8;
    u.m = 1;
    u.level_budgets = {1};
    auto art = compile_ubik_to_tepgfu(u);
    CHECK(star_shed_closed_form(art.instance, 0) == 0);
    CHECK(star_shed_closed_form(art.instance, 0b010) == 5);
    CHECK(star_shed_closed_form(art.instance, 0b111) == 15);
    auto not_star = single_line_grid();
    not_star.lines[0].capacity = Rat(4); // capacity no longer equals the demand
    CHECK_THROWS_AS(star_shed_closed_form(not_star, 0), ShapeError);
}

TEST_CASE("attack monotonicity of the shed") {
    int violations = 0;
    for (uint64_t seed = 0; seed < 30; ++seed) {
        auto u = gen_random_ubik(seed, 4, 5, 7);
        auto art = compile_ubik_to_tepgfu(u);
        int nl = static_cast<int>(art.instance.lines.size());
        Rng rng(seed);
        uint64_t D = rng.next() & ((uint64_t{1} << nl) - 1);
        Rat base = min_load_shed(art.instance, D).total_shed;
        for (int l = 0; l < nl; ++l) {
            if (D & (uint64_t{1} << l)) continue;
            if (min_load_shed(art.instance, D | (uint64_t{1} << l)).total_shed < base)
                ++violations;
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("tepgfu_decide small cases") {
    GridInstance g;
    g.bus_count = 2;
    g.demand = {Rat(0), Rat(1)};
    g.generators.push_back({0, Rat(1), Rat(1), Rat(0), Rat(1)});
    g.lines.push_back({0, 1, Rat(1), Rat(1), Int(1), Rat(1)});
    g.fortify_budget = 1;
    g.attack_budget = 1;
    g.shed_goal = Rat(0);
    auto d = tepgfu_decide(g);
    CHECK(d.value);
    CHECK(*d.witness == std::vector<int>{0});
    g.fortify_budget = 0;
    CHECK_FALSE(tepgfu_decide(g).value);
}

TEST_CASE("tepgfu guard") {
    GridInstance g;
    g.bus_count = 2;
    g.demand = {Rat(0), Rat(1)};
    g.generators.push_back({0, Rat(1), Rat(1), Rat(0), Rat(1)});
    for (int i = 0; i < 21; ++i) g.lines.push_back({0, 1, Rat(1), Rat(1), Int(1), Rat(1)});
    CHECK_THROWS_AS(tepgfu_decide(g), SizeLimitError);
}

TEST_CASE("compiler layout") {
    UmikInstance u;
    u.items = {{2, 3}, {1, 4}};
    u.capacity = 3;
    u.goal = 4;
    u.m = 1;
    u.level_budgets = {1};
    auto art = compile_ubik_to_tepgfu(u);
    CHECK(art.instance.bus_count == 3);
    CHECK(art.instance.lines.size() == 2);
    CHECK(art.instance.demand[1] == 3);
    CHECK(art.instance.demand[2] == 4);
    CHECK(art.instance.lines[0].attack_weight == 2);
    CHECK(art.instance.lines[1].attack_weight == 1);
    CHECK(art.instance.generators[0].base_output == 7);
    CHECK(art.instance.generators[0].ramp_up == 0);
    CHECK(art.instance.lines[0].reactance == Rat(1, 14)); // 1/(2 * total demand)
    CHECK(art.instance.attack_budget == 3);
    CHECK(art.instance.shed_goal == 3); // goal - 1

    u.goal = 0;
    CHECK_THROWS_AS(compile_ubik_to_tepgfu(u), ShapeError);
}

TEST_CASE("json round trip") {
    auto art = compile_ubik_to_tepgfu(gen_random_ubik(3, 4, 5, 7));
    auto text = grid_to_json(art.instance);
    auto back = grid_from_json(text);
    CHECK(grid_to_json(back) == text);
    CHECK(grid_to_dot(back).find("graph") == 0);
    CHECK_THROWS_AS(grid_from_json("{}"), ParseError);
}

} // TEST_SUITE

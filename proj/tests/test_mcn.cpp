#include <doctest.h>

#include <bit>

#include "fig/mcn.hpp"
#include "fig/rng.hpp"
#include "fig/verify.hpp"

using namespace fig;

namespace {

// reference closure: iterate to fixpoint instead of searching
uint64_t naive_closure(const McnInstance &inst, uint64_t blocked, uint64_t seeds) {
    uint64_t infected = seeds;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [u, v] : inst.edges) {
            uint64_t bu = uint64_t{1} << u, bv = uint64_t{1} << v;
            if ((infected & bu) && !(infected & bv) && !(blocked & bv)) {
                infected |= bv;
                changed = true;
            }
            if ((infected & bv) && !(infected & bu) && !(blocked & bu)) {
                infected |= bu;
                changed = true;
            }
        }
    }
    return infected;
}

McnInstance random_mcn(uint64_t seed, int n_max) {
    Rng rng(seed);
    McnInstance g;
    g.vertex_count = rng.range(2, n_max);
    for (int u = 0; u < g.vertex_count; ++u)
        for (int v = u + 1; v < g.vertex_count; ++v)
            if (rng.below(3) == 0) g.edges.emplace_back(u, v);
    g.vaccinate_budget = rng.range(0, 2);
    g.infect_budget = rng.range(0, 2);
    g.protect_budget = rng.range(0, 2);
    g.goal = rng.range(0, g.vertex_count);
    return g;
}

} // namespace

TEST_SUITE("mcn") {

TEST_CASE("the worked six-vertex play") {
    auto g = figure3_instance();
    auto play = propagate(g, 1 << 2, 1 << 1, 1 << 0); // vaccinate v3, infect v2, protect v1
    CHECK(play.saved == ((1u << 0) | (1u << 2) | (1u << 3)));
    CHECK(play.saved_count == 3);
    CHECK(play.states[2] == VertexState::Vaccinated);
    CHECK(play.states[0] == VertexState::Protected);
    CHECK(play.states[1] == VertexState::DirectlyInfected);
    CHECK(play.states[4] == VertexState::IndirectlyInfected);
    CHECK(play.states[5] == VertexState::IndirectlyInfected);
    CHECK(play.states[3] == VertexState::SavedPlain);
}

TEST_CASE("no infection source saves everything") {
    auto g = figure3_instance();
    CHECK(propagate(g, 0, 0, 0).saved_count == 6);
}

TEST_CASE("complete graph fully infected") {
    McnInstance g;
    g.vertex_count = 4;
    g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    g.infect_budget = 1;
    CHECK(propagate(g, 0, 1, 0).saved_count == 0);
}

TEST_CASE("overlap violations rejected") {
    auto g = figure3_instance();
    CHECK_THROWS_AS(propagate(g, 1, 1, 0), ShapeError);
    CHECK_THROWS_AS(propagate(g, 0, 1, 1), ShapeError);
    CHECK_THROWS_AS(propagate(g, 0, 3, 0), ShapeError); // budget
}

TEST_CASE("closure agrees with the naive fixpoint") {
    for (uint64_t seed = 0; seed < 200; ++seed) {
        auto g = random_mcn(seed, 9);
        g.vaccinate_budget = g.vertex_count;
        g.infect_budget = g.vertex_count;
        g.protect_budget = g.vertex_count;
        Rng rng(seed + 999);
        uint64_t full = (uint64_t{1} << g.vertex_count) - 1;
        uint64_t D = rng.next() & full;
        uint64_t I = rng.next() & full & ~D;
        uint64_t P = rng.next() & full & ~I;
        auto play = propagate(g, D, I, P);
        CHECK(play.infected == naive_closure(g, D | P, I));
    }
}

TEST_CASE("outcome satisfies the propagation constraints") {
    for (uint64_t seed = 0; seed < 100; ++seed) {
        auto g = random_mcn(seed, 9);
        g.vaccinate_budget = g.vertex_count;
        g.infect_budget = g.vertex_count;
        g.protect_budget = g.vertex_count;
        Rng rng(seed * 31 + 7);
        uint64_t full = (uint64_t{1} << g.vertex_count) - 1;
        uint64_t D = rng.next() & full;
        uint64_t I = rng.next() & full & ~D;
        uint64_t P = rng.next() & full & ~I;
        auto play = propagate(g, D, I, P);
        // saved vertices adjacent to infected ones are vaccinated or protected
        for (auto [u, v] : g.edges) {
            uint64_t bu = uint64_t{1} << u, bv = uint64_t{1} << v;
            if ((play.infected & bu) && (play.saved & bv)) CHECK(((D | P) & bv) != 0);
            if ((play.infected & bv) && (play.saved & bu)) CHECK(((D | P) & bu) != 0);
        }
        // directly infected vertices are unsaved
        CHECK((play.saved & I) == 0);
    }
}

TEST_CASE("protection and infection monotonicity") {
    int viol = 0;
    for (uint64_t seed = 0; seed < 150; ++seed) {
        auto g = random_mcn(seed, 8);
        g.vaccinate_budget = g.vertex_count;
        g.infect_budget = g.vertex_count;
        g.protect_budget = g.vertex_count;
        Rng rng(seed + 12345);
        uint64_t full = (uint64_t{1} << g.vertex_count) - 1;
        uint64_t D = rng.next() & full;
        uint64_t I = rng.next() & full & ~D;
        uint64_t P = rng.next() & full & ~I;
        int base = propagate(g, D, I, P).saved_count;
        for (int v = 0; v < g.vertex_count; ++v) {
            uint64_t bit = uint64_t{1} << v;
            if (!(P & bit) && !(I & bit) &&
                propagate(g, D, I, P | bit).saved_count < base)
                ++viol;
            if (!(I & bit) && !(D & bit) && !(P & bit) &&
                propagate(g, D, I | bit, P).saved_count > base)
                ++viol;
        }
    }
    CHECK(viol == 0);
}

TEST_CASE("umcn trivial cases") {
    McnInstance g;
    g.vertex_count = 4;
    g.edges = {{0, 1}};
    g.goal = 4;
    SUBCASE("no attack budget") {
        g.infect_budget = 0;
        CHECK(umcn_decide(g).value); // |V| >= goal
        g.goal = 5;
        CHECK_FALSE(umcn_decide(g).value);
    }
    SUBCASE("edgeless graph sheds exactly the attack budget") {
        g.edges.clear();
        g.infect_budget = 2;
        g.goal = 2;
        CHECK(umcn_decide(g).value);
        g.goal = 3;
        CHECK_FALSE(umcn_decide(g).value);
    }
}

TEST_CASE("pruned, unpruned, and parallel deciders agree") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        auto g = random_mcn(seed, 7);
        UmcnOptions plain;
        plain.prune = false;
        UmcnOptions pruned;
        UmcnOptions par;
        par.parallel = true;
        auto a = umcn_decide(g, plain);
        auto b = umcn_decide(g, pruned);
        auto c = umcn_decide(g, par);
        CHECK(a.value == b.value);
        CHECK(a.witness == b.witness);
        CHECK(a.value == c.value);
        CHECK(a.witness == c.witness);
    }
}

TEST_CASE("size guards") {
    McnInstance g;
    g.vertex_count = 27;
    g.goal = 1;
    UmcnOptions full;
    full.prune = false;
    CHECK_THROWS_AS(umcn_decide(g, full), SizeLimitError);
    CHECK_NOTHROW(umcn_decide(g)); // pruned guard is 40
    g.vertex_count = 41;
    CHECK_THROWS_AS(umcn_decide(g), SizeLimitError);
}

TEST_CASE("compiled gamma constants and clause gadgets") {
    QbfInstance q;
    q.blocks = {{Role::Exists, {0}}, {Role::ForAll, {1}}, {Role::Exists, {2}}};
    q.var_names = {"x", "y", "z"};
    q.matrix = {
        normalize_clause({{0, false}, {1, false}, {2, true}}),
        normalize_clause({{1, true}, {2, false}}),
    };
    auto art = compile_b3sat_to_umcn(q);
    CHECK(art.gamma_z == 3);
    CHECK(art.gamma_y == 1);
    CHECK(art.gamma_x == 5);
    CHECK(art.instance.vaccinate_budget == 1);
    CHECK(art.instance.infect_budget == 2);
    CHECK(art.instance.protect_budget == 2);
    // goal = 0 + |X| + |Y|(gamma_y+1) + 0 + |Z| + |C|
    CHECK(art.instance.goal == 1 + 2 + 1 + 2);
    // no pair sets at singleton X and Z
    for (const auto &v : art.vertices) {
        CHECK(v.kind != McnVertexProvenance::Kind::CSetX);
        CHECK(v.kind != McnVertexProvenance::Kind::CSetZ);
    }
    // clause 1 has width 3 -> 7 assignment vertices with 3 edges each;
    // clause 2 has width 2 -> 3 vertices
    int c1 = 0, c2 = 0;
    for (const auto &v : art.vertices) {
        if (v.kind == McnVertexProvenance::Kind::ClauseVtx && v.clause == 0) ++c1;
        if (v.kind == McnVertexProvenance::Kind::ClauseVtx && v.clause == 1) ++c2;
    }
    CHECK(c1 == 7);
    CHECK(c2 == 3);
    auto adj = art.instance.adjacency();
    for (size_t v = 0; v < art.vertices.size(); ++v)
        if (art.vertices[v].kind == McnVertexProvenance::Kind::ClauseVtx &&
            art.vertices[v].clause == 0)
            CHECK(adj[v].size() == 3);
}

TEST_CASE("pair gadgets appear for two same-level variables") {
    QbfInstance q;
    q.blocks = {{Role::Exists, {0, 1}}, {Role::ForAll, {2}}, {Role::Exists, {3}}};
    q.matrix = {normalize_clause({{0, false}, {2, false}, {3, false}})};
    auto art = compile_b3sat_to_umcn(q);
    int csetx = 0;
    for (const auto &v : art.vertices)
        if (v.kind == McnVertexProvenance::Kind::CSetX) ++csetx;
    // 4 literal pairs between the two X variables, gamma_x vertices each
    CHECK(csetx == 4 * art.gamma_x);
}

TEST_CASE("json and dot round trip") {
    auto g = figure3_instance();
    auto text = mcn_to_json(g);
    auto back = mcn_from_json(text);
    CHECK(mcn_to_json(back) == text);
    auto play = propagate(back, 1 << 2, 1 << 1, 1 << 0);
    CHECK(mcn_to_dot(back, &play).find("graph") == 0);
    CHECK_THROWS_AS(mcn_from_json("{}"), ParseError);
}

} // TEST_SUITE

#include <doctest.h>

#include "fig/flow.hpp"
#include "fig/verify.hpp"
#include "oracles.hpp"

using namespace fig;

TEST_SUITE("flow") {

TEST_CASE("max_flow basics") {
    FlowNetwork net;
    net.node_count = 2;
    net.arcs = {{0, 1, 5}};
    CHECK(max_flow(net) == 5);

    FlowNetwork chain;
    chain.node_count = 3;
    chain.s = 0;
    chain.t = 1;
    chain.arcs = {{0, 2, 3}, {2, 1, 2}};
    CHECK(max_flow(chain) == 2);
}

TEST_CASE("max_flow equals exhaustive min cut on random networks") {
    for (uint64_t seed = 0; seed < 500; ++seed) {
        auto net = oracles::random_network(seed, 4, 12);
        CHECK(max_flow(net) == oracles::min_cut_value(net));
    }
}

TEST_CASE("removing an arc never increases the flow") {
    int violations = 0;
    for (uint64_t seed = 0; seed < 200; ++seed) {
        auto net = oracles::random_network(seed, 4, 10);
        Int base = max_flow(net);
        for (size_t a = 0; a < net.arcs.size(); ++a)
            if (max_flow_removed(net, uint64_t{1} << a) > base) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("umfipf_decide small cases") {
    MfipfInstance inst;
    inst.network.node_count = 2;
    inst.network.arcs = {{0, 1, 1}};
    inst.flow_goal = 1;
    inst.fortify_budget = 1;
    inst.attack_budget = 1;
    auto d = umfipf_decide(inst);
    CHECK(d.value);
    CHECK(*d.witness == std::vector<int>{0});
    inst.fortify_budget = 0;
    CHECK_FALSE(umfipf_decide(inst).value);
}

TEST_CASE("umfipf guards") {
    MfipfInstance inst;
    inst.network.node_count = 2;
    for (int i = 0; i < 49; ++i) inst.network.arcs.push_back({0, 1, 1});
    inst.flow_goal = 1;
    CHECK_THROWS_AS(umfipf_decide(inst), SizeLimitError);
    inst.network.arcs.resize(3);
    inst.attack_budget = 5;
    CHECK_THROWS_AS(umfipf_decide(inst), SizeLimitError);
}

TEST_CASE("gadget constants") {
    auto q = random_qbf(5, {1, 2}, 3, false);
    auto art = compile_b2sat_to_umfipf(q);
    CHECK(art.c_y_prime == Rat(4));
    CHECK(art.c_y == Rat(12));
    CHECK(art.c_x == Rat(36));
    CHECK(art.c_u == Rat(9));
    CHECK(art.scale == 4);
    // |X|=1, |Y|=2: one X gadget with 6 u-nodes, C(4,2)=6 pair nodes
    int x_internal = 0, pair_nodes = 0;
    for (const auto &a : art.arcs) {
        if (a.kind == FlowArcProvenance::Kind::XInternal) ++x_internal;
        if (a.kind == FlowArcProvenance::Kind::PairOut) ++pair_nodes;
    }
    CHECK(x_internal == 8); // 2|Y| out of v_x plus 2|Y| out of v_~x
    CHECK(pair_nodes == 6);
}

TEST_CASE("clause occurrence counts feed the source arc capacities") {
    QbfInstance q;
    q.blocks = {{Role::Exists, {0}}, {Role::ForAll, {1, 2}}};
    q.matrix = {
        normalize_clause({{0, false}, {1, false}}),
        normalize_clause({{0, false}, {2, true}}),
        normalize_clause({{1, true}}),
    };
    auto art = compile_b2sat_to_umfipf(q);
    // gamma_x counts the clauses containing the positive literal: 2 here
    CHECK(art.instance.network.arcs[0].cap == (art.c_x + 2) * art.scale);
    CHECK(art.instance.network.arcs[1].cap == art.c_x * art.scale); // no negated occurrence
}

TEST_CASE("scaling preserves the flow value exactly") {
    auto q = random_qbf(9, {1, 2}, 2, false);
    auto art = compile_b2sat_to_umfipf(q);
    for (const auto &c : property_suite_flow(art))
        if (c.name == "flow-scaling-agreement") CHECK(c.violations == 0);
}

TEST_CASE("compiler rejects wrong shapes") {
    CHECK_THROWS_AS(compile_b2sat_to_umfipf(random_qbf(1, {1, 1, 1}, 2, false)),
                    ShapeError);
    CHECK_THROWS_AS(compile_b2sat_to_umfipf(random_qbf(1, {1, 1}, 2, false)), ShapeError);
    CHECK_THROWS_AS(compile_b2sat_to_umfipf(random_qbf(1, {1, 2}, 2, true)), ShapeError);
    CHECK_NOTHROW(compile_b2sat_to_umfipf_any(random_qbf(1, {1, 1}, 2, false)));
}

TEST_CASE("json and dot round trip") {
    auto art = compile_b2sat_to_umfipf(random_qbf(3, {1, 2}, 2, false));
    auto text = flow_to_json(art.instance);
    auto back = flow_from_json(text);
    CHECK(flow_to_json(back) == text);
    CHECK(flow_to_dot(back.network).find("digraph") == 0);
    CHECK_THROWS_AS(flow_from_json("{}"), ParseError);
}

} // TEST_SUITE

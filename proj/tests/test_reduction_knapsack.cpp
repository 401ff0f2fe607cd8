#include <doctest.h>

#include "fig/reduction_knapsack.hpp"
#include "fig/verify.hpp"

using namespace fig;

namespace {

Int item_w(const CompiledArtifact &a, ItemRole r, int idx) {
    return a.instance.items[a.find_item(r, idx)].weight;
}
Int item_p(const CompiledArtifact &a, ItemRole r, int idx) {
    return a.instance.items[a.find_item(r, idx)].profit;
}

} // namespace

TEST_SUITE("reduction_knapsack") {

TEST_CASE("the bilevel worked example reproduces every pinned number") {
    auto art = compile_b2_to_ubik(figure1_formula());
    // variables: a=0, b=1 (outer), c=2, d=3 (inner)
    CHECK(item_w(art, ItemRole::VarPos, 0) == Int("100000101"));
    CHECK(item_p(art, ItemRole::VarPos, 0) == Int("1100000101"));
    CHECK(item_w(art, ItemRole::VarPos, 2) == Int("10001"));
    CHECK(item_p(art, ItemRole::VarPos, 2) == Int("10001"));
    CHECK(item_w(art, ItemRole::J, 0) == Int("200000000"));
    CHECK(item_p(art, ItemRole::J, 0) == Int("200000000"));
    CHECK(item_w(art, ItemRole::JPrime, 0) == Int("100000000"));
    CHECK(item_p(art, ItemRole::JPrime, 0) == Int("10000000"));
    CHECK(item_w(art, ItemRole::Clause1, 0) == Int("100"));
    CHECK(item_w(art, ItemRole::Clause2, 0) == Int("200"));
    CHECK(art.instance.capacity == Int("202011444"));
    CHECK(art.instance.goal == Int("2111111444"));
    CHECK(art.instance.level_budgets == std::vector<int>{2});
    CHECK(art.instance.items.size() == 18); // 4 per X var, 2 per Y var, 2 per clause
    CHECK(art.instance.paper_conformant());
}

TEST_CASE("the trilevel worked example reproduces every pinned number") {
    auto art = compile_b3_to_utik(figure2_formula());
    // a fortification-level item carries |Y|+1 = 2 in the M block
    CHECK(item_p(art, ItemRole::VarPos, 0) / pow10(art.layout.m_exp) == 2);
    CHECK(item_w(art, ItemRole::VarPos, 0) == Int("10000101"));
    CHECK(item_p(art, ItemRole::VarPos, 0) == Int("210000101"));
    // interdiction-level items carry 1 at M
    CHECK(item_p(art, ItemRole::VarPos, 1) / pow10(art.layout.m_exp) == 1);
    CHECK(art.instance.capacity == Int("12011444"));
    CHECK(art.instance.goal == Int("311111444"));
    // M block of the goal encodes (|Y|+1)|X| + |Y| = 3
    CHECK(art.instance.goal / pow10(art.layout.m_exp) == 3);
    CHECK(art.instance.level_budgets == std::vector<int>{1, 1}); // B2=|Y|, B3=|X|
    CHECK(art.instance.items.size() == 16);
}

TEST_CASE("digit table rows match the frozen worked examples") {
    auto [fig1, fig2] = regenerate_figures();
    CHECK(fig1.find("i_a w 0 1 0 0 0 0 0 1 0 1") != std::string::npos);
    CHECK(fig1.find("i_a p 1 1 0 0 0 0 0 1 0 1") != std::string::npos);
    CHECK(fig1.find("i_c w 0 0 0 0 0 1 0 0 0 1") != std::string::npos);
    CHECK(fig1.find("j'_a p 0 0 1 0 0 0 0 0 0 0") != std::string::npos);
    CHECK(fig1.find("W 0 2 0 2 0 1 1 4 4 4") != std::string::npos);
    CHECK(fig1.find("K 2 1 1 1 1 1 1 4 4 4") != std::string::npos);
    CHECK(fig2.find("W 0 1 2 0 1 1 4 4 4") != std::string::npos);
    CHECK(fig2.find("K 3 1 1 1 1 1 4 4 4") != std::string::npos);
}

TEST_CASE("family preconditions") {
    auto q1 = figure1_formula();
    q1.matrix_negated = false;
    CHECK_THROWS_AS(compile_b2_to_ubik(q1), ShapeError); // wrong goal family
    auto q2 = figure2_formula();
    q2.matrix_negated = true;
    CHECK_THROWS_AS(compile_b3_to_utik(q2), ShapeError);
    CHECK_THROWS_AS(compile_b2_to_ubik(figure2_formula()), ShapeError); // block count
    auto empty = figure2_formula();
    empty.matrix.clear();
    CHECK_THROWS_AS(compile_b3_to_utik(empty), ShapeError); // clause minimum
    auto parity = figure1_formula();
    parity.matrix_negated = false;
    CHECK_THROWS_AS(compile_qbf_to_umik(parity), ShapeError);
}

TEST_CASE("general compiler specialises to the dedicated ones") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        auto q1 = random_qbf(seed, {2, 2}, 1 + static_cast<int>(seed % 3), true);
        CHECK(artifacts_identical(compile_qbf_to_umik(q1), compile_b2_to_ubik(q1)));
        auto q2 = random_qbf(seed, {1, 2, 2}, 1 + static_cast<int>(seed % 3), false);
        CHECK(artifacts_identical(compile_qbf_to_umik(q2), compile_b3_to_utik(q2)));
    }
}

TEST_CASE("level profit factors multiply up the prefix sizes") {
    // delta_4 with |X_2|=2 and |X_3|=1 is (2+1)(1+1) = 6
    auto q = random_qbf(3, {1, 1, 2, 1}, 2, true); // blocks X4,X3,X2,X1
    auto art = compile_qbf_to_umik(q);
    int x4 = q.blocks[0].vars[0];
    CHECK(art.instance.items[art.find_item(ItemRole::VarPos, x4)].profit /
              pow10(art.layout.m_exp) ==
          6);
}

TEST_CASE("no-carry column sums stay single digit") {
    for (uint64_t seed = 0; seed < 15; ++seed) {
        auto q = random_qbf(seed, {2, 2}, 1 + static_cast<int>(seed % 3), true);
        auto art = compile_b2_to_ubik(q);
        auto sums = column_sums(art);
        for (int e = 0; e < art.layout.m_exp; ++e) {
            CHECK(sums.weight[e] <= 9);
            CHECK(sums.profit[e] <= 9);
        }
        CHECK(sums.profit[art.layout.m_exp] < pow10(art.layout.m_width));
    }
}

TEST_CASE("goal digit count matches the construction formula") {
    for (uint64_t seed = 0; seed < 15; ++seed) {
        auto q = random_qbf(seed, {2, 2}, 1 + static_cast<int>(seed % 3), true);
        auto art = compile_b2_to_ubik(q);
        // |C| + |Y| + 2|X| + digits of the M value
        CHECK(dec_digits(art.instance.goal) == expected_goal_digits(art));
        CHECK(expected_goal_digits(art) ==
              static_cast<int>(q.matrix.size()) + 2 + 4 +
                  dec_digits(Int(q.blocks[0].vars.size())));
    }
    for (uint64_t seed = 0; seed < 15; ++seed) {
        auto q = random_qbf(seed, {1, 2, 1}, 1 + static_cast<int>(seed % 3), false);
        auto art = compile_b3_to_utik(q);
        CHECK(dec_digits(art.instance.goal) == expected_goal_digits(art));
    }
}

TEST_CASE("provenance covers every item exactly once") {
    auto art = compile_b3_to_utik(figure2_formula());
    CHECK(art.provenance.size() == art.instance.items.size());
    auto json = provenance_to_json(art);
    CHECK(json.find("\"role\": \"i_u\"") != std::string::npos);
    CHECK(json.find("\"role\": \"j_prime\"") != std::string::npos);
}

} // TEST_SUITE

#include <doctest.h>

#include "fig/rng.hpp"
#include "fig/simplex.hpp"

using namespace fig;

TEST_SUITE("simplex") {

TEST_CASE("tiny equality problem") {
    // min x0 + x1  s.t.  x0 + x1 = 2, x0 - x1 = 0
    LpProblem p;
    p.rows = 2;
    p.cols = 2;
    p.A = {{1, 1}, {1, -1}};
    p.b = {2, 0};
    p.c = {1, 1};
    auto s = simplex_solve(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == 2);
    CHECK(s.x[0] == 1);
    CHECK(s.x[1] == 1);
    CHECK(s.dual_objective == s.objective);
    CHECK(s.dual_feasible);
}

TEST_CASE("degenerate and fractional optimum") {
    // min -x0 - 2 x1  s.t.  x0 + x1 + s0 = 3/2, x1 + s1 = 1
    LpProblem p;
    p.rows = 2;
    p.cols = 4;
    p.A = {{1, 1, 1, 0}, {0, 1, 0, 1}};
    p.b = {Rat(3, 2), 1};
    p.c = {-1, -2, 0, 0};
    auto s = simplex_solve(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Rat(-5, 2));
    CHECK(s.x[0] == Rat(1, 2));
    CHECK(s.x[1] == 1);
    CHECK(s.dual_objective == s.objective);
    CHECK(s.dual_feasible);
}

TEST_CASE("infeasible detected") {
    LpProblem p;
    p.rows = 2;
    p.cols = 1;
    p.A = {{1}, {1}};
    p.b = {1, 2};
    p.c = {1};
    CHECK(simplex_solve(p).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded detected") {
    // min -x0 with x0 - x1 = 0: both can grow together
    LpProblem p;
    p.rows = 1;
    p.cols = 2;
    p.A = {{1, -1}};
    p.b = {0};
    p.c = {-1, 0};
    CHECK(simplex_solve(p).status == LpStatus::Unbounded);
}

TEST_CASE("redundant rows survive phase one") {
    LpProblem p;
    p.rows = 2;
    p.cols = 2;
    p.A = {{1, 1}, {2, 2}};
    p.b = {1, 2};
    p.c = {1, 3};
    auto s = simplex_solve(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == 1);
    CHECK(s.dual_objective == s.objective);
    CHECK(s.dual_feasible);
}

TEST_CASE("strong duality on random feasible problems") {
    for (uint64_t seed = 0; seed < 150; ++seed) {
        Rng rng(seed);
        int rows = rng.range(1, 4);
        int cols = rows + rng.range(1, 4);
        LpProblem p;
        p.rows = rows;
        p.cols = cols;
        p.A.assign(rows, std::vector<Rat>(cols));
        for (auto &row : p.A)
            for (auto &v : row) v = Rat(rng.range(-3, 3));
        // build b from a random nonnegative solution so the problem is feasible
        std::vector<Rat> x0(cols);
        for (auto &v : x0) v = Rat(rng.range(0, 3));
        p.b.assign(rows, Rat(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) p.b[i] += p.A[i][j] * x0[j];
        p.c.assign(cols, Rat(0));
        for (auto &v : p.c) v = Rat(rng.range(0, 5)); // bounded below by zero
        auto s = simplex_solve(p);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.dual_objective == s.objective);
        CHECK(s.dual_feasible);
        // the known solution bounds the optimum
        Rat known = 0;
        for (int j = 0; j < cols; ++j) known += p.c[j] * x0[j];
        CHECK(s.objective <= known);
    }
}

} // TEST_SUITE

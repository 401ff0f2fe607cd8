#pragma once

#include <vector>

#include "fig/numeric.hpp"

namespace fig {

// min c^T x  subject to  A x = b,  x >= 0, in exact rational arithmetic.
struct LpProblem {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<Rat>> A; // rows x cols
    std::vector<Rat> b;
    std::vector<Rat> c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Optimal;
    std::vector<Rat> x;
    Rat objective;
    // duals of the (sign-normalized) rows; y^T b equals the objective at
    // optimality and A^T y <= c holds componentwise
    std::vector<Rat> dual;
    Rat dual_objective;
    bool dual_feasible = false;
};

// Two-phase tableau simplex with Bland's anti-cycling rule.
LpSolution simplex_solve(const LpProblem &p);

} // namespace fig

#include "fig/simplex.hpp"

#include "fig/errors.hpp"

namespace fig {

namespace {

struct Tableau {
    int m, n;                 // constraint rows, structural columns
    std::vector<std::vector<Rat>> t; // m rows x (n + m + 1): structural,
                                     // artificial, rhs
    std::vector<Rat> obj;            // reduced-cost row, n + m entries
    Rat obj_value;                   // current objective (to be minimized)
    std::vector<int> basis;          // basic column per row

    int width() const { return n + m; }

    void pivot(int row, int col) {
        Rat p = t[row][col];
        for (auto &v : t[row]) v /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            Rat f = t[i][col];
            if (f == 0) continue;
            for (int j = 0; j <= width(); ++j) t[i][j] -= f * t[row][j];
        }
        Rat f = obj[col];
        if (f != 0) {
            for (int j = 0; j < width(); ++j) obj[j] -= f * t[row][j];
            obj_value -= f * t[row][width()];
        }
        basis[row] = col;
    }

    // Bland: smallest eligible entering column among `allowed` prefix width
    bool iterate(int allowed_cols) {
        while (true) {
            int enter = -1;
            for (int j = 0; j < allowed_cols; ++j)
                if (obj[j] < 0) { enter = j; break; }
            if (enter < 0) return true; // optimal
            int leave = -1;
            Rat best_ratio;
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rat ratio = t[i][width()] / t[i][enter];
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return false; // unbounded
            pivot(leave, enter);
        }
    }
};

} // namespace

LpSolution simplex_solve(const LpProblem &p) {
    if (static_cast<int>(p.A.size()) != p.rows || static_cast<int>(p.b.size()) != p.rows ||
        static_cast<int>(p.c.size()) != p.cols)
        throw ShapeError("simplex: inconsistent problem dimensions");

    Tableau tb;
    tb.m = p.rows;
    tb.n = p.cols;
    tb.t.assign(p.rows, std::vector<Rat>(p.cols + p.rows + 1, Rat(0)));
    tb.basis.resize(p.rows);
    for (int i = 0; i < p.rows; ++i) {
        bool flip = p.b[i] < 0;
        for (int j = 0; j < p.cols; ++j) tb.t[i][j] = flip ? -p.A[i][j] : p.A[i][j];
        tb.t[i][p.cols + i] = 1;
        tb.t[i][tb.width()] = flip ? -p.b[i] : p.b[i];
        tb.basis[i] = p.cols + i;
    }

    // phase 1: minimize the artificial total
    tb.obj.assign(tb.width(), Rat(0));
    tb.obj_value = 0;
    for (int i = 0; i < p.rows; ++i) {
        for (int j = 0; j < p.cols; ++j) tb.obj[j] -= tb.t[i][j];
        tb.obj_value -= tb.t[i][tb.width()];
    }
    tb.iterate(p.cols); // artificials never enter
    LpSolution sol;
    if (tb.obj_value != 0) {
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    // drive remaining artificials out of the basis where possible
    for (int i = 0; i < p.rows; ++i) {
        if (tb.basis[i] < p.cols) continue;
        int col = -1;
        for (int j = 0; j < p.cols; ++j)
            if (tb.t[i][j] != 0) { col = j; break; }
        if (col >= 0) tb.pivot(i, col);
        // otherwise the row is redundant; the artificial stays basic at 0
    }

    // phase 2 objective
    tb.obj.assign(tb.width(), Rat(0));
    tb.obj_value = 0;
    for (int j = 0; j < p.cols; ++j) tb.obj[j] = p.c[j];
    for (int i = 0; i < p.rows; ++i) {
        if (tb.basis[i] >= p.cols) continue;
        Rat cb = p.c[tb.basis[i]];
        if (cb == 0) continue;
        for (int j = 0; j < tb.width(); ++j) tb.obj[j] -= cb * tb.t[i][j];
        tb.obj_value -= cb * tb.t[i][tb.width()];
    }
    if (!tb.iterate(p.cols)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.x.assign(p.cols, Rat(0));
    for (int i = 0; i < p.rows; ++i)
        if (tb.basis[i] < p.cols) sol.x[tb.basis[i]] = tb.t[i][tb.width()];
    sol.objective = -tb.obj_value; // obj_value tracks -(c_B B^-1 b)

    // duals from the artificial columns: reduced cost there is -y_i
    sol.dual.assign(p.rows, Rat(0));
    for (int i = 0; i < p.rows; ++i) sol.dual[i] = -tb.obj[p.cols + i];
    sol.dual_objective = 0;
    for (int i = 0; i < p.rows; ++i) {
        Rat bi = p.b[i] < 0 ? -p.b[i] : p.b[i];
        sol.dual_objective += sol.dual[i] * bi;
    }
    sol.dual_feasible = true;
    for (int j = 0; j < p.cols && sol.dual_feasible; ++j) {
        Rat aty = 0;
        for (int i = 0; i < p.rows; ++i) {
            Rat aij = p.b[i] < 0 ? -p.A[i][j] : p.A[i][j];
            aty += sol.dual[i] * aij;
        }
        if (aty > p.c[j]) sol.dual_feasible = false;
    }
    return sol;
}

} // namespace fig

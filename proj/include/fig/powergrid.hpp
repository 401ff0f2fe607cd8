#pragma once

#include <string>
#include <vector>

#include "fig/knapsack.hpp" // GameDecision, UmikInstance
#include "fig/numeric.hpp"

namespace fig {

struct Generator {
    int bus = 0;
    Rat base_output; // output before any attack
    Rat ramp_down;
    Rat ramp_up;
    Rat max_output;
};

struct GridLine {
    int from = 0;
    int to = 0;
    Rat capacity;
    Rat reactance;     // > 0
    Int attack_weight; // z_l
    Rat fortify_weight = Rat(1); // k_l; the game fixes unit fortification
};

struct GridInstance {
    int bus_count = 0;
    std::vector<Rat> demand; // per bus
    std::vector<Generator> generators;
    std::vector<GridLine> lines;
    int fortify_budget = 0; // K, cardinality
    Int attack_budget;      // Z, weighted by attack_weight
    Rat shed_goal;          // K'

    void check_invariants() const;
};

inline constexpr int kTepgfuLineLimit = 20;

struct DispatchResult {
    Rat total_shed;
    std::vector<Rat> line_flow;   // 0 on attacked lines
    std::vector<Rat> gen_output;
    std::vector<Rat> bus_shed;
    std::vector<Rat> angle;
    Rat lp_objective;
    Rat lp_dual_objective; // equals lp_objective at every optimum
};

// Exact optimum of the DC dispatch program with the attacked lines
// removed, by rational two-phase simplex; verifies primal/dual equality
// on every solve.
DispatchResult min_load_shed(const GridInstance &grid, uint64_t attacked_lines);

// Closed-form optimum for the star grids built by compile_ubik_to_tepgfu:
// the shed equals the demand behind the attacked leaf lines.
Rat star_shed_closed_form(const GridInstance &grid, uint64_t attacked_lines);

// true iff some fortification F (|F| <= K) keeps the minimum shed at or
// below the goal for every attack within the weighted budget avoiding F.
GameDecision tepgfu_decide(const GridInstance &inst);

struct GridCompiled {
    GridInstance instance;
    std::vector<int> item_line; // line index per knapsack item
};

// Bilevel knapsack instances into the grid game: one generator, one leaf
// bus and line per item, capacity = demand, free ramp-down.
GridCompiled compile_ubik_to_tepgfu(const UmikInstance &u);

std::string grid_to_json(const GridInstance &inst);
GridInstance grid_from_json(const std::string &text);
std::string grid_to_dot(const GridInstance &inst);

} // namespace fig

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fig/knapsack.hpp"
#include "fig/numeric.hpp"

namespace fig {

struct SpArc {
    int from = 0;
    int to = 0;
    Int length;
    Int attack_cost;
};

struct SpGraph {
    int node_count = 0;
    std::vector<SpArc> arcs;
    int s = 0;
    int t = 0;

    void check_invariants() const;
};

inline constexpr int kSpipufArcLimit = 36;

struct SpipufInstance {
    SpGraph graph;
    int fortify_budget = 0; // B', cardinality
    Int attack_budget;      // W', weighted by attack_cost
    Int goal;               // K'

    void check_invariants() const;
};

// Exact shortest s-t length over the surviving arcs; nullopt = unreachable.
std::optional<Int> shortest_path(const SpGraph &g, uint64_t removed_arcs = 0);

// true iff some fortification F (|F| <= B') keeps the shortest path
// strictly below the goal for every attack within the weighted budget;
// an unreachable t counts as >= goal.
GameDecision spipuf_decide(const SpipufInstance &inst);

struct PathCompiled {
    SpipufInstance instance;
    // arc index of (v_{i-1}, v_i') per item: the only attackable arcs
    std::vector<int> item_arc;
    // arc index of the (v_{i-1}, v_i) detour arc per item
    std::vector<int> detour_arc;
};

// Bilevel knapsack instances into the shortest-path game: one chain
// gadget per item, cost W+1 on undeletable arcs, goal K + 2n.
PathCompiled compile_ubik_to_spipuf(const UmikInstance &u);

std::string path_to_json(const SpipufInstance &inst);
SpipufInstance path_from_json(const std::string &text);
std::string path_to_dot(const SpGraph &g);

} // namespace fig

#pragma once

#include <string>
#include <vector>

#include "fig/knapsack.hpp" // GameDecision
#include "fig/numeric.hpp"
#include "fig/qbf.hpp"

namespace fig {

struct FlowArc {
    int from = 0;
    int to = 0;
    Int cap;
};

struct FlowNetwork {
    int node_count = 0;
    std::vector<FlowArc> arcs; // parallel arcs allowed
    int s = 0;
    int t = 1;

    void check_invariants() const;
};

inline constexpr int kUmfipfArcLimit = 48;
inline constexpr int kUmfipfAttackLimit = 4;

// Exact integral max flow by shortest augmenting paths.
Int max_flow(const FlowNetwork &net);
Int max_flow_removed(const FlowNetwork &net, uint64_t removed_arcs);

// Same search over exact rational capacities (used to confirm that the
// integrality scaling applied by the compiler preserves decisions).
Rat max_flow_rational(int node_count, const std::vector<std::pair<int, int>> &arcs,
                      const std::vector<Rat> &caps, int s, int t,
                      uint64_t removed_arcs = 0);

struct MfipfInstance {
    FlowNetwork network;
    Int flow_goal;
    int fortify_budget = 0; // B, cardinality
    int attack_budget = 0;  // W, cardinality

    void check_invariants() const;
};

// true iff some fortification F (|F| <= B) keeps the flow at or above
// the goal for every attack D within budget avoiding F.
GameDecision umfipf_decide(const MfipfInstance &inst);

struct FlowArcProvenance {
    enum class Kind { SLitX, SLitY, XInternal, XOut, PairIn, PairOut, ClauseIn, ClauseOut };
    Kind kind;
    int var = -1;
    bool negated = false;
    int clause = -1;
};

struct FlowCompiled {
    MfipfInstance instance;
    std::vector<FlowArcProvenance> arcs;
    QbfInstance source;
    // unscaled gadget constants; every emitted capacity and the goal are
    // multiplied by scale = 2|Y| so the per-gadget capacity c_X/(2|Y|)
    // becomes integral (positive scaling preserves the decision)
    Rat c_x, c_y, c_y_prime, c_u;
    Int scale;
};

// Exists-X ForAll-Y always-satisfied formulas into the flow game, with
// the X / Y / clause gadgets and capacity constants of the construction.
FlowCompiled compile_b2sat_to_umfipf(const QbfInstance &q);

// Harness-only variant that also accepts |Y| = 1, outside the
// construction's stated validity domain; results there are recorded,
// never asserted.
FlowCompiled compile_b2sat_to_umfipf_any(const QbfInstance &q);

std::string flow_to_json(const MfipfInstance &inst);
MfipfInstance flow_from_json(const std::string &text);
std::string flow_to_dot(const FlowNetwork &net);

} // namespace fig

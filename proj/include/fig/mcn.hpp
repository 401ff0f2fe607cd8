#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fig/knapsack.hpp" // GameDecision
#include "fig/qbf.hpp"

namespace fig {

struct McnInstance {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges; // undirected, simple
    int vaccinate_budget = 0;  // Omega
    int infect_budget = 0;     // Phi
    int protect_budget = 0;    // Lambda
    int goal = 0;              // saved-vertex goal K

    void check_invariants() const;
    std::vector<std::vector<int>> adjacency() const;
};

inline constexpr int kUmcnFullLimit = 26;
inline constexpr int kUmcnPrunedLimit = 40;

enum class VertexState {
    Vaccinated,
    Protected,
    DirectlyInfected,
    IndirectlyInfected,
    SavedPlain,
};

struct PlayOutcome {
    uint64_t saved = 0;
    uint64_t infected = 0;
    int saved_count = 0;
    std::vector<VertexState> states;
};

// Least fixpoint of contagion from I across edges, blocked only at
// vaccinated or protected vertices. D, I, P must be disjoint where the
// game requires it (I from D, P from I).
PlayOutcome propagate(const McnInstance &inst, uint64_t vaccinated, uint64_t infected,
                      uint64_t protected_set);

struct UmcnOptions {
    bool prune = true;    // inner search restricted to baseline-infected vertices
    bool parallel = false; // evaluate top-level vaccination candidates concurrently
};

// true iff some vaccination D defeats every infection I: the defender can
// protect P with at least `goal` vertices saved.
GameDecision umcn_decide(const McnInstance &inst, const UmcnOptions &opts = {});

// Best achievable saved count for fixed vaccination and infection.
int umcn_inner_best(const McnInstance &inst, uint64_t vaccinated, uint64_t infected,
                    bool prune = true);

struct McnVertexProvenance {
    enum class Kind { LitX, LitY, LitZ, CSetX, CSetZ, SSet, KSet, ClauseVtx };
    Kind kind;
    int var = -1;          // literal / S / K vertices
    bool negated = false;  // literal / S vertices
    int clause = -1;       // clause vertices
    int assignment = 0;    // clause vertices: bitmask of true literals
};

struct McnCompiled {
    McnInstance instance;
    std::vector<McnVertexProvenance> vertices;
    QbfInstance source;
    int gamma_x = 0, gamma_y = 0, gamma_z = 0;

    int lit_vertex(int var, bool negated) const;
};

// Exists-X ForAll-Y Exists-Z satisfiability formulas into the critical
// node game: literal vertices, pair/star/shared gadgets sized by the
// Gamma constants, complete X+Z against Y edges, and one vertex per
// satisfying local clause assignment.
McnCompiled compile_b3sat_to_umcn(const QbfInstance &q);

std::string mcn_to_json(const McnInstance &inst);
McnInstance mcn_from_json(const std::string &text);
std::string mcn_to_dot(const McnInstance &inst, const PlayOutcome *play = nullptr);

} // namespace fig

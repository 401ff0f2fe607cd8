#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fig/errors.hpp"
#include "fig/numeric.hpp"
#include "fig/qbf.hpp" // Role

namespace fig {

// Shared alternating-decision evaluator. All levels pick subsets of one
// ground set (indices 0..n-1, n <= 64), encoded as bit masks.

struct Budget {
    enum class Kind { Cardinality, Weighted };
    Kind kind = Kind::Cardinality;
    int card_limit = 0;
    std::vector<Int> costs; // Weighted only; size = ground set size
    Int weight_limit = 0;

    static Budget cardinality(int limit) {
        Budget b;
        b.kind = Kind::Cardinality;
        b.card_limit = limit;
        return b;
    }
    static Budget weighted(std::vector<Int> costs, Int limit) {
        Budget b;
        b.kind = Kind::Weighted;
        b.costs = std::move(costs);
        b.weight_limit = std::move(limit);
        return b;
    }
};

struct Exclusion {
    enum class Kind { None, AllPrevious, Levels };
    Kind kind = Kind::None;
    std::vector<int> levels; // Kind::Levels: indices of earlier levels whose
                             // chosen sets are unavailable here

    static Exclusion none() { return {}; }
    static Exclusion all_previous() { return {Kind::AllPrevious, {}}; }
    static Exclusion of_levels(std::vector<int> ls) { return {Kind::Levels, std::move(ls)}; }
};

struct LevelSpec {
    Role role = Role::Exists;
    int ground_set_size = 0;
    Budget budget;
    Exclusion exclusion;
    int channel = 0; // levels whose sets the leaf/exclusions read as one union
};

struct GameState {
    std::vector<uint64_t> chosen; // mask per completed level
};

// Equal states (same per-level sets) map to equal keys; stable across runs.
std::vector<uint64_t> canonical_key(const GameState &state);

struct EngineOptions {
    bool prune = true;        // short-circuit on first deciding child
    bool memo = false;        // memoize on (level, per-channel unions)
    std::vector<int> leaf_channels; // channels the leaf predicate reads; used
                                    // to narrow the leaf-level memo key when
                                    // memo is enabled
};

struct EngineResult {
    bool value = false;
    std::optional<uint64_t> witness; // winning top-level set (top Exists, value true)
};

using LeafPredicate = std::function<bool(const GameState &)>;

// Literal quantifier evaluation over all feasible set sequences. Feasible
// sets are enumerated by increasing cardinality, then lexicographically,
// so witnesses are canonical and reproducible. Pruning and memoization
// never change the value.
EngineResult decide_alternating(const std::vector<LevelSpec> &levels,
                                const LeafPredicate &leaf,
                                const EngineOptions &opts = {});

// Enumerates budget-feasible subsets of `avail` in canonical order,
// calling visit(mask); stops early when visit returns true.
void for_each_feasible_set(uint64_t avail, const Budget &budget,
                           const std::function<bool(uint64_t)> &visit);

} // namespace fig

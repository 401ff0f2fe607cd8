#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fig/numeric.hpp"

namespace fig {

struct KnapsackItem {
    Int weight;
    Int profit;

    friend bool operator==(const KnapsackItem &, const KnapsackItem &) = default;
};

// Items plus the data of the (m+1)-level unit-cost interdiction game.
// level_budgets = [B_2, ..., B_{m+1}]; m=1 is UBIK, m=2 is UTIK.
struct UmikInstance {
    std::vector<KnapsackItem> items;
    Int capacity;    // W
    Int goal;        // K bar
    std::vector<int> level_budgets;
    int m = 1;

    void check_invariants() const;
    // weights and profits all >= 1, as the source constructions require
    bool paper_conformant() const;
};

inline constexpr int kKpItemLimit = 25;
inline constexpr int kUmikLevelLimit = 4; // m <= 4

// Exact maximum profit over subsets with total weight <= W, by pruned
// exhaustive enumeration. Throws SizeLimitError beyond kKpItemLimit.
Int kp_max_profit(const std::vector<KnapsackItem> &items, const Int &W);

// Same, restricted to the items whose bit is set in `avail`.
Int kp_max_profit_masked(const std::vector<KnapsackItem> &items, uint64_t avail,
                         const Int &W);

struct GameDecision {
    bool value = false;
    std::optional<std::vector<int>> witness; // canonical top-level set
};

// true iff some attack I2 (|I2| <= B2) leaves every feasible packing
// below the profit goal.
GameDecision ubik_decide(const UmikInstance &inst);

// true iff some fortification I3 defeats every attack: for all I2 within
// budget avoiding I3, some packing from the uninterdicted items reaches
// the goal.
GameDecision utik_decide(const UmikInstance &inst);

// Literal evaluation of the alternating question for any m (guarded at
// m <= 4): top level Exists, strict alternation, fortified or interdicted
// items stay fixed in later rounds, the final packing draws from the
// items never interdicted, and the leaf comparison is profit >= goal for
// even m and profit < goal for odd m.
GameDecision umik_decide(const UmikInstance &inst);

// Polynomial greedy for the all-unit-profit or all-unit-weight families;
// agrees with umik_decide there.
bool umik_unit_fastpath(const UmikInstance &inst);

// JSON schema: {"items":[{"w":"...","p":"..."}],"W":"...","K":"...",
// "budgets":[...],"m":N} with big integers as decimal strings.
std::string umik_to_json(const UmikInstance &inst);
UmikInstance umik_from_json(const std::string &text);

} // namespace fig

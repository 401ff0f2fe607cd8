#include "fig/knapsack.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "fig/engine.hpp"
#include "fig/errors.hpp"

namespace fig {

void UmikInstance::check_invariants() const {
    if (m < 1) throw ShapeError("umik: m >= 1 required");
    if (static_cast<int>(level_budgets.size()) != m)
        throw ShapeError("umik: need one budget per level above the knapsack");
    for (int b : level_budgets)
        if (b < 0) throw ShapeError("umik: negative budget");
    if (capacity < 0 || goal < 0) throw ShapeError("umik: negative capacity or goal");
    for (const auto &it : items)
        if (it.weight < 0 || it.profit < 0)
            throw ShapeError("umik: negative weight or profit");
}

bool UmikInstance::paper_conformant() const {
    for (const auto &it : items)
        if (it.weight < 1 || it.profit < 1) return false;
    return true;
}

namespace {

struct KpSearch {
    std::vector<int> order;          // item indices, heaviest first
    std::vector<Int> suffix_profit;  // max additional profit from order[i..]
    const std::vector<KnapsackItem> *items;
    Int best;

    void run(size_t i, const Int &cap, const Int &profit) {
        if (profit > best) best = profit;
        if (i == order.size()) return;
        if (profit + suffix_profit[i] <= best) return;
        for (size_t j = i; j < order.size(); ++j) {
            const auto &it = (*items)[order[j]];
            if (it.weight <= cap) {
                run(j + 1, cap - it.weight, profit + it.profit);
                // bound may have improved; re-test before further branches
                if (profit + suffix_profit[j] <= best) return;
            }
        }
    }
};

Int kp_max(const std::vector<KnapsackItem> &items, const std::vector<int> &live,
           const Int &W) {
    if (live.size() > kKpItemLimit)
        throw SizeLimitError("kp_max_profit: more than 25 available items");
    if (W < 0) throw ShapeError("kp_max_profit: negative capacity");
    KpSearch s;
    s.items = &items;
    s.order = live;
    std::sort(s.order.begin(), s.order.end(), [&](int a, int b) {
        if (items[a].weight != items[b].weight) return items[a].weight > items[b].weight;
        return a < b;
    });
    s.suffix_profit.assign(s.order.size() + 1, 0);
    for (size_t i = s.order.size(); i-- > 0;)
        s.suffix_profit[i] = s.suffix_profit[i + 1] + items[s.order[i]].profit;
    s.best = 0;
    s.run(0, W, 0);
    return s.best;
}

std::vector<int> mask_to_set(uint64_t mask) {
    std::vector<int> v;
    for (int i = 0; i < 64; ++i)
        if (mask & (uint64_t{1} << i)) v.push_back(i);
    return v;
}

} // namespace

Int kp_max_profit(const std::vector<KnapsackItem> &items, const Int &W) {
    std::vector<int> all(items.size());
    std::iota(all.begin(), all.end(), 0);
    return kp_max(items, all, W);
}

Int kp_max_profit_masked(const std::vector<KnapsackItem> &items, uint64_t avail,
                         const Int &W) {
    std::vector<int> live;
    for (size_t i = 0; i < items.size(); ++i)
        if (avail & (uint64_t{1} << i)) live.push_back(static_cast<int>(i));
    return kp_max(items, live, W);
}

namespace {

// Shared engine harness for the alternating game. Levels are numbered
// m+1 (top) down to 2; even-numbered levels are interdiction rounds.
GameDecision run_umik_game(const UmikInstance &inst) {
    inst.check_invariants();
    if (inst.m > kUmikLevelLimit)
        throw SizeLimitError("umik_decide: m > 4");
    int n = static_cast<int>(inst.items.size());
    if (n > kKpItemLimit)
        throw SizeLimitError("umik_decide: more than 25 items");

    std::vector<LevelSpec> levels;
    std::vector<int> interdiction_level_indices;
    for (int idx = 0; idx < inst.m; ++idx) {
        int lvlno = inst.m + 1 - idx; // game level number
        LevelSpec lv;
        lv.role = idx % 2 == 0 ? Role::Exists : Role::ForAll;
        lv.ground_set_size = n;
        lv.budget = Budget::cardinality(inst.level_budgets[lvlno - 2]);
        lv.exclusion = Exclusion::all_previous();
        lv.channel = lvlno % 2 == 0 ? 1 : 0; // 1 = interdiction rounds
        levels.push_back(lv);
        if (lvlno % 2 == 0) interdiction_level_indices.push_back(idx);
    }

    uint64_t full = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    bool leaf_ge = inst.m % 2 == 0;
    auto leaf = [&](const GameState &st) {
        uint64_t interdicted = 0;
        for (int li : interdiction_level_indices) interdicted |= st.chosen[li];
        Int v = kp_max_profit_masked(inst.items, full & ~interdicted, inst.capacity);
        return leaf_ge ? v >= inst.goal : v < inst.goal;
    };

    EngineOptions opts;
    opts.prune = true;
    opts.memo = true;
    opts.leaf_channels = {1};
    EngineResult r = decide_alternating(levels, leaf, opts);
    GameDecision d;
    d.value = r.value;
    if (r.witness) d.witness = mask_to_set(*r.witness);
    return d;
}

} // namespace

GameDecision ubik_decide(const UmikInstance &inst) {
    inst.check_invariants();
    if (inst.m != 1) throw ShapeError("ubik_decide: m must be 1");
    int n = static_cast<int>(inst.items.size());
    if (n > kKpItemLimit) throw SizeLimitError("ubik_decide: more than 25 items");
    uint64_t full = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    GameDecision d;
    for_each_feasible_set(full, Budget::cardinality(inst.level_budgets[0]),
                          [&](uint64_t attack) {
                              Int v = kp_max_profit_masked(inst.items, full & ~attack,
                                                           inst.capacity);
                              if (v < inst.goal) {
                                  d.value = true;
                                  d.witness = mask_to_set(attack);
                                  return true;
                              }
                              return false;
                          });
    return d;
}

GameDecision utik_decide(const UmikInstance &inst) {
    inst.check_invariants();
    if (inst.m != 2) throw ShapeError("utik_decide: m must be 2");
    return run_umik_game(inst);
}

GameDecision umik_decide(const UmikInstance &inst) { return run_umik_game(inst); }

bool umik_unit_fastpath(const UmikInstance &inst) {
    inst.check_invariants();
    bool unit_w = true, unit_p = true;
    for (const auto &it : inst.items) {
        if (it.weight != 1) unit_w = false;
        if (it.profit != 1) unit_p = false;
    }
    if (!unit_w && !unit_p)
        throw ShapeError("umik_unit_fastpath: neither weights nor profits unitary");

    // Defender value order: by profit when weights are unit, by lightness
    // when profits are unit. Every round fixes its budget's prefix of the
    // not-yet-fixed items in this order.
    int n = static_cast<int>(inst.items.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (unit_w) {
            if (inst.items[a].profit != inst.items[b].profit)
                return inst.items[a].profit > inst.items[b].profit;
        } else {
            if (inst.items[a].weight != inst.items[b].weight)
                return inst.items[a].weight < inst.items[b].weight;
        }
        return a < b;
    });

    std::vector<bool> fixed(n, false);
    std::vector<bool> interdicted(n, false);
    for (int idx = 0; idx < inst.m; ++idx) {
        int lvlno = inst.m + 1 - idx;
        int budget = inst.level_budgets[lvlno - 2];
        int taken = 0;
        for (int i : order) {
            if (taken == budget) break;
            if (fixed[i]) continue;
            fixed[i] = true;
            if (lvlno % 2 == 0) interdicted[i] = true;
            ++taken;
        }
    }

    // exact knapsack over the survivors; both unit cases are greedy-exact
    Int best = 0;
    if (unit_w) {
        Int cap = inst.capacity;
        for (int i : order)
            if (!interdicted[i] && cap >= 1) { best += inst.items[i].profit; cap -= 1; }
    } else {
        Int cap = inst.capacity;
        for (int i : order)
            if (!interdicted[i] && inst.items[i].weight <= cap) {
                best += 1;
                cap -= inst.items[i].weight;
            }
    }
    return inst.m % 2 == 0 ? best >= inst.goal : best < inst.goal;
}

std::string umik_to_json(const UmikInstance &inst) {
    nlohmann::ordered_json j;
    j["items"] = nlohmann::ordered_json::array();
    for (const auto &it : inst.items)
        j["items"].push_back({{"w", to_dec(it.weight)}, {"p", to_dec(it.profit)}});
    j["W"] = to_dec(inst.capacity);
    j["K"] = to_dec(inst.goal);
    j["budgets"] = inst.level_budgets;
    j["m"] = inst.m;
    return j.dump(2) + "\n";
}

UmikInstance umik_from_json(const std::string &text) {
    UmikInstance inst;
    try {
        auto j = nlohmann::json::parse(text);
        for (const auto &it : j.at("items"))
            inst.items.push_back({int_from_dec(it.at("w").get<std::string>()),
                                  int_from_dec(it.at("p").get<std::string>())});
        inst.capacity = int_from_dec(j.at("W").get<std::string>());
        inst.goal = int_from_dec(j.at("K").get<std::string>());
        inst.level_budgets = j.at("budgets").get<std::vector<int>>();
        inst.m = j.at("m").get<int>();
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("umik json: ") + e.what());
    }
    inst.check_invariants();
    return inst;
}

} // namespace fig

#include "fig/engine.hpp"

#include <bit>
#include <map>

namespace fig {

std::vector<uint64_t> canonical_key(const GameState &state) {
    std::vector<uint64_t> key;
    key.reserve(state.chosen.size() + 1);
    key.push_back(state.chosen.size());
    for (uint64_t m : state.chosen) key.push_back(m);
    return key;
}

namespace {

// combinations of `avail` bits of size k, lexicographic on sorted index lists
bool combos(const std::vector<int> &elems, size_t start, int k, uint64_t acc,
            const Budget &budget, const Int &cost_acc,
            const std::function<bool(uint64_t)> &visit) {
    if (k == 0) return visit(acc);
    for (size_t i = start; i + k <= elems.size(); ++i) {
        int e = elems[i];
        if (budget.kind == Budget::Kind::Weighted) {
            Int c = cost_acc + budget.costs[e];
            if (c > budget.weight_limit) continue;
            if (combos(elems, i + 1, k - 1, acc | (uint64_t{1} << e), budget, c, visit))
                return true;
        } else {
            if (combos(elems, i + 1, k - 1, acc | (uint64_t{1} << e), budget, cost_acc, visit))
                return true;
        }
    }
    return false;
}

} // namespace

void for_each_feasible_set(uint64_t avail, const Budget &budget,
                           const std::function<bool(uint64_t)> &visit) {
    std::vector<int> elems;
    for (int i = 0; i < 64; ++i)
        if (avail & (uint64_t{1} << i)) elems.push_back(i);
    int maxk = static_cast<int>(elems.size());
    if (budget.kind == Budget::Kind::Cardinality)
        maxk = std::min(maxk, budget.card_limit);
    for (int k = 0; k <= maxk; ++k)
        if (combos(elems, 0, k, 0, budget, Int(0), visit)) return;
}

namespace {

struct Evaluator {
    const std::vector<LevelSpec> &levels;
    const LeafPredicate &leaf;
    const EngineOptions &opts;
    int n_channels = 0;
    std::map<std::vector<uint64_t>, bool> memo;

    uint64_t excluded_mask(const GameState &st, const LevelSpec &lv) const {
        uint64_t m = 0;
        switch (lv.exclusion.kind) {
        case Exclusion::Kind::None: break;
        case Exclusion::Kind::AllPrevious:
            for (uint64_t c : st.chosen) m |= c;
            break;
        case Exclusion::Kind::Levels:
            for (int li : lv.exclusion.levels) m |= st.chosen.at(li);
            break;
        }
        return m;
    }

    std::vector<uint64_t> channel_unions(const GameState &st) const {
        std::vector<uint64_t> u(n_channels, 0);
        for (size_t i = 0; i < st.chosen.size(); ++i)
            u[levels[i].channel] |= st.chosen[i];
        return u;
    }

    bool eval(size_t idx, GameState &st) {
        if (idx == levels.size()) {
            if (!opts.memo || opts.leaf_channels.empty()) return leaf(st);
            auto u = channel_unions(st);
            std::vector<uint64_t> key{static_cast<uint64_t>(idx) | (uint64_t{1} << 63)};
            for (int c : opts.leaf_channels) key.push_back(u[c]);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
            bool v = leaf(st);
            memo.emplace(std::move(key), v);
            return v;
        }
        if (opts.memo && idx > 0) {
            std::vector<uint64_t> key{static_cast<uint64_t>(idx)};
            for (uint64_t u : channel_unions(st)) key.push_back(u);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
            bool v = eval_level(idx, st);
            memo.emplace(std::move(key), v);
            return v;
        }
        return eval_level(idx, st);
    }

    bool eval_level(size_t idx, GameState &st) {
        const LevelSpec &lv = levels[idx];
        uint64_t ground = lv.ground_set_size == 64
                              ? ~uint64_t{0}
                              : (uint64_t{1} << lv.ground_set_size) - 1;
        uint64_t avail = ground & ~excluded_mask(st, lv);
        bool exists = lv.role == Role::Exists;
        bool acc = !exists;
        for_each_feasible_set(avail, lv.budget, [&](uint64_t set) {
            st.chosen.push_back(set);
            bool v = eval(idx + 1, st);
            st.chosen.pop_back();
            if (exists && v) { acc = true; return opts.prune; }
            if (!exists && !v) { acc = false; return opts.prune; }
            return false;
        });
        return acc;
    }
};

} // namespace

EngineResult decide_alternating(const std::vector<LevelSpec> &levels,
                                const LeafPredicate &leaf,
                                const EngineOptions &opts) {
    if (levels.empty()) throw ShapeError("engine: at least one level required");
    int n = levels.front().ground_set_size;
    for (const auto &lv : levels) {
        if (lv.ground_set_size != n)
            throw ShapeError("engine: all levels must share one ground set");
        if (n < 0 || n > 64) throw SizeLimitError("engine: ground set must have <= 64 elements");
        if (lv.budget.kind == Budget::Kind::Cardinality && lv.budget.card_limit < 0)
            throw ShapeError("engine: negative budget");
        if (lv.budget.kind == Budget::Kind::Weighted &&
            static_cast<int>(lv.budget.costs.size()) != n)
            throw ShapeError("engine: weighted budget cost list must match ground set");
    }
    Evaluator ev{levels, leaf, opts};
    for (const auto &lv : levels) ev.n_channels = std::max(ev.n_channels, lv.channel + 1);

    GameState st;
    EngineResult res;
    if (levels.front().role == Role::Exists) {
        const LevelSpec &top = levels.front();
        uint64_t ground = top.ground_set_size == 64
                              ? ~uint64_t{0}
                              : (uint64_t{1} << top.ground_set_size) - 1;
        bool found = false;
        uint64_t first_witness = 0;
        for_each_feasible_set(ground, top.budget, [&](uint64_t set) {
            st.chosen.push_back(set);
            bool v = ev.eval(1, st);
            st.chosen.pop_back();
            if (v && !found) {
                found = true;
                first_witness = set;
                return opts.prune;
            }
            return false;
        });
        res.value = found;
        if (found) res.witness = first_witness;
    } else {
        res.value = ev.eval(0, st);
    }
    return res;
}

} // namespace fig

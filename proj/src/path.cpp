#include "fig/path.hpp"

#include <queue>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fig/engine.hpp"
#include "fig/errors.hpp"

namespace fig {

void SpGraph::check_invariants() const {
    if (node_count < 1) throw ShapeError("spgraph: empty node set");
    if (s < 0 || s >= node_count || t < 0 || t >= node_count)
        throw ShapeError("spgraph: s/t out of range");
    for (const auto &a : arcs) {
        if (a.from < 0 || a.from >= node_count || a.to < 0 || a.to >= node_count)
            throw ShapeError("spgraph: arc endpoint out of range");
        if (a.length < 0) throw ShapeError("spgraph: negative length");
        if (a.attack_cost < 0) throw ShapeError("spgraph: negative attack cost");
    }
}

void SpipufInstance::check_invariants() const {
    graph.check_invariants();
    if (fortify_budget < 0 || attack_budget < 0 || goal < 0)
        throw ShapeError("spipuf: negative budget or goal");
}

std::optional<Int> shortest_path(const SpGraph &g, uint64_t removed_arcs) {
    g.check_invariants();
    std::vector<std::vector<std::pair<int, Int>>> adj(g.node_count);
    for (size_t i = 0; i < g.arcs.size(); ++i) {
        if (removed_arcs & (uint64_t{1} << i)) continue;
        adj[g.arcs[i].from].emplace_back(g.arcs[i].to, g.arcs[i].length);
    }
    std::vector<std::optional<Int>> dist(g.node_count);
    using Entry = std::pair<Int, int>;
    auto cmp = [](const Entry &a, const Entry &b) { return a.first > b.first; };
    std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> pq(cmp);
    dist[g.s] = 0;
    pq.push({0, g.s});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (!dist[u] || *dist[u] < d) continue;
        for (const auto &[v, len] : adj[u]) {
            Int nd = d + len;
            if (!dist[v] || nd < *dist[v]) {
                dist[v] = nd;
                pq.push({nd, v});
            }
        }
    }
    return dist[g.t];
}

GameDecision spipuf_decide(const SpipufInstance &inst) {
    inst.check_invariants();
    int na = static_cast<int>(inst.graph.arcs.size());
    if (na > kSpipufArcLimit) throw SizeLimitError("spipuf_decide: too many arcs");

    std::vector<Int> costs;
    for (const auto &a : inst.graph.arcs) costs.push_back(a.attack_cost);
    std::vector<LevelSpec> levels(2);
    levels[0] = {Role::Exists, na, Budget::cardinality(inst.fortify_budget),
                 Exclusion::none(), 0};
    levels[1] = {Role::ForAll, na, Budget::weighted(costs, inst.attack_budget),
                 Exclusion::of_levels({0}), 1};
    auto leaf = [&](const GameState &st) {
        auto d = shortest_path(inst.graph, st.chosen[1]);
        return d && *d < inst.goal;
    };
    EngineOptions opts;
    opts.memo = true;
    opts.leaf_channels = {1};
    EngineResult r = decide_alternating(levels, leaf, opts);
    GameDecision d;
    d.value = r.value;
    if (r.witness) {
        std::vector<int> w;
        for (int i = 0; i < na; ++i)
            if (*r.witness & (uint64_t{1} << i)) w.push_back(i);
        d.witness = w;
    }
    return d;
}

PathCompiled compile_ubik_to_spipuf(const UmikInstance &u) {
    u.check_invariants();
    if (u.m != 1) throw ShapeError("compile_ubik_to_spipuf: UBIK input required (m=1)");
    int n = static_cast<int>(u.items.size());
    PathCompiled out;
    SpGraph g;
    g.node_count = 2 * n + 1; // v_0..v_n and v_1'..v_n'
    g.s = 0;
    g.t = n == 0 ? 0 : n;
    Int big_cost = u.capacity + 1;
    for (int i = 0; i < n; ++i) {
        int vprev = i;
        int vi = i + 1;
        int vip = n + 1 + i;
        out.detour_arc.push_back(static_cast<int>(g.arcs.size()));
        g.arcs.push_back({vprev, vi, u.items[i].profit + 2, big_cost});
        out.item_arc.push_back(static_cast<int>(g.arcs.size()));
        g.arcs.push_back({vprev, vip, 1, u.items[i].weight});
        g.arcs.push_back({vip, vi, 1, big_cost});
    }
    out.instance.graph = std::move(g);
    out.instance.fortify_budget = u.level_budgets[0];
    out.instance.attack_budget = u.capacity;
    out.instance.goal = u.goal + 2 * n;
    out.instance.check_invariants();
    return out;
}

std::string path_to_json(const SpipufInstance &inst) {
    nlohmann::ordered_json j;
    j["nodes"] = inst.graph.node_count;
    j["arcs"] = nlohmann::ordered_json::array();
    for (const auto &a : inst.graph.arcs)
        j["arcs"].push_back({{"u", a.from},
                             {"v", a.to},
                             {"len", to_dec(a.length)},
                             {"cost", to_dec(a.attack_cost)}});
    j["s"] = inst.graph.s;
    j["t"] = inst.graph.t;
    j["B"] = inst.fortify_budget;
    j["W"] = to_dec(inst.attack_budget);
    j["K"] = to_dec(inst.goal);
    return j.dump(2) + "\n";
}

SpipufInstance path_from_json(const std::string &text) {
    SpipufInstance inst;
    try {
        auto j = nlohmann::json::parse(text);
        inst.graph.node_count = j.at("nodes").get<int>();
        for (const auto &a : j.at("arcs"))
            inst.graph.arcs.push_back({a.at("u").get<int>(), a.at("v").get<int>(),
                                       int_from_dec(a.at("len").get<std::string>()),
                                       int_from_dec(a.at("cost").get<std::string>())});
        inst.graph.s = j.at("s").get<int>();
        inst.graph.t = j.at("t").get<int>();
        inst.fortify_budget = j.at("B").get<int>();
        inst.attack_budget = int_from_dec(j.at("W").get<std::string>());
        inst.goal = int_from_dec(j.at("K").get<std::string>());
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("path json: ") + e.what());
    }
    inst.check_invariants();
    return inst;
}

std::string path_to_dot(const SpGraph &g) {
    std::ostringstream out;
    out << "digraph sp {\n  rankdir=LR;\n";
    out << "  n" << g.s << " [label=\"s\"];\n";
    out << "  n" << g.t << " [label=\"t\"];\n";
    for (const auto &a : g.arcs)
        out << "  n" << a.from << " -> n" << a.to << " [label=\"" << to_dec(a.length)
            << "," << to_dec(a.attack_cost) << "\"];\n";
    out << "}\n";
    return out.str();
}

} // namespace fig

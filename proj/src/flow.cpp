#include "fig/flow.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fig/engine.hpp"
#include "fig/errors.hpp"

namespace fig {

void FlowNetwork::check_invariants() const {
    if (node_count < 2) throw ShapeError("flow: need at least s and t");
    if (s == t) throw ShapeError("flow: s and t must differ");
    if (s < 0 || s >= node_count || t < 0 || t >= node_count)
        throw ShapeError("flow: s/t out of range");
    for (const auto &a : arcs) {
        if (a.from < 0 || a.from >= node_count || a.to < 0 || a.to >= node_count)
            throw ShapeError("flow: arc endpoint out of range");
        if (a.cap < 0) throw ShapeError("flow: negative capacity");
    }
}

void MfipfInstance::check_invariants() const {
    network.check_invariants();
    if (fortify_budget < 0 || attack_budget < 0) throw ShapeError("umfipf: negative budget");
    if (flow_goal < 0) throw ShapeError("umfipf: negative flow goal");
}

namespace {

// shortest augmenting paths over a residual arc list
template <class T>
T max_flow_generic(int n, const std::vector<std::pair<int, int>> &arcs,
                   const std::vector<T> &caps, int s, int t, uint64_t removed) {
    struct Edge {
        int to;
        T cap;
        size_t rev;
    };
    std::vector<std::vector<Edge>> g(n);
    for (size_t i = 0; i < arcs.size(); ++i) {
        if (removed & (uint64_t{1} << i)) continue;
        auto [u, v] = arcs[i];
        g[u].push_back({v, caps[i], g[v].size()});
        g[v].push_back({u, T(0), g[u].size() - 1});
    }
    T flow = 0;
    while (true) {
        std::vector<int> prev_node(n, -1), prev_edge(n, -1);
        std::deque<int> q{s};
        prev_node[s] = s;
        while (!q.empty() && prev_node[t] < 0) {
            int u = q.front();
            q.pop_front();
            for (size_t ei = 0; ei < g[u].size(); ++ei) {
                const Edge &e = g[u][ei];
                if (e.cap > 0 && prev_node[e.to] < 0) {
                    prev_node[e.to] = u;
                    prev_edge[e.to] = static_cast<int>(ei);
                    q.push_back(e.to);
                }
            }
        }
        if (prev_node[t] < 0) break;
        T aug = T(-1);
        for (int v = t; v != s; v = prev_node[v]) {
            const Edge &e = g[prev_node[v]][prev_edge[v]];
            if (aug < 0 || e.cap < aug) aug = e.cap;
        }
        for (int v = t; v != s; v = prev_node[v]) {
            Edge &e = g[prev_node[v]][prev_edge[v]];
            e.cap -= aug;
            g[e.to][e.rev].cap += aug;
        }
        flow += aug;
    }
    return flow;
}

} // namespace

Int max_flow(const FlowNetwork &net) { return max_flow_removed(net, 0); }

Int max_flow_removed(const FlowNetwork &net, uint64_t removed_arcs) {
    net.check_invariants();
    std::vector<std::pair<int, int>> arcs;
    std::vector<Int> caps;
    for (const auto &a : net.arcs) {
        arcs.emplace_back(a.from, a.to);
        caps.push_back(a.cap);
    }
    return max_flow_generic<Int>(net.node_count, arcs, caps, net.s, net.t, removed_arcs);
}

Rat max_flow_rational(int node_count, const std::vector<std::pair<int, int>> &arcs,
                      const std::vector<Rat> &caps, int s, int t, uint64_t removed_arcs) {
    return max_flow_generic<Rat>(node_count, arcs, caps, s, t, removed_arcs);
}

GameDecision umfipf_decide(const MfipfInstance &inst) {
    inst.check_invariants();
    int na = static_cast<int>(inst.network.arcs.size());
    if (na > kUmfipfArcLimit) throw SizeLimitError("umfipf_decide: too many arcs");
    if (inst.attack_budget > kUmfipfAttackLimit)
        throw SizeLimitError("umfipf_decide: attack budget beyond desk scale");

    std::vector<LevelSpec> levels(2);
    levels[0] = {Role::Exists, na, Budget::cardinality(inst.fortify_budget),
                 Exclusion::none(), 0};
    levels[1] = {Role::ForAll, na, Budget::cardinality(inst.attack_budget),
                 Exclusion::of_levels({0}), 1};
    auto leaf = [&](const GameState &st) {
        return max_flow_removed(inst.network, st.chosen[1]) >= inst.flow_goal;
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

FlowCompiled compile_b2sat_to_umfipf(const QbfInstance &q) {
    if (q.blocks.size() == 2 && q.blocks[1].vars.size() < 2)
        throw ShapeError("compile_b2sat_to_umfipf: |Y| >= 2 required");
    return compile_b2sat_to_umfipf_any(q);
}

FlowCompiled compile_b2sat_to_umfipf_any(const QbfInstance &q) {
    q.check_invariants();
    if (q.blocks.size() != 2)
        throw ShapeError("compile_b2sat_to_umfipf: exactly 2 blocks required");
    if (q.matrix_negated)
        throw ShapeError("compile_b2sat_to_umfipf: needs the always-satisfied goal family");
    const auto &X = q.blocks[0].vars;
    const auto &Y = q.blocks[1].vars;
    if (X.empty()) throw ShapeError("compile_b2sat_to_umfipf: |X| >= 1 required");
    if (q.matrix.empty()) throw ShapeError("compile_b2sat_to_umfipf: at least one clause");

    int nx = static_cast<int>(X.size());
    int ny = static_cast<int>(Y.size());
    int nc = static_cast<int>(q.matrix.size());

    FlowCompiled out;
    out.source = q;
    out.c_y_prime = Rat(nc + 1);
    out.c_y = Rat(2 * ny - 1) * out.c_y_prime;
    out.c_x = Rat(2 * ny - 1) * out.c_y;
    out.c_u = out.c_x / Rat(2 * ny);
    out.scale = 2 * ny;

    auto scaled = [&](const Rat &v) -> Int {
        Rat r = v * out.scale;
        if (boost::multiprecision::denominator(r) != 1)
            throw ShapeError("compile_b2sat_to_umfipf: scaling failed to restore integrality");
        return boost::multiprecision::numerator(r);
    };

    auto gamma = [&](int var, bool neg) {
        int g = 0;
        for (const auto &c : q.matrix)
            for (const auto &l : c.literals)
                if (l.var == var && l.negated == neg) ++g;
        return g;
    };

    FlowNetwork net;
    net.s = 0;
    net.t = 1;
    int next_node = 2;
    std::vector<FlowArcProvenance> prov;

    // literal entry nodes; X literals also feed clause gadgets
    std::vector<int> lit_node(2 * q.var_count(), -1);
    auto lit_id = [&](int var, bool neg) { return 2 * var + (neg ? 1 : 0); };

    for (int x : X) {
        int vx = next_node++;
        int vxb = next_node++;
        lit_node[lit_id(x, false)] = vx;
        lit_node[lit_id(x, true)] = vxb;
        net.arcs.push_back({0, vx, scaled(out.c_x + gamma(x, false))});
        prov.push_back({FlowArcProvenance::Kind::SLitX, x, false, -1});
        net.arcs.push_back({0, vxb, scaled(out.c_x + gamma(x, true))});
        prov.push_back({FlowArcProvenance::Kind::SLitX, x, true, -1});
        int M = 3 * ny;
        std::vector<int> u_nodes(M);
        for (int i = 0; i < M; ++i) u_nodes[i] = next_node++;
        for (int i = 0; i < 2 * ny; ++i) {
            net.arcs.push_back({vx, u_nodes[i], scaled(out.c_u)});
            prov.push_back({FlowArcProvenance::Kind::XInternal, x, false, -1});
        }
        for (int i = ny; i < 3 * ny; ++i) {
            net.arcs.push_back({vxb, u_nodes[i], scaled(out.c_u)});
            prov.push_back({FlowArcProvenance::Kind::XInternal, x, true, -1});
        }
        for (int i = 0; i < M; ++i) {
            net.arcs.push_back({u_nodes[i], 1, scaled(out.c_u)});
            prov.push_back({FlowArcProvenance::Kind::XOut, x, false, -1});
        }
    }

    // Y literal list in block order, positive literal first
    std::vector<std::pair<int, bool>> ylits;
    for (int y : Y) {
        ylits.emplace_back(y, false);
        ylits.emplace_back(y, true);
    }
    for (auto [y, neg] : ylits) {
        int v = next_node++;
        lit_node[lit_id(y, neg)] = v;
        net.arcs.push_back({0, v, scaled(out.c_y + gamma(y, neg))});
        prov.push_back({FlowArcProvenance::Kind::SLitY, y, neg, -1});
    }
    for (size_t i = 0; i < ylits.size(); ++i) {
        for (size_t j = i + 1; j < ylits.size(); ++j) {
            int u = next_node++;
            int vi = lit_node[lit_id(ylits[i].first, ylits[i].second)];
            int vj = lit_node[lit_id(ylits[j].first, ylits[j].second)];
            net.arcs.push_back({vi, u, scaled(out.c_y_prime)});
            prov.push_back({FlowArcProvenance::Kind::PairIn, ylits[i].first,
                            ylits[i].second, -1});
            net.arcs.push_back({vj, u, scaled(out.c_y_prime)});
            prov.push_back({FlowArcProvenance::Kind::PairIn, ylits[j].first,
                            ylits[j].second, -1});
            bool complementary =
                ylits[i].first == ylits[j].first && ylits[i].second != ylits[j].second;
            net.arcs.push_back(
                {u, 1, scaled(complementary ? out.c_y_prime : 2 * out.c_y_prime)});
            prov.push_back({FlowArcProvenance::Kind::PairOut, -1, false, -1});
        }
    }

    for (int c = 0; c < nc; ++c) {
        int vc = next_node++;
        for (const auto &l : q.matrix[c].literals) {
            net.arcs.push_back({lit_node[lit_id(l.var, l.negated)], vc, scaled(Rat(1))});
            prov.push_back({FlowArcProvenance::Kind::ClauseIn, l.var, l.negated, c});
        }
        net.arcs.push_back({vc, 1, scaled(Rat(1))});
        prov.push_back({FlowArcProvenance::Kind::ClauseOut, -1, false, c});
    }

    net.node_count = next_node;
    out.instance.network = std::move(net);
    out.instance.fortify_budget = nx;
    out.instance.attack_budget = nx + ny;
    Rat goal = Rat(nx) * out.c_x + Rat(2 * ny * (ny - 1)) * out.c_y_prime + Rat(nc);
    out.instance.flow_goal = scaled(goal);
    out.arcs = std::move(prov);
    out.instance.check_invariants();
    return out;
}

std::string flow_to_json(const MfipfInstance &inst) {
    nlohmann::ordered_json j;
    j["nodes"] = inst.network.node_count;
    j["arcs"] = nlohmann::ordered_json::array();
    for (const auto &a : inst.network.arcs)
        j["arcs"].push_back({{"u", a.from}, {"v", a.to}, {"cap", to_dec(a.cap)}});
    j["s"] = inst.network.s;
    j["t"] = inst.network.t;
    j["K"] = to_dec(inst.flow_goal);
    j["B"] = inst.fortify_budget;
    j["W"] = inst.attack_budget;
    return j.dump(2) + "\n";
}

MfipfInstance flow_from_json(const std::string &text) {
    MfipfInstance inst;
    try {
        auto j = nlohmann::json::parse(text);
        inst.network.node_count = j.at("nodes").get<int>();
        for (const auto &a : j.at("arcs"))
            inst.network.arcs.push_back({a.at("u").get<int>(), a.at("v").get<int>(),
                                         int_from_dec(a.at("cap").get<std::string>())});
        inst.network.s = j.at("s").get<int>();
        inst.network.t = j.at("t").get<int>();
        inst.flow_goal = int_from_dec(j.at("K").get<std::string>());
        inst.fortify_budget = j.at("B").get<int>();
        inst.attack_budget = j.at("W").get<int>();
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("flow json: ") + e.what());
    }
    inst.check_invariants();
    return inst;
}

std::string flow_to_dot(const FlowNetwork &net) {
    std::ostringstream out;
    out << "digraph flow {\n  rankdir=LR;\n";
    out << "  n" << net.s << " [label=\"s\"];\n";
    out << "  n" << net.t << " [label=\"t\"];\n";
    for (const auto &a : net.arcs)
        out << "  n" << a.from << " -> n" << a.to << " [label=\"" << to_dec(a.cap)
            << "\"];\n";
    out << "}\n";
    return out.str();
}

} // namespace fig

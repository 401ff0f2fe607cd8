#include "fig/mcn.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fig/engine.hpp"
#include "fig/errors.hpp"

namespace fig {

void McnInstance::check_invariants() const {
    if (vertex_count < 0 || vertex_count > 64)
        throw ShapeError("mcn: vertex count must be 0..64");
    std::vector<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
            throw ShapeError("mcn: edge endpoint out of range");
        if (u == v) throw ShapeError("mcn: self-loop");
        auto e = std::minmax(u, v);
        seen.emplace_back(e.first, e.second);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw ShapeError("mcn: duplicate edge");
    if (vaccinate_budget < 0 || infect_budget < 0 || protect_budget < 0 || goal < 0)
        throw ShapeError("mcn: negative budget or goal");
}

std::vector<std::vector<int>> McnInstance::adjacency() const {
    std::vector<std::vector<int>> adj(vertex_count);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

namespace {

uint64_t closure(const std::vector<std::vector<int>> &adj, int n, uint64_t blocked,
                 uint64_t seeds) {
    uint64_t infected = seeds;
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (seeds & (uint64_t{1} << v)) stack.push_back(v);
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[u]) {
            uint64_t bit = uint64_t{1} << w;
            if ((infected & bit) || (blocked & bit)) continue;
            infected |= bit;
            stack.push_back(w);
        }
    }
    return infected;
}

} // namespace

PlayOutcome propagate(const McnInstance &inst, uint64_t vaccinated, uint64_t infected,
                      uint64_t protected_set) {
    inst.check_invariants();
    if (infected & vaccinated) throw ShapeError("propagate: infected overlaps vaccinated");
    if (protected_set & infected) throw ShapeError("propagate: protected overlaps infected");
    if (std::popcount(vaccinated) > inst.vaccinate_budget ||
        std::popcount(infected) > inst.infect_budget ||
        std::popcount(protected_set) > inst.protect_budget)
        throw ShapeError("propagate: budget exceeded");
    auto adj = inst.adjacency();
    int n = inst.vertex_count;
    uint64_t closed = closure(adj, n, vaccinated | protected_set, infected);
    PlayOutcome out;
    out.infected = closed;
    uint64_t full = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    out.saved = full & ~closed;
    out.saved_count = std::popcount(out.saved);
    out.states.resize(n);
    for (int v = 0; v < n; ++v) {
        uint64_t bit = uint64_t{1} << v;
        if (vaccinated & bit) out.states[v] = VertexState::Vaccinated;
        else if (protected_set & bit) out.states[v] = VertexState::Protected;
        else if (infected & bit) out.states[v] = VertexState::DirectlyInfected;
        else if (closed & bit) out.states[v] = VertexState::IndirectlyInfected;
        else out.states[v] = VertexState::SavedPlain;
    }
    return out;
}

namespace {

struct McnSolver {
    const McnInstance &inst;
    std::vector<std::vector<int>> adj;
    int n;
    uint64_t full;
    bool prune;
    std::map<std::pair<uint64_t, uint64_t>, bool> memo;

    explicit McnSolver(const McnInstance &i, bool prune_)
        : inst(i), adj(i.adjacency()), n(i.vertex_count), prune(prune_) {
        full = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    }

    int best_saved(uint64_t D, uint64_t I) {
        uint64_t baseline = closure(adj, n, D, I);
        uint64_t ground = prune ? (baseline & ~I) : (full & ~I);
        int best = -1;
        for_each_feasible_set(ground, Budget::cardinality(inst.protect_budget),
                              [&](uint64_t P) {
                                  uint64_t closed = closure(adj, n, D | P, I);
                                  int saved = std::popcount(full & ~closed);
                                  if (saved > best) best = saved;
                                  return false;
                              });
        return best;
    }

    bool defender_reaches(uint64_t D, uint64_t I) {
        auto key = std::make_pair(D, I);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool ok = false;
        uint64_t baseline = closure(adj, n, D, I);
        uint64_t ground = prune ? (baseline & ~I) : (full & ~I);
        for_each_feasible_set(ground, Budget::cardinality(inst.protect_budget),
                              [&](uint64_t P) {
                                  uint64_t closed = closure(adj, n, D | P, I);
                                  if (std::popcount(full & ~closed) >= inst.goal) {
                                      ok = true;
                                      return true;
                                  }
                                  return false;
                              });
        memo.emplace(key, ok);
        return ok;
    }

    bool vaccination_wins(uint64_t D) {
        bool win = true;
        for_each_feasible_set(full & ~D, Budget::cardinality(inst.infect_budget),
                              [&](uint64_t I) {
                                  if (!defender_reaches(D, I)) {
                                      win = false;
                                      return true;
                                  }
                                  return false;
                              });
        return win;
    }
};

} // namespace

int umcn_inner_best(const McnInstance &inst, uint64_t vaccinated, uint64_t infected,
                    bool prune) {
    inst.check_invariants();
    McnSolver s(inst, prune);
    return s.best_saved(vaccinated, infected);
}

GameDecision umcn_decide(const McnInstance &inst, const UmcnOptions &opts) {
    inst.check_invariants();
    int limit = opts.prune ? kUmcnPrunedLimit : kUmcnFullLimit;
    if (inst.vertex_count > limit)
        throw SizeLimitError("umcn_decide: vertex count beyond desk scale");

    GameDecision d;
    if (!opts.parallel) {
        McnSolver s(inst, opts.prune);
        for_each_feasible_set(s.full, Budget::cardinality(inst.vaccinate_budget),
                              [&](uint64_t D) {
                                  if (s.vaccination_wins(D)) {
                                      d.value = true;
                                      std::vector<int> w;
                                      for (int i = 0; i < inst.vertex_count; ++i)
                                          if (D & (uint64_t{1} << i)) w.push_back(i);
                                      d.witness = w;
                                      return true;
                                  }
                                  return false;
                              });
        return d;
    }

    // work-sharing over top-level candidates; the merge picks the first
    // winner in canonical order, so the result is schedule-independent
    std::vector<uint64_t> candidates;
    uint64_t full = inst.vertex_count == 64 ? ~uint64_t{0}
                                            : (uint64_t{1} << inst.vertex_count) - 1;
    for_each_feasible_set(full, Budget::cardinality(inst.vaccinate_budget),
                          [&](uint64_t D) {
                              candidates.push_back(D);
                              return false;
                          });
    std::vector<char> wins(candidates.size(), 0);
    std::atomic<long> cutoff{static_cast<long>(candidates.size())};
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(candidates.size()); ++i) {
        if (i > cutoff.load()) continue;
        McnSolver s(inst, opts.prune);
        if (s.vaccination_wins(candidates[i])) {
            wins[i] = 1;
            long cur = cutoff.load();
            while (i < cur && !cutoff.compare_exchange_weak(cur, i)) {}
        }
    }
    for (size_t i = 0; i < candidates.size(); ++i) {
        if (wins[i]) {
            d.value = true;
            std::vector<int> w;
            for (int v = 0; v < inst.vertex_count; ++v)
                if (candidates[i] & (uint64_t{1} << v)) w.push_back(v);
            d.witness = w;
            break;
        }
    }
    return d;
}

McnCompiled compile_b3sat_to_umcn(const QbfInstance &q) {
    q.check_invariants();
    if (q.blocks.size() != 3)
        throw ShapeError("compile_b3sat_to_umcn: exactly 3 blocks required");
    if (q.matrix_negated)
        throw ShapeError("compile_b3sat_to_umcn: needs the satisfied goal family");
    if (q.matrix.empty()) throw ShapeError("compile_b3sat_to_umcn: at least one clause");
    const auto &X = q.blocks[0].vars;
    const auto &Y = q.blocks[1].vars;
    const auto &Z = q.blocks[2].vars;
    int nx = static_cast<int>(X.size());
    int ny = static_cast<int>(Y.size());
    int nz = static_cast<int>(Z.size());
    int nc = static_cast<int>(q.matrix.size());

    McnCompiled out;
    out.source = q;
    out.gamma_z = nc + 1;
    out.gamma_y = out.gamma_z * nz * (nz - 1) / 2 + 1;
    out.gamma_x = 4 * ny * out.gamma_y + 1;

    McnInstance g;
    std::vector<McnVertexProvenance> prov;
    auto add_vertex = [&](McnVertexProvenance p) {
        prov.push_back(p);
        return static_cast<int>(prov.size()) - 1;
    };
    std::vector<int> lit(2 * q.var_count(), -1);
    auto lit_id = [&](int var, bool neg) { return 2 * var + (neg ? 1 : 0); };

    for (int x : X) {
        lit[lit_id(x, false)] = add_vertex({McnVertexProvenance::Kind::LitX, x, false});
        lit[lit_id(x, true)] = add_vertex({McnVertexProvenance::Kind::LitX, x, true});
    }
    for (int y : Y) {
        lit[lit_id(y, false)] = add_vertex({McnVertexProvenance::Kind::LitY, y, false});
        lit[lit_id(y, true)] = add_vertex({McnVertexProvenance::Kind::LitY, y, true});
    }
    for (int z : Z) {
        lit[lit_id(z, false)] = add_vertex({McnVertexProvenance::Kind::LitZ, z, false});
        lit[lit_id(z, true)] = add_vertex({McnVertexProvenance::Kind::LitZ, z, true});
    }

    auto pair_sets = [&](const std::vector<int> &vars, int gamma,
                         McnVertexProvenance::Kind kind) {
        for (size_t i = 0; i < vars.size(); ++i)
            for (size_t j = i + 1; j < vars.size(); ++j)
                for (bool ni : {false, true})
                    for (bool nj : {false, true}) {
                        for (int k = 0; k < gamma; ++k) {
                            int v = add_vertex({kind, vars[i], ni});
                            g.edges.emplace_back(v, lit[lit_id(vars[i], ni)]);
                            g.edges.emplace_back(v, lit[lit_id(vars[j], nj)]);
                        }
                    }
    };
    pair_sets(X, out.gamma_x, McnVertexProvenance::Kind::CSetX);
    pair_sets(Z, out.gamma_z, McnVertexProvenance::Kind::CSetZ);

    for (int y : Y) {
        for (bool neg : {false, true})
            for (int k = 0; k < out.gamma_y; ++k) {
                int v = add_vertex({McnVertexProvenance::Kind::SSet, y, neg});
                g.edges.emplace_back(v, lit[lit_id(y, neg)]);
            }
        for (int k = 0; k < out.gamma_y; ++k) {
            int v = add_vertex({McnVertexProvenance::Kind::KSet, y, false});
            g.edges.emplace_back(v, lit[lit_id(y, false)]);
            g.edges.emplace_back(v, lit[lit_id(y, true)]);
        }
    }

    // complete bipartite between X+Z literal vertices and Y literal vertices
    for (int u : X)
        for (bool nu : {false, true})
            for (int y : Y)
                for (bool nyg : {false, true})
                    g.edges.emplace_back(lit[lit_id(u, nu)], lit[lit_id(y, nyg)]);
    for (int z : Z)
        for (bool nz2 : {false, true})
            for (int y : Y)
                for (bool nyg : {false, true})
                    g.edges.emplace_back(lit[lit_id(z, nz2)], lit[lit_id(y, nyg)]);

    for (int c = 0; c < nc; ++c) {
        const auto &lits = q.matrix[c].literals;
        int k = static_cast<int>(lits.size());
        for (int T = 1; T < (1 << k); ++T) {
            McnVertexProvenance p{McnVertexProvenance::Kind::ClauseVtx, -1, false, c, T};
            int v = add_vertex(p);
            for (int i = 0; i < k; ++i) {
                bool lit_true = (T >> i) & 1;
                bool neg = lit_true ? lits[i].negated : !lits[i].negated;
                g.edges.emplace_back(v, lit[lit_id(lits[i].var, neg)]);
            }
        }
    }

    g.vertex_count = static_cast<int>(prov.size());
    g.vaccinate_budget = nx;
    g.infect_budget = nx + ny;
    g.protect_budget = ny + nz;
    g.goal = out.gamma_x * nx * (nx - 1) / 2 + nx + ny * (out.gamma_y + 1) +
             out.gamma_z * nz * (nz - 1) / 2 + nz + nc;
    g.check_invariants();
    out.instance = std::move(g);
    out.vertices = std::move(prov);
    return out;
}

int McnCompiled::lit_vertex(int var, bool negated) const {
    for (size_t i = 0; i < vertices.size(); ++i) {
        const auto &p = vertices[i];
        if ((p.kind == McnVertexProvenance::Kind::LitX ||
             p.kind == McnVertexProvenance::Kind::LitY ||
             p.kind == McnVertexProvenance::Kind::LitZ) &&
            p.var == var && p.negated == negated)
            return static_cast<int>(i);
    }
    return -1;
}

std::string mcn_to_json(const McnInstance &inst) {
    nlohmann::ordered_json j;
    j["n"] = inst.vertex_count;
    j["edges"] = nlohmann::ordered_json::array();
    for (auto [u, v] : inst.edges) j["edges"].push_back({u, v});
    j["omega"] = inst.vaccinate_budget;
    j["phi"] = inst.infect_budget;
    j["lambda"] = inst.protect_budget;
    j["K"] = inst.goal;
    return j.dump(2) + "\n";
}

McnInstance mcn_from_json(const std::string &text) {
    McnInstance inst;
    try {
        auto j = nlohmann::json::parse(text);
        inst.vertex_count = j.at("n").get<int>();
        for (const auto &e : j.at("edges"))
            inst.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        inst.vaccinate_budget = j.at("omega").get<int>();
        inst.infect_budget = j.at("phi").get<int>();
        inst.protect_budget = j.at("lambda").get<int>();
        inst.goal = j.at("K").get<int>();
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("mcn json: ") + e.what());
    }
    inst.check_invariants();
    return inst;
}

std::string mcn_to_dot(const McnInstance &inst, const PlayOutcome *play) {
    std::ostringstream out;
    out << "graph mcn {\n";
    for (int v = 0; v < inst.vertex_count; ++v) {
        out << "  n" << v;
        if (play) {
            const char *color = nullptr;
            switch (play->states[v]) {
            case VertexState::Vaccinated: color = "green"; break;
            case VertexState::Protected: color = "blue"; break;
            case VertexState::DirectlyInfected: color = "red"; break;
            case VertexState::IndirectlyInfected: color = "orange"; break;
            case VertexState::SavedPlain: color = "white"; break;
            }
            out << " [style=filled fillcolor=" << color << "]";
        }
        out << ";\n";
    }
    for (auto [u, v] : inst.edges) out << "  n" << u << " -- n" << v << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace fig

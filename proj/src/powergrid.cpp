#include "fig/powergrid.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

#include "fig/engine.hpp"
#include "fig/errors.hpp"
#include "fig/simplex.hpp"

namespace fig {

void GridInstance::check_invariants() const {
    if (bus_count < 1) throw ShapeError("grid: at least one bus");
    if (static_cast<int>(demand.size()) != bus_count)
        throw ShapeError("grid: demand list must cover all buses");
    for (const auto &d : demand)
        if (d < 0) throw ShapeError("grid: negative demand");
    for (const auto &g : generators) {
        if (g.bus < 0 || g.bus >= bus_count) throw ShapeError("grid: generator bus out of range");
        if (g.base_output < 0 || g.ramp_down < 0 || g.ramp_up < 0 || g.max_output < 0)
            throw ShapeError("grid: negative generator parameter");
        Rat lo = g.base_output - g.ramp_down;
        if (lo < 0) lo = 0;
        Rat hi = g.base_output + g.ramp_up;
        if (hi > g.max_output) hi = g.max_output;
        if (lo > hi) throw ShapeError("grid: generator ramp window misses [0, max]");
    }
    for (const auto &l : lines) {
        if (l.from < 0 || l.from >= bus_count || l.to < 0 || l.to >= bus_count)
            throw ShapeError("grid: line endpoint out of range");
        if (l.capacity < 0) throw ShapeError("grid: negative line capacity");
        if (l.reactance <= 0) throw ShapeError("grid: reactance must be positive");
        if (l.attack_weight < 0 || l.fortify_weight < 0)
            throw ShapeError("grid: negative weight");
    }
    if (fortify_budget < 0 || attack_budget < 0 || shed_goal < 0)
        throw ShapeError("grid: negative budget or goal");
}

DispatchResult min_load_shed(const GridInstance &grid, uint64_t attacked_lines) {
    grid.check_invariants();
    int nl = static_cast<int>(grid.lines.size());
    int ng = static_cast<int>(grid.generators.size());
    int nb = grid.bus_count;

    std::vector<int> live;
    for (int l = 0; l < nl; ++l)
        if (!(attacked_lines & (uint64_t{1} << l))) live.push_back(l);
    int nf = static_cast<int>(live.size());

    int ref_bus = grid.generators.empty() ? 0 : grid.generators[0].bus;

    // columns: flows (shifted by +cap), generators (shifted by lower
    // bound), bus sheds, then angle +/- pairs for every bus but the
    // reference; slacks for the finite upper bounds
    int col_flow = 0;
    int col_gen = col_flow + nf;
    int col_shed = col_gen + ng;
    int col_ang = col_shed + nb;
    int n_ang = 0;
    std::vector<int> ang_col(nb, -1);
    for (int b = 0; b < nb; ++b)
        if (b != ref_bus) ang_col[b] = col_ang + 2 * n_ang++;
    int col_slack = col_ang + 2 * n_ang;
    int n_slack = nf + ng + nb;
    int cols = col_slack + n_slack;

    std::vector<Rat> gen_lo(ng), gen_hi(ng);
    for (int j = 0; j < ng; ++j) {
        const auto &g = grid.generators[j];
        gen_lo[j] = g.base_output - g.ramp_down;
        if (gen_lo[j] < 0) gen_lo[j] = 0;
        gen_hi[j] = g.base_output + g.ramp_up;
        if (gen_hi[j] > g.max_output) gen_hi[j] = g.max_output;
    }

    LpProblem p;
    p.cols = cols;
    auto add_row = [&](std::vector<Rat> row, Rat rhs) {
        p.A.push_back(std::move(row));
        p.b.push_back(std::move(rhs));
    };
    auto zero_row = [&]() { return std::vector<Rat>(cols, Rat(0)); };

    auto angle_into = [&](std::vector<Rat> &row, int bus, const Rat &coef) {
        if (bus == ref_bus) return; // reference angle fixed at zero
        row[ang_col[bus]] += coef;
        row[ang_col[bus] + 1] -= coef;
    };

    // line power coupling: flow - (angle_from - angle_to)/X = 0
    for (int k = 0; k < nf; ++k) {
        const auto &l = grid.lines[live[k]];
        auto row = zero_row();
        row[col_flow + k] = 1;
        Rat inv_x = Rat(1) / l.reactance;
        angle_into(row, l.from, -inv_x);
        angle_into(row, l.to, inv_x);
        add_row(std::move(row), l.capacity); // rhs from the flow shift
    }

    // conservation per bus
    for (int b = 0; b < nb; ++b) {
        auto row = zero_row();
        Rat rhs = grid.demand[b];
        for (int j = 0; j < ng; ++j)
            if (grid.generators[j].bus == b) {
                row[col_gen + j] = 1;
                rhs -= gen_lo[j];
            }
        for (int k = 0; k < nf; ++k) {
            const auto &l = grid.lines[live[k]];
            if (l.from == b) {
                row[col_flow + k] -= 1;
                rhs -= l.capacity;
            }
            if (l.to == b) {
                row[col_flow + k] += 1;
                rhs += l.capacity;
            }
        }
        row[col_shed + b] = 1;
        add_row(std::move(row), rhs);
    }

    // finite upper bounds via slacks
    for (int k = 0; k < nf; ++k) {
        auto row = zero_row();
        row[col_flow + k] = 1;
        row[col_slack + k] = 1;
        add_row(std::move(row), 2 * grid.lines[live[k]].capacity);
    }
    for (int j = 0; j < ng; ++j) {
        auto row = zero_row();
        row[col_gen + j] = 1;
        row[col_slack + nf + j] = 1;
        add_row(std::move(row), gen_hi[j] - gen_lo[j]);
    }
    for (int b = 0; b < nb; ++b) {
        auto row = zero_row();
        row[col_shed + b] = 1;
        row[col_slack + nf + ng + b] = 1;
        add_row(std::move(row), grid.demand[b]);
    }
    p.rows = static_cast<int>(p.A.size());
    p.c.assign(cols, Rat(0));
    for (int b = 0; b < nb; ++b) p.c[col_shed + b] = 1;

    LpSolution sol = simplex_solve(p);
    if (sol.status == LpStatus::Infeasible)
        throw ShapeError("min_load_shed: dispatch model infeasible");
    if (sol.status == LpStatus::Unbounded)
        throw ShapeError("min_load_shed: dispatch model unbounded");
    if (sol.objective != sol.dual_objective || !sol.dual_feasible)
        throw std::logic_error("min_load_shed: strong duality check failed");

    DispatchResult r;
    r.total_shed = sol.objective;
    r.lp_objective = sol.objective;
    r.lp_dual_objective = sol.dual_objective;
    r.line_flow.assign(nl, Rat(0));
    for (int k = 0; k < nf; ++k)
        r.line_flow[live[k]] = sol.x[col_flow + k] - grid.lines[live[k]].capacity;
    r.gen_output.resize(ng);
    for (int j = 0; j < ng; ++j) r.gen_output[j] = gen_lo[j] + sol.x[col_gen + j];
    r.bus_shed.resize(nb);
    for (int b = 0; b < nb; ++b) r.bus_shed[b] = sol.x[col_shed + b];
    r.angle.assign(nb, Rat(0));
    for (int b = 0; b < nb; ++b)
        if (b != ref_bus) r.angle[b] = sol.x[ang_col[b]] - sol.x[ang_col[b] + 1];
    return r;
}

Rat star_shed_closed_form(const GridInstance &grid, uint64_t attacked_lines) {
    grid.check_invariants();
    if (grid.generators.size() != 1)
        throw ShapeError("star_shed_closed_form: exactly one generator required");
    const auto &g = grid.generators[0];
    Rat total_demand = 0;
    for (const auto &d : grid.demand) total_demand += d;
    if (grid.demand[g.bus] != 0)
        throw ShapeError("star_shed_closed_form: generator bus must carry no demand");
    if (g.ramp_up != 0 || g.base_output != total_demand || g.max_output != total_demand ||
        g.ramp_down != total_demand)
        throw ShapeError("star_shed_closed_form: generator must cover exactly the demand");
    std::vector<bool> seen(grid.bus_count, false);
    seen[g.bus] = true;
    for (const auto &l : grid.lines) {
        if (l.from != g.bus) throw ShapeError("star_shed_closed_form: line not rooted at the generator");
        if (seen[l.to]) throw ShapeError("star_shed_closed_form: bus fed twice");
        seen[l.to] = true;
        if (l.capacity != grid.demand[l.to])
            throw ShapeError("star_shed_closed_form: line capacity must equal leaf demand");
    }
    for (bool s : seen)
        if (!s) throw ShapeError("star_shed_closed_form: unfed bus");
    Rat shed = 0;
    for (size_t l = 0; l < grid.lines.size(); ++l)
        if (attacked_lines & (uint64_t{1} << l)) shed += grid.demand[grid.lines[l].to];
    return shed;
}

GameDecision tepgfu_decide(const GridInstance &inst) {
    inst.check_invariants();
    int nl = static_cast<int>(inst.lines.size());
    if (nl > kTepgfuLineLimit) throw SizeLimitError("tepgfu_decide: too many lines");

    std::vector<Int> costs;
    for (const auto &l : inst.lines) costs.push_back(l.attack_weight);
    std::vector<LevelSpec> levels(2);
    levels[0] = {Role::Exists, nl, Budget::cardinality(inst.fortify_budget),
                 Exclusion::none(), 0};
    levels[1] = {Role::ForAll, nl, Budget::weighted(costs, inst.attack_budget),
                 Exclusion::of_levels({0}), 1};
    auto leaf = [&](const GameState &st) {
        return min_load_shed(inst, st.chosen[1]).total_shed <= inst.shed_goal;
    };
    EngineOptions opts;
    opts.memo = true;
    opts.leaf_channels = {1};
    EngineResult r = decide_alternating(levels, leaf, opts);
    GameDecision d;
    d.value = r.value;
    if (r.witness) {
        std::vector<int> w;
        for (int i = 0; i < nl; ++i)
            if (*r.witness & (uint64_t{1} << i)) w.push_back(i);
        d.witness = w;
    }
    return d;
}

GridCompiled compile_ubik_to_tepgfu(const UmikInstance &u) {
    u.check_invariants();
    if (u.m != 1) throw ShapeError("compile_ubik_to_tepgfu: UBIK input required (m=1)");
    if (u.goal < 1)
        throw ShapeError("compile_ubik_to_tepgfu: profit goal must be at least 1");
    int n = static_cast<int>(u.items.size());
    Rat total;
    for (const auto &it : u.items) total += Rat(it.profit);
    Rat reactance = n == 0 ? Rat(1) : Rat(1) / (2 * total); // 1/X' > sum of demands

    GridCompiled out;
    GridInstance g;
    g.bus_count = n + 1;
    g.demand.assign(n + 1, Rat(0));
    g.generators.push_back({0, total, total, Rat(0), total});
    for (int i = 0; i < n; ++i) {
        g.demand[i + 1] = Rat(u.items[i].profit);
        out.item_line.push_back(static_cast<int>(g.lines.size()));
        g.lines.push_back({0, i + 1, Rat(u.items[i].profit), reactance,
                           u.items[i].weight, Rat(1)});
    }
    g.fortify_budget = u.level_budgets[0];
    g.attack_budget = u.capacity;
    g.shed_goal = Rat(u.goal - 1);
    g.check_invariants();
    out.instance = std::move(g);
    return out;
}

std::string grid_to_json(const GridInstance &inst) {
    nlohmann::ordered_json j;
    j["buses"] = nlohmann::ordered_json::array();
    for (const auto &d : inst.demand) j["buses"].push_back({{"Pd", to_ratstr(d)}});
    j["generators"] = nlohmann::ordered_json::array();
    for (const auto &g : inst.generators)
        j["generators"].push_back({{"bus", g.bus},
                                   {"P0", to_ratstr(g.base_output)},
                                   {"RD", to_ratstr(g.ramp_down)},
                                   {"RU", to_ratstr(g.ramp_up)},
                                   {"Pmax", to_ratstr(g.max_output)}});
    j["lines"] = nlohmann::ordered_json::array();
    for (const auto &l : inst.lines)
        j["lines"].push_back({{"from", l.from},
                              {"to", l.to},
                              {"cap", to_ratstr(l.capacity)},
                              {"X", to_ratstr(l.reactance)},
                              {"z", to_dec(l.attack_weight)},
                              {"k", to_ratstr(l.fortify_weight)}});
    j["K"] = inst.fortify_budget;
    j["Z"] = to_dec(inst.attack_budget);
    j["Kprime"] = to_ratstr(inst.shed_goal);
    return j.dump(2) + "\n";
}

GridInstance grid_from_json(const std::string &text) {
    GridInstance inst;
    try {
        auto j = nlohmann::json::parse(text);
        for (const auto &b : j.at("buses"))
            inst.demand.push_back(rat_from_str(b.at("Pd").get<std::string>()));
        inst.bus_count = static_cast<int>(inst.demand.size());
        for (const auto &g : j.at("generators"))
            inst.generators.push_back({g.at("bus").get<int>(),
                                       rat_from_str(g.at("P0").get<std::string>()),
                                       rat_from_str(g.at("RD").get<std::string>()),
                                       rat_from_str(g.at("RU").get<std::string>()),
                                       rat_from_str(g.at("Pmax").get<std::string>())});
        for (const auto &l : j.at("lines"))
            inst.lines.push_back({l.at("from").get<int>(), l.at("to").get<int>(),
                                  rat_from_str(l.at("cap").get<std::string>()),
                                  rat_from_str(l.at("X").get<std::string>()),
                                  int_from_dec(l.at("z").get<std::string>()),
                                  rat_from_str(l.at("k").get<std::string>())});
        inst.fortify_budget = j.at("K").get<int>();
        inst.attack_budget = int_from_dec(j.at("Z").get<std::string>());
        inst.shed_goal = rat_from_str(j.at("Kprime").get<std::string>());
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("grid json: ") + e.what());
    }
    inst.check_invariants();
    return inst;
}

std::string grid_to_dot(const GridInstance &inst) {
    std::ostringstream out;
    out << "graph grid {\n";
    for (int b = 0; b < inst.bus_count; ++b)
        out << "  b" << b << " [label=\"bus " << b << " d=" << to_ratstr(inst.demand[b])
            << "\"];\n";
    for (const auto &g : inst.generators)
        out << "  b" << g.bus << " [shape=box];\n";
    for (const auto &l : inst.lines)
        out << "  b" << l.from << " -- b" << l.to << " [label=\"" << to_ratstr(l.capacity)
            << "\"];\n";
    out << "}\n";
    return out.str();
}

} // namespace fig

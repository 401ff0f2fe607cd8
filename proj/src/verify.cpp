#include "fig/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fig/engine.hpp"
#include "fig/errors.hpp"
#include "fig/rng.hpp"

namespace fig {

std::string family_name(Family f) {
    switch (f) {
    case Family::Ubik: return "ubik";
    case Family::Utik: return "utik";
    case Family::Umik: return "umik";
    case Family::Umfipf: return "umfipf";
    case Family::Spipuf: return "spipuf";
    case Family::Tepgfu: return "tepgfu";
    case Family::Umcn: return "umcn";
    }
    return "?";
}

Family family_from_name(const std::string &s) {
    if (s == "ubik") return Family::Ubik;
    if (s == "utik") return Family::Utik;
    if (s == "umik") return Family::Umik;
    if (s == "umfipf") return Family::Umfipf;
    if (s == "spipuf") return Family::Spipuf;
    if (s == "tepgfu") return Family::Tepgfu;
    if (s == "umcn") return Family::Umcn;
    throw ParseError("unknown family: " + s);
}

QbfInstance figure1_formula() {
    QbfInstance q;
    q.blocks = {{Role::Exists, {0, 1}}, {Role::ForAll, {2, 3}}};
    q.var_names = {"a", "b", "c", "d"};
    q.matrix = {
        normalize_clause({{0, false}, {1, false}, {2, true}}),
        normalize_clause({{0, true}, {1, true}, {3, false}}),
        normalize_clause({{0, false}, {1, false}, {2, false}}),
    };
    q.matrix_negated = true;
    return q;
}

QbfInstance figure2_formula() {
    QbfInstance q;
    q.blocks = {{Role::Exists, {0}}, {Role::ForAll, {1}}, {Role::Exists, {2, 3}}};
    q.var_names = {"a", "b", "c", "d"};
    q.matrix = {
        normalize_clause({{0, false}, {1, false}, {2, true}}),
        normalize_clause({{0, true}, {1, true}, {3, false}}),
        normalize_clause({{0, false}, {1, false}, {2, false}}),
    };
    q.matrix_negated = false;
    return q;
}

McnInstance figure3_instance() {
    McnInstance g;
    g.vertex_count = 6;
    g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 5}, {2, 3}, {2, 4}, {4, 5}};
    g.vaccinate_budget = 1;
    g.infect_budget = 1;
    g.protect_budget = 1;
    g.goal = 3;
    return g;
}

std::pair<std::string, std::string> regenerate_figures() {
    return {render_digit_table(compile_b2_to_ubik(figure1_formula())),
            render_digit_table(compile_b3_to_utik(figure2_formula()))};
}

UmikInstance gen_random_ubik(uint64_t seed, int n_max, int w_max, int p_max) {
    Rng rng(seed);
    UmikInstance u;
    int n = rng.range(1, n_max);
    Int wsum = 0, psum = 0;
    for (int i = 0; i < n; ++i) {
        Int w = rng.range(1, w_max);
        Int p = rng.range(1, p_max);
        wsum += w;
        psum += p;
        u.items.push_back({w, p});
    }
    u.capacity = rng.range(1, static_cast<int>(wsum));
    u.goal = rng.range(1, static_cast<int>(psum));
    u.m = 1;
    u.level_budgets = {rng.range(0, n)};
    return u;
}

bool artifacts_identical(const CompiledArtifact &a, const CompiledArtifact &b) {
    if (a.instance.items != b.instance.items) return false;
    if (a.instance.capacity != b.instance.capacity) return false;
    if (a.instance.goal != b.instance.goal) return false;
    if (a.instance.level_budgets != b.instance.level_budgets) return false;
    if (a.instance.m != b.instance.m) return false;
    if (a.provenance.size() != b.provenance.size()) return false;
    for (size_t i = 0; i < a.provenance.size(); ++i) {
        const auto &pa = a.provenance[i];
        const auto &pb = b.provenance[i];
        if (pa.role != pb.role || pa.var != pb.var || pa.clause != pb.clause) return false;
    }
    return true;
}

namespace {

uint64_t set_to_mask(const std::vector<int> &s) {
    uint64_t m = 0;
    for (int i : s) m |= uint64_t{1} << i;
    return m;
}

std::string mask_note(uint64_t m) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < 64; ++i)
        if (m & (uint64_t{1} << i)) {
            if (!first) out += ",";
            out += std::to_string(i);
            first = false;
        }
    return out + "}";
}

// value of the quantifier suffix after fixing the outermost block
bool qbf_rest_value(const QbfInstance &q, const std::vector<bool> &top_vals) {
    std::vector<bool> assignment(q.var_count(), false);
    const auto &top = q.blocks.front().vars;
    for (size_t i = 0; i < top.size(); ++i) assignment[top[i]] = top_vals[i];
    std::function<bool(size_t, size_t)> rec = [&](size_t block, size_t pos) -> bool {
        if (block == q.blocks.size()) return eval_matrix(q, assignment);
        const auto &b = q.blocks[block];
        if (pos == b.vars.size()) return rec(block + 1, 0);
        for (bool val : {false, true}) {
            assignment[b.vars[pos]] = val;
            bool sub = rec(block, pos + 1);
            if (b.role == Role::Exists && sub) return true;
            if (b.role == Role::ForAll && !sub) return false;
        }
        return b.role == Role::ForAll;
    };
    return q.blocks.size() == 1 ? eval_matrix(q, assignment) : rec(1, 0);
}

// ---- knapsack pattern helpers ------------------------------------------

struct PairIdx {
    int var;
    int pos;
    int neg;
};

std::vector<PairIdx> block_pairs(const CompiledArtifact &art, int block) {
    std::vector<PairIdx> out;
    for (int v : art.source.blocks[block].vars)
        out.push_back({v, art.find_item(ItemRole::VarPos, v),
                       art.find_item(ItemRole::VarNeg, v)});
    return out;
}

bool exactly_one_per_pair(uint64_t mask, const std::vector<PairIdx> &pairs) {
    uint64_t union_pairs = 0;
    for (const auto &p : pairs) {
        uint64_t pm = (uint64_t{1} << p.pos) | (uint64_t{1} << p.neg);
        union_pairs |= pm;
        if (std::popcount(mask & pm) != 1) return false;
    }
    return (mask & ~union_pairs) == 0;
}

void for_each_reaching_packing(const UmikInstance &inst, uint64_t avail,
                               const std::function<void(uint64_t)> &f) {
    std::vector<int> live;
    for (size_t i = 0; i < inst.items.size(); ++i)
        if (avail & (uint64_t{1} << i)) live.push_back(static_cast<int>(i));
    std::function<void(size_t, Int, Int, uint64_t)> rec = [&](size_t i, Int wleft,
                                                              Int profit, uint64_t mask) {
        if (profit >= inst.goal) f(mask);
        if (i == live.size()) return;
        rec(i + 1, wleft, profit, mask);
        const auto &it = inst.items[live[i]];
        if (it.weight <= wleft)
            rec(i + 1, wleft - it.weight, profit + it.profit,
                mask | (uint64_t{1} << live[i]));
    };
    rec(0, inst.capacity, 0, 0);
}

} // namespace

// ---- property suites -----------------------------------------------------

std::vector<PropertyCheck> property_suite_ubik(const CompiledArtifact &art) {
    const UmikInstance &inst = art.instance;
    int n = static_cast<int>(inst.items.size());
    uint64_t full = (uint64_t{1} << n) - 1;
    auto xp = block_pairs(art, 0);
    auto yp = block_pairs(art, 1);

    PropertyCheck p1{"ubik-p1-nonconforming-attack-fails"};
    for_each_feasible_set(full, Budget::cardinality(inst.level_budgets[0]),
                          [&](uint64_t I2) {
                              if (exactly_one_per_pair(I2, xp)) return false;
                              ++p1.cases;
                              if (kp_max_profit_masked(inst.items, full & ~I2,
                                                       inst.capacity) < inst.goal) {
                                  ++p1.violations;
                                  if (p1.notes.size() < 5)
                                      p1.notes.push_back("attack " + mask_note(I2));
                              }
                              return false;
                          });

    PropertyCheck p2{"ubik-p2-reaching-packing-shape"};
    uint64_t jprime = 0;
    for (const auto &p : xp) jprime |= uint64_t{1} << art.find_item(ItemRole::JPrime, p.var);
    for_each_feasible_set(full, Budget::cardinality(inst.level_budgets[0]),
                          [&](uint64_t I2) {
                              if (!exactly_one_per_pair(I2, xp)) return false;
                              uint64_t survivors = 0;
                              for (const auto &p : xp)
                                  survivors |= ((uint64_t{1} << p.pos) |
                                                (uint64_t{1} << p.neg)) & ~I2;
                              for_each_reaching_packing(
                                  inst, full & ~I2, [&](uint64_t I1) {
                                      ++p2.cases;
                                      bool ok = (I1 & survivors) == survivors &&
                                                (I1 & jprime) == jprime;
                                      if (ok)
                                          for (const auto &p : yp) {
                                              uint64_t pm = (uint64_t{1} << p.pos) |
                                                            (uint64_t{1} << p.neg);
                                              if (std::popcount(I1 & pm) != 1) ok = false;
                                          }
                                      if (!ok) {
                                          ++p2.violations;
                                          if (p2.notes.size() < 5)
                                              p2.notes.push_back("attack " + mask_note(I2) +
                                                                 " packing " + mask_note(I1));
                                      }
                                  });
                              return false;
                          });
    return {p1, p2};
}

std::vector<PropertyCheck> property_suite_utik(const CompiledArtifact &art) {
    const UmikInstance &inst = art.instance;
    int n = static_cast<int>(inst.items.size());
    uint64_t full = (uint64_t{1} << n) - 1;
    auto xp = block_pairs(art, 0); // fortification level
    auto yp = block_pairs(art, 1); // interdiction level
    auto zp = block_pairs(art, 2);
    int b3 = inst.level_budgets[1];
    int b2 = inst.level_budgets[0];
    bool y_domain = yp.size() >= 2; // the construction's stated validity domain

    auto win_after = [&](uint64_t I3) {
        bool win = true;
        for_each_feasible_set(full & ~I3, Budget::cardinality(b2), [&](uint64_t I2) {
            if (kp_max_profit_masked(inst.items, full & ~I2, inst.capacity) < inst.goal) {
                win = false;
                return true;
            }
            return false;
        });
        return win;
    };

    PropertyCheck p3{"utik-p3-nonconforming-fortification-loses"};
    p3.asserted = y_domain;
    for_each_feasible_set(full, Budget::cardinality(b3), [&](uint64_t I3) {
        if (exactly_one_per_pair(I3, xp)) return false;
        ++p3.cases;
        if (win_after(I3)) {
            ++p3.violations;
            if (p3.notes.size() < 5) p3.notes.push_back("fortification " + mask_note(I3));
        }
        return false;
    });

    PropertyCheck p4{"utik-p4-attack-missing-a-y-pair-auto-reaches"};
    PropertyCheck p5{"utik-p5-reaching-packing-shape"};
    uint64_t jprime = 0;
    for (const auto &p : yp) jprime |= uint64_t{1} << art.find_item(ItemRole::JPrime, p.var);
    for_each_feasible_set(full, Budget::cardinality(b3), [&](uint64_t I3) {
        if (!exactly_one_per_pair(I3, xp)) return false;
        for_each_feasible_set(full & ~I3, Budget::cardinality(b2), [&](uint64_t I2) {
            bool misses_pair = false;
            for (const auto &p : yp) {
                uint64_t pm = (uint64_t{1} << p.pos) | (uint64_t{1} << p.neg);
                if ((I2 & pm) == 0) misses_pair = true;
            }
            if (misses_pair) {
                ++p4.cases;
                if (kp_max_profit_masked(inst.items, full & ~I2, inst.capacity) <
                    inst.goal) {
                    ++p4.violations;
                    if (p4.notes.size() < 5)
                        p4.notes.push_back("fortification " + mask_note(I3) + " attack " +
                                           mask_note(I2));
                }
            }
            if (exactly_one_per_pair(I2, yp)) {
                uint64_t survivors_y = 0;
                for (const auto &p : yp)
                    survivors_y |= ((uint64_t{1} << p.pos) | (uint64_t{1} << p.neg)) & ~I2;
                for_each_reaching_packing(inst, full & ~I2, [&](uint64_t I1) {
                    ++p5.cases;
                    bool ok = (I1 & I3) == I3 && (I1 & survivors_y) == survivors_y &&
                              (I1 & jprime) == jprime;
                    if (ok)
                        for (const auto &p : zp) {
                            uint64_t pm = (uint64_t{1} << p.pos) | (uint64_t{1} << p.neg);
                            if (std::popcount(I1 & pm) != 1) ok = false;
                        }
                    if (!ok) {
                        ++p5.violations;
                        if (p5.notes.size() < 5)
                            p5.notes.push_back("fort " + mask_note(I3) + " attack " +
                                               mask_note(I2) + " packing " + mask_note(I1));
                    }
                });
            }
            return false;
        });
        return false;
    });
    p5.asserted = y_domain;
    return {p3, p4, p5};
}

std::vector<PropertyCheck> property_suite_flow(const FlowCompiled &art) {
    const MfipfInstance &inst = art.instance;
    int na = static_cast<int>(inst.network.arcs.size());
    uint64_t full = (uint64_t{1} << na) - 1;
    const auto &X = art.source.blocks[0].vars;
    const auto &Y = art.source.blocks[1].vars;
    bool y_domain = Y.size() >= 2;

    auto arc_of = [&](FlowArcProvenance::Kind kind, int var, bool neg) {
        for (int i = 0; i < na; ++i)
            if (art.arcs[i].kind == kind && art.arcs[i].var == var &&
                art.arcs[i].negated == neg)
                return i;
        return -1;
    };
    std::vector<std::pair<int, int>> x_arcs; // (pos, neg) source arcs per X var
    for (int x : X)
        x_arcs.emplace_back(arc_of(FlowArcProvenance::Kind::SLitX, x, false),
                            arc_of(FlowArcProvenance::Kind::SLitX, x, true));
    std::vector<std::pair<int, int>> y_arcs;
    for (int y : Y)
        y_arcs.emplace_back(arc_of(FlowArcProvenance::Kind::SLitY, y, false),
                            arc_of(FlowArcProvenance::Kind::SLitY, y, true));

    auto conforming_f = [&](uint64_t F) {
        uint64_t x_all = 0;
        for (auto [p, q2] : x_arcs) {
            uint64_t pm = (uint64_t{1} << p) | (uint64_t{1} << q2);
            x_all |= pm;
            if (std::popcount(F & pm) != 1) return false;
        }
        return (F & ~x_all) == 0;
    };

    std::map<uint64_t, Int> flow_memo;
    auto flow_of = [&](uint64_t D) {
        auto it = flow_memo.find(D);
        if (it != flow_memo.end()) return it->second;
        Int v = max_flow_removed(inst.network, D);
        flow_memo.emplace(D, v);
        return v;
    };

    PropertyCheck p6{"flow-p6-nonconforming-fortification-loses"};
    p6.asserted = y_domain;
    for_each_feasible_set(full, Budget::cardinality(inst.fortify_budget), [&](uint64_t F) {
        if (conforming_f(F)) return false;
        ++p6.cases;
        bool killed = false;
        for_each_feasible_set(full & ~F, Budget::cardinality(inst.attack_budget),
                              [&](uint64_t D) {
                                  if (flow_of(D) < inst.flow_goal) {
                                      killed = true;
                                      return true;
                                  }
                                  return false;
                              });
        if (!killed) {
            ++p6.violations;
            if (p6.notes.size() < 5) p6.notes.push_back("fortification " + mask_note(F));
        }
        return false;
    });

    PropertyCheck p7{"flow-p7-nonpattern-attack-keeps-goal"};
    p7.asserted = y_domain;
    for_each_feasible_set(full, Budget::cardinality(inst.fortify_budget), [&](uint64_t F) {
        if (!conforming_f(F)) return false;
        uint64_t unfortified_x = 0;
        for (auto [p, q2] : x_arcs)
            unfortified_x |= ((uint64_t{1} << p) | (uint64_t{1} << q2)) & ~F;
        // canonical attacks: the unfortified X arcs plus one Y arc per pair
        std::vector<uint64_t> canon;
        canon.push_back(unfortified_x);
        for (auto [p, q2] : y_arcs) {
            std::vector<uint64_t> next;
            for (uint64_t base : canon) {
                next.push_back(base | (uint64_t{1} << p));
                next.push_back(base | (uint64_t{1} << q2));
            }
            canon = std::move(next);
        }
        for_each_feasible_set(full & ~F, Budget::cardinality(inst.attack_budget),
                              [&](uint64_t D) {
                                  if (std::find(canon.begin(), canon.end(), D) !=
                                      canon.end())
                                      return false;
                                  ++p7.cases;
                                  if (flow_of(D) < inst.flow_goal) {
                                      ++p7.violations;
                                      if (p7.notes.size() < 5)
                                          p7.notes.push_back("fortification " +
                                                             mask_note(F) + " attack " +
                                                             mask_note(D));
                                  }
                                  return false;
                              });
        return false;
    });

    PropertyCheck ps{"flow-scaling-agreement"};
    {
        std::vector<std::pair<int, int>> arcs;
        std::vector<Rat> caps;
        for (const auto &a : inst.network.arcs) {
            arcs.emplace_back(a.from, a.to);
            caps.push_back(Rat(a.cap) / Rat(art.scale));
        }
        std::vector<uint64_t> removals{0};
        for (int i = 0; i < na && i < 8; ++i) removals.push_back(uint64_t{1} << i);
        for (uint64_t D : removals) {
            ++ps.cases;
            Rat scaled = Rat(flow_of(D));
            Rat unscaled = max_flow_rational(inst.network.node_count, arcs, caps,
                                             inst.network.s, inst.network.t, D);
            if (scaled != unscaled * Rat(art.scale)) {
                ++ps.violations;
                if (ps.notes.size() < 5) ps.notes.push_back("removal " + mask_note(D));
            }
        }
    }
    return {p6, p7, ps};
}

std::vector<PropertyCheck> property_suite_mcn(const McnCompiled &art) {
    const McnInstance &inst = art.instance;
    int n = inst.vertex_count;
    uint64_t full = (uint64_t{1} << n) - 1;
    const auto &X = art.source.blocks[0].vars;
    const auto &Y = art.source.blocks[1].vars;
    const auto &Z = art.source.blocks[2].vars;

    std::vector<std::pair<int, int>> xv, yv, zv;
    for (int x : X) xv.emplace_back(art.lit_vertex(x, false), art.lit_vertex(x, true));
    for (int y : Y) yv.emplace_back(art.lit_vertex(y, false), art.lit_vertex(y, true));
    for (int z : Z) zv.emplace_back(art.lit_vertex(z, false), art.lit_vertex(z, true));

    auto one_per = [&](uint64_t mask, const std::vector<std::pair<int, int>> &pairs,
                       bool nothing_else) {
        uint64_t all = 0;
        for (auto [p, q2] : pairs) {
            uint64_t pm = (uint64_t{1} << p) | (uint64_t{1} << q2);
            all |= pm;
            if (std::popcount(mask & pm) != 1) return false;
        }
        return !nothing_else || (mask & ~all) == 0;
    };

    auto reach = [&](uint64_t D, uint64_t I) {
        return umcn_inner_best(inst, D, I, true) >= inst.goal;
    };

    PropertyCheck p8{"mcn-p8-nonconforming-vaccination-loses"};
    for_each_feasible_set(full, Budget::cardinality(inst.vaccinate_budget),
                          [&](uint64_t D) {
                              if (one_per(D, xv, true)) return false;
                              ++p8.cases;
                              bool beaten = false;
                              for_each_feasible_set(
                                  full & ~D, Budget::cardinality(inst.infect_budget),
                                  [&](uint64_t I) {
                                      if (!reach(D, I)) {
                                          beaten = true;
                                          return true;
                                      }
                                      return false;
                                  });
                              if (!beaten) {
                                  ++p8.violations;
                                  if (p8.notes.size() < 5)
                                      p8.notes.push_back("vaccination " + mask_note(D));
                              }
                              return false;
                          });

    PropertyCheck p9{"mcn-p9-nonpattern-attack-auto-reaches"};
    PropertyCheck p10{"mcn-p10-reaching-protection-shape"};
    for_each_feasible_set(full, Budget::cardinality(inst.vaccinate_budget),
                          [&](uint64_t D) {
                              if (!one_per(D, xv, true)) return false;
                              uint64_t unvacc_x = 0;
                              for (auto [p, q2] : xv)
                                  unvacc_x |= ((uint64_t{1} << p) | (uint64_t{1} << q2)) & ~D;
                              for_each_feasible_set(
                                  full & ~D, Budget::cardinality(inst.infect_budget),
                                  [&](uint64_t I) {
                                      if (!one_per(I, yv, false)) {
                                          ++p9.cases;
                                          if (!reach(D, I)) {
                                              ++p9.violations;
                                              if (p9.notes.size() < 5)
                                                  p9.notes.push_back("vacc " + mask_note(D) +
                                                                     " attack " +
                                                                     mask_note(I));
                                          }
                                      }
                                      return false;
                                  });
                              // canonical attacks for the protection-shape check
                              std::vector<uint64_t> canon{unvacc_x};
                              for (auto [p, q2] : yv) {
                                  std::vector<uint64_t> next;
                                  for (uint64_t base : canon) {
                                      next.push_back(base | (uint64_t{1} << p));
                                      next.push_back(base | (uint64_t{1} << q2));
                                  }
                                  canon = std::move(next);
                              }
                              for (uint64_t I : canon) {
                                  if (std::popcount(I) > inst.infect_budget) continue;
                                  uint64_t saved_y = 0;
                                  for (auto [p, q2] : yv)
                                      saved_y |= ((uint64_t{1} << p) | (uint64_t{1} << q2)) &
                                                 ~I;
                                  for_each_feasible_set(
                                      full & ~I, Budget::cardinality(inst.protect_budget),
                                      [&](uint64_t P) {
                                          auto play = propagate(inst, D, I, P);
                                          if (play.saved_count < inst.goal) return false;
                                          ++p10.cases;
                                          bool ok = (P & saved_y) == saved_y &&
                                                    one_per(P & ~saved_y, zv, true);
                                          if (!ok) {
                                              ++p10.violations;
                                              if (p10.notes.size() < 5)
                                                  p10.notes.push_back(
                                                      "vacc " + mask_note(D) + " attack " +
                                                      mask_note(I) + " protection " +
                                                      mask_note(P));
                                          }
                                          return false;
                                      });
                              }
                              return false;
                          });
    return {p8, p9, p10};
}

// ---- equivalence ---------------------------------------------------------

namespace {

std::string assignment_note(const QbfInstance &q, const std::vector<bool> &vals) {
    std::string s;
    const auto &top = q.blocks.front().vars;
    for (size_t i = 0; i < top.size(); ++i) {
        if (i) s += ",";
        s += q.name_of(top[i]) + "=" + (vals[i] ? "1" : "0");
    }
    return s;
}

// top-pinned levels map interdicted/vaccinated/fortified pattern to an
// assignment of the outermost block; returns empty when nonconforming
std::optional<std::vector<bool>> decode_pair_pattern(
    uint64_t mask, const std::vector<std::pair<int, int>> &pairs, bool picked_means_true) {
    std::vector<bool> vals;
    uint64_t all = 0;
    for (auto [pos, neg] : pairs) {
        uint64_t pm = (uint64_t{1} << pos) | (uint64_t{1} << neg);
        all |= pm;
        if (std::popcount(mask & pm) != 1) return std::nullopt;
        bool pos_in = mask & (uint64_t{1} << pos);
        vals.push_back(pos_in == picked_means_true);
    }
    if (mask & ~all) return std::nullopt;
    return vals;
}

InstanceResult eval_knapsack_family(Family fam, int id, const QbfInstance &q,
                                    bool assert_all) {
    InstanceResult r;
    r.id = id;
    r.source = emit_qdimacs(q);
    r.source_decision = qbf_decide(q).value;
    if (fam == Family::Ubik) {
        auto art = compile_b2_to_ubik(q);
        auto d = ubik_decide(art.instance);
        r.game_decision = d.value;
        r.asserted = true;
        if (d.value && d.witness) {
            std::vector<PairIdx> xp = block_pairs(art, 0);
            std::vector<std::pair<int, int>> pairs;
            for (const auto &p : xp) pairs.emplace_back(p.pos, p.neg);
            // interdicting the negated item leaves the positive literal
            auto vals = decode_pair_pattern(set_to_mask(*d.witness), pairs, false);
            if (!vals) {
                r.witness_note = "witness:nonconforming";
            } else if (qbf_rest_value(q, *vals)) {
                r.witness_note = "witness-replay:ok " + assignment_note(q, *vals);
            } else {
                r.witness_note = "witness-replay:fail " + assignment_note(q, *vals);
            }
        }
    } else if (fam == Family::Utik) {
        auto art = compile_b3_to_utik(q);
        auto d = utik_decide(art.instance);
        r.game_decision = d.value;
        r.asserted = q.blocks[1].vars.size() >= 2 || assert_all;
        if (d.value && d.witness) {
            std::vector<PairIdx> xp = block_pairs(art, 0);
            std::vector<std::pair<int, int>> pairs;
            for (const auto &p : xp) pairs.emplace_back(p.pos, p.neg);
            // fortifying the positive item keeps the positive literal
            auto vals = decode_pair_pattern(set_to_mask(*d.witness), pairs, true);
            if (!vals)
                r.witness_note = "witness:nonconforming";
            else
                r.witness_note = std::string(qbf_rest_value(q, *vals)
                                                 ? "witness-replay:ok "
                                                 : "witness-replay:fail ") +
                                 assignment_note(q, *vals);
        }
    } else { // Umik
        auto art = compile_qbf_to_umik(q);
        auto d = umik_decide(art.instance);
        r.game_decision = d.value;
        r.asserted = true;
        if (d.value && d.witness) {
            std::vector<PairIdx> xp = block_pairs(art, 0);
            std::vector<std::pair<int, int>> pairs;
            for (const auto &p : xp) pairs.emplace_back(p.pos, p.neg);
            int top_level = art.instance.m + 1;
            bool top_is_attack = top_level % 2 == 0;
            auto vals = decode_pair_pattern(set_to_mask(*d.witness), pairs, !top_is_attack);
            if (!vals)
                r.witness_note = "witness:nonconforming";
            else
                r.witness_note = std::string(qbf_rest_value(q, *vals)
                                                 ? "witness-replay:ok "
                                                 : "witness-replay:fail ") +
                                 assignment_note(q, *vals);
        }
    }
    r.agree = r.source_decision == r.game_decision;
    return r;
}

InstanceResult eval_umfipf(int id, const QbfInstance &q, bool assert_all) {
    InstanceResult r;
    r.id = id;
    r.source = emit_qdimacs(q);
    r.source_decision = qbf_decide(q).value;
    bool y1 = q.blocks[1].vars.size() < 2;
    auto art = y1 ? compile_b2sat_to_umfipf_any(q) : compile_b2sat_to_umfipf(q);
    auto d = umfipf_decide(art.instance);
    r.game_decision = d.value;
    r.asserted = !y1 || assert_all;
    if (d.value && d.witness) {
        // fortified X arcs read off as the X assignment
        const auto &X = q.blocks[0].vars;
        std::vector<std::pair<int, int>> pairs;
        for (int x : X) {
            int pos = -1, neg = -1;
            for (size_t i = 0; i < art.arcs.size(); ++i)
                if (art.arcs[i].kind == FlowArcProvenance::Kind::SLitX &&
                    art.arcs[i].var == x)
                    (art.arcs[i].negated ? neg : pos) = static_cast<int>(i);
            pairs.emplace_back(pos, neg);
        }
        auto vals = decode_pair_pattern(set_to_mask(*d.witness), pairs, true);
        if (!vals)
            r.witness_note = "witness:nonconforming";
        else
            r.witness_note = std::string(qbf_rest_value(q, *vals) ? "witness-replay:ok "
                                                                  : "witness-replay:fail ") +
                             assignment_note(q, *vals);
    }
    r.agree = r.source_decision == r.game_decision;
    return r;
}

InstanceResult eval_umcn(int id, const QbfInstance &q, bool pruning) {
    InstanceResult r;
    r.id = id;
    r.source = emit_qdimacs(q);
    r.source_decision = qbf_decide(q).value;
    auto art = compile_b3sat_to_umcn(q);
    UmcnOptions opts;
    opts.prune = pruning;
    auto d = umcn_decide(art.instance, opts);
    r.game_decision = d.value;
    r.asserted = true;
    if (d.value && d.witness) {
        const auto &X = q.blocks[0].vars;
        std::vector<std::pair<int, int>> pairs;
        for (int x : X) pairs.emplace_back(art.lit_vertex(x, false), art.lit_vertex(x, true));
        auto vals = decode_pair_pattern(set_to_mask(*d.witness), pairs, true);
        if (!vals)
            r.witness_note = "witness:nonconforming";
        else
            r.witness_note = std::string(qbf_rest_value(q, *vals) ? "witness-replay:ok "
                                                                  : "witness-replay:fail ") +
                             assignment_note(q, *vals);
    }
    r.agree = r.source_decision == r.game_decision;
    return r;
}

InstanceResult eval_ubik_game_reduction(Family fam, int id, const UmikInstance &u) {
    InstanceResult r;
    r.id = id;
    r.source = umik_to_json(u);
    auto src = ubik_decide(u);
    r.source_decision = src.value;
    r.asserted = true;
    if (fam == Family::Spipuf) {
        auto art = compile_ubik_to_spipuf(u);
        auto d = spipuf_decide(art.instance);
        r.game_decision = d.value;
        if (d.value && d.witness) {
            uint64_t items = 0;
            bool extraneous = false;
            uint64_t w = set_to_mask(*d.witness);
            for (size_t i = 0; i < art.item_arc.size(); ++i)
                if (w & (uint64_t{1} << art.item_arc[i])) items |= uint64_t{1} << i;
            uint64_t item_arcs = 0;
            for (int a : art.item_arc) item_arcs |= uint64_t{1} << a;
            extraneous = (w & ~item_arcs) != 0;
            Int v = kp_max_profit_masked(
                u.items, ((uint64_t{1} << u.items.size()) - 1) & ~items, u.capacity);
            r.witness_note = std::string("witness-replay:") +
                             (v < u.goal ? "ok" : "fail") +
                             (extraneous ? " extraneous-arcs" : "");
        }
    } else { // Tepgfu
        auto art = compile_ubik_to_tepgfu(u);
        auto d = tepgfu_decide(art.instance);
        r.game_decision = d.value;
        if (d.value && d.witness) {
            uint64_t items = 0;
            uint64_t w = set_to_mask(*d.witness);
            for (size_t i = 0; i < art.item_line.size(); ++i)
                if (w & (uint64_t{1} << art.item_line[i])) items |= uint64_t{1} << i;
            Int v = kp_max_profit_masked(
                u.items, ((uint64_t{1} << u.items.size()) - 1) & ~items, u.capacity);
            r.witness_note = std::string("witness-replay:") + (v < u.goal ? "ok" : "fail");
        }
    }
    r.agree = r.source_decision == r.game_decision;
    return r;
}

std::vector<QbfInstance> generate_formulas(const FamilySpec &spec, bool negated) {
    std::vector<QbfInstance> out;
    if (spec.exhaustive) {
        int n = 0;
        for (int s : spec.block_sizes) n += s;
        auto clauses = all_normalized_clauses(n);
        int nc = static_cast<int>(clauses.size());
        for (int size = std::max(1, spec.clause_min);
             size <= spec.clause_max && size <= nc; ++size) {
            std::vector<int> idx(size);
            for (int i = 0; i < size; ++i) idx[i] = i;
            while (true) {
                QbfInstance q;
                int next = 0;
                Role role = Role::Exists;
                for (int s : spec.block_sizes) {
                    QuantifierBlock b{role, {}};
                    for (int i = 0; i < s; ++i) b.vars.push_back(next++);
                    q.blocks.push_back(b);
                    role = role == Role::Exists ? Role::ForAll : Role::Exists;
                }
                for (int i : idx) q.matrix.push_back(clauses[i]);
                q.matrix_negated = negated;
                out.push_back(std::move(q));
                int i = size - 1;
                while (i >= 0 && idx[i] == nc - size + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    } else {
        Rng rng(spec.seed);
        for (int i = 0; i < spec.count; ++i) {
            uint64_t sub_seed = rng.next();
            int c = spec.clause_min +
                    static_cast<int>(rng.below(
                        static_cast<uint64_t>(spec.clause_max - spec.clause_min + 1)));
            out.push_back(random_qbf(sub_seed, spec.block_sizes, c, negated));
        }
    }
    return out;
}

} // namespace

void VerificationReport::finish() {
    checked = static_cast<int>(results.size());
    agreed = 0;
    skipped = 0;
    errors = 0;
    asserted_disagreements = 0;
    recorded_disagreements = 0;
    for (const auto &r : results) {
        if (!r.error.empty()) ++errors;
        else if (r.skipped) ++skipped;
        else if (r.agree) ++agreed;
        else if (r.asserted) ++asserted_disagreements;
        else ++recorded_disagreements;
    }
    asserted_property_violations = 0;
    recorded_property_violations = 0;
    for (const auto &p : properties) {
        if (p.asserted) asserted_property_violations += p.violations;
        else recorded_property_violations += p.violations;
    }
}

VerificationReport check_equivalence(const FamilySpec &spec) {
    VerificationReport rep;
    rep.family = family_name(spec.family);

    std::vector<QbfInstance> formulas;
    std::vector<UmikInstance> knapsacks;
    switch (spec.family) {
    case Family::Ubik:
        formulas = generate_formulas(spec, true);
        break;
    case Family::Utik:
    case Family::Umfipf:
    case Family::Umcn:
        formulas = generate_formulas(spec, false);
        break;
    case Family::Umik: {
        int m = static_cast<int>(spec.block_sizes.size()) - 1;
        formulas = generate_formulas(spec, m % 2 == 1);
        break;
    }
    case Family::Spipuf:
    case Family::Tepgfu: {
        Rng rng(spec.seed);
        for (int i = 0; i < spec.count; ++i)
            knapsacks.push_back(gen_random_ubik(rng.next(), spec.n_max, spec.w_max,
                                                spec.p_max));
        break;
    }
    }

    int total = static_cast<int>(formulas.empty() ? knapsacks.size() : formulas.size());
    rep.results.resize(total);

    auto eval_one = [&](int i) {
        auto t0 = std::chrono::steady_clock::now();
        try {
            switch (spec.family) {
            case Family::Ubik:
            case Family::Utik:
            case Family::Umik:
                rep.results[i] = eval_knapsack_family(spec.family, i, formulas[i],
                                                      spec.assert_all);
                break;
            case Family::Umfipf:
                rep.results[i] = eval_umfipf(i, formulas[i], spec.assert_all);
                break;
            case Family::Umcn:
                rep.results[i] = eval_umcn(i, formulas[i], spec.pruning);
                break;
            case Family::Spipuf:
            case Family::Tepgfu:
                rep.results[i] = eval_ubik_game_reduction(spec.family, i, knapsacks[i]);
                break;
            }
        } catch (const SizeLimitError &e) {
            // skip-and-record: oversized draws must not wedge a family run
            rep.results[i].id = i;
            rep.results[i].skipped = true;
            rep.results[i].witness_note = std::string("skipped: ") + e.what();
        } catch (const std::exception &e) {
            rep.results[i].id = i;
            rep.results[i].error = e.what();
        }
        rep.results[i].ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        if (spec.per_instance_budget_ms > 0 &&
            rep.results[i].ms > spec.per_instance_budget_ms && rep.results[i].error.empty()) {
            rep.results[i].skipped = true;
            rep.results[i].witness_note += " time-budget-exceeded";
        }
    };

    if (spec.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < total; ++i) eval_one(i);
    } else {
        for (int i = 0; i < total; ++i) eval_one(i);
    }

    if (spec.with_properties) {
        std::vector<std::vector<PropertyCheck>> per_instance(total);
        auto props_one = [&](int i) {
            try {
                switch (spec.family) {
                case Family::Ubik:
                    per_instance[i] = property_suite_ubik(compile_b2_to_ubik(formulas[i]));
                    break;
                case Family::Utik:
                    per_instance[i] = property_suite_utik(compile_b3_to_utik(formulas[i]));
                    break;
                case Family::Umfipf: {
                    bool y1 = formulas[i].blocks[1].vars.size() < 2;
                    auto art = y1 ? compile_b2sat_to_umfipf_any(formulas[i])
                                  : compile_b2sat_to_umfipf(formulas[i]);
                    per_instance[i] = property_suite_flow(art);
                    break;
                }
                case Family::Umcn:
                    per_instance[i] = property_suite_mcn(compile_b3sat_to_umcn(formulas[i]));
                    break;
                default:
                    break;
                }
            } catch (const SizeLimitError &) {
                // property enumeration skips oversized draws like the
                // equivalence pass does
            }
        };
        if (spec.parallel) {
#pragma omp parallel for schedule(dynamic)
            for (int i = 0; i < total; ++i) props_one(i);
        } else {
            for (int i = 0; i < total; ++i) props_one(i);
        }
        std::map<std::string, PropertyCheck> merged;
        std::vector<std::string> order;
        for (int i = 0; i < total; ++i) {
            for (const auto &c : per_instance[i]) {
                auto &m = merged[c.name];
                if (m.name.empty()) {
                    m = c;
                    order.push_back(c.name);
                } else {
                    m.cases += c.cases;
                    m.violations += c.violations;
                    m.asserted = m.asserted && c.asserted;
                    for (const auto &n : c.notes)
                        if (m.notes.size() < 5) m.notes.push_back(n);
                }
            }
        }
        for (const auto &name : order) rep.properties.push_back(merged[name]);
    }

    rep.finish();
    return rep;
}

// ---- mutation suite -------------------------------------------------------

namespace {

// Mutation analysis compares named check signatures between the pristine
// and the mutated artifact; a mutation is caught when some check's
// observable outcome changes (a decision, a witness, a violation or case
// count, a column sum, or a structural error).
using Signature = std::vector<std::pair<std::string, std::string>>;

std::string decision_sig(const GameDecision &d) {
    std::string s = d.value ? "yes" : "no";
    if (d.witness) {
        s += " {";
        for (int i : *d.witness) s += std::to_string(i) + ",";
        s += "}";
    }
    return s;
}

std::string properties_sig(const std::vector<PropertyCheck> &checks) {
    std::string s;
    for (const auto &c : checks)
        s += c.name + "=" + std::to_string(c.cases) + "/" +
             std::to_string(c.violations) + ";";
    return s;
}

Signature knapsack_signature(const CompiledArtifact &art) {
    Signature sig;
    sig.emplace_back("source-decision",
                     qbf_decide(art.source).value ? "yes" : "no");
    sig.emplace_back("game-decision",
                     decision_sig(art.instance.m == 1 ? ubik_decide(art.instance)
                                                      : utik_decide(art.instance)));
    auto sums = column_sums(art);
    std::string cols;
    for (const auto &v : sums.weight) cols += to_dec(v) + ",";
    cols += "|";
    for (const auto &v : sums.profit) cols += to_dec(v) + ",";
    sig.emplace_back("column-sums", cols);
    sig.emplace_back("goal-digits",
                     std::to_string(dec_digits(art.instance.goal)) + "/" +
                         std::to_string(expected_goal_digits(art)));
    sig.emplace_back("properties",
                     properties_sig(art.instance.m == 1 ? property_suite_ubik(art)
                                                        : property_suite_utik(art)));
    return sig;
}

Signature flow_signature(const FlowCompiled &art) {
    Signature sig;
    sig.emplace_back("game-decision", decision_sig(umfipf_decide(art.instance)));
    sig.emplace_back("properties", properties_sig(property_suite_flow(art)));
    return sig;
}

Signature mcn_signature(const McnCompiled &art) {
    Signature sig;
    sig.emplace_back("game-decision", decision_sig(umcn_decide(art.instance)));
    sig.emplace_back("properties", properties_sig(property_suite_mcn(art)));
    return sig;
}

Signature spipuf_signature(const PathCompiled &art) {
    Signature sig;
    sig.emplace_back("game-decision", decision_sig(spipuf_decide(art.instance)));
    return sig;
}

Signature tepgfu_signature(const GridCompiled &art) {
    Signature sig;
    sig.emplace_back("game-decision", decision_sig(tepgfu_decide(art.instance)));
    std::string cf;
    int nl = static_cast<int>(art.instance.lines.size());
    for (uint64_t D = 0; D < (uint64_t{1} << nl); ++D) {
        bool eq = min_load_shed(art.instance, D).total_shed ==
                  star_shed_closed_form(art.instance, D);
        cf += eq ? "=" : "!";
    }
    sig.emplace_back("star-closed-form", cf);
    return sig;
}

template <class Artifact>
MutationOutcome diff_mutation(int id, const std::string &desc, const Artifact &pristine,
                              const std::function<void(Artifact &)> &apply,
                              const std::function<Signature(const Artifact &)> &sigfn) {
    MutationOutcome out;
    out.id = id;
    out.description = desc;
    Signature base = sigfn(pristine);
    Artifact mutated = pristine;
    apply(mutated);
    Signature after;
    try {
        after = sigfn(mutated);
    } catch (const std::exception &e) {
        out.detected = true;
        out.detected_by = std::string("structural error: ") + e.what();
        return out;
    }
    for (size_t i = 0; i < base.size() && i < after.size(); ++i) {
        if (base[i].second != after[i].second) {
            out.detected = true;
            out.detected_by = base[i].first;
            return out;
        }
    }
    return out;
}

} // namespace

std::vector<MutationOutcome> run_mutation_suite() {
    std::vector<MutationOutcome> outcomes;
    int id = 0;

    auto fig1 = compile_b2_to_ubik(figure1_formula());
    auto fig2 = compile_b3_to_utik(figure2_formula());
    auto knap = [&](const CompiledArtifact &base, const std::string &desc,
                    std::function<void(CompiledArtifact &)> apply) {
        outcomes.push_back(diff_mutation<CompiledArtifact>(++id, desc, base, apply,
                                                           knapsack_signature));
    };

    int y_exp = fig1.layout.var_digits[2].low_exp; // variable c of the inner block
    int a_hi = fig1.layout.high_exp(0);
    knap(fig1, "fig1: capacity digit of an inner variable 1->2",
         [&](CompiledArtifact &m) { m.instance.capacity += pow10(y_exp); });
    knap(fig1, "fig1: capacity clause digit 4->3", [&](CompiledArtifact &m) {
        m.instance.capacity -= pow10(m.layout.clause_exp[0]);
    });
    knap(fig1, "fig1: goal M value 2->1",
         [&](CompiledArtifact &m) { m.instance.goal -= pow10(m.layout.m_exp); });
    knap(fig1, "fig1: goal M value 2->3",
         [&](CompiledArtifact &m) { m.instance.goal += pow10(m.layout.m_exp); });
    knap(fig1, "fig1: attack budget 2->3",
         [&](CompiledArtifact &m) { m.instance.level_budgets[0] = 3; });
    knap(fig1, "fig1: attack budget 2->1",
         [&](CompiledArtifact &m) { m.instance.level_budgets[0] = 1; });
    knap(fig1, "fig1: drop a clause digit of an X item", [&](CompiledArtifact &m) {
        int i = m.find_item(ItemRole::VarPos, 0);
        m.instance.items[i].weight -= pow10(m.layout.clause_exp[0]);
        m.instance.items[i].profit -= pow10(m.layout.clause_exp[0]);
    });
    knap(fig1, "fig1: j' profit moved to the high digit", [&](CompiledArtifact &m) {
        int i = m.find_item(ItemRole::JPrime, 0);
        m.instance.items[i].profit = pow10(a_hi);
    });

    int b_hi2 = fig2.layout.high_exp(1); // variable b, interdiction level
    knap(fig2, "fig2: capacity digit of the interdiction pair 2->1",
         [&](CompiledArtifact &m) { m.instance.capacity -= pow10(b_hi2); });
    knap(fig2, "fig2: goal M value 3->5",
         [&](CompiledArtifact &m) { m.instance.goal += 2 * pow10(m.layout.m_exp); });
    knap(fig2, "fig2: fortification budget 1->0",
         [&](CompiledArtifact &m) { m.instance.level_budgets[1] = 0; });
    knap(fig2, "fig2: X item loses its M-block profit", [&](CompiledArtifact &m) {
        int i = m.find_item(ItemRole::VarPos, 0);
        m.instance.items[i].profit -= 2 * pow10(m.layout.m_exp);
    });

    auto flow_art = compile_b2sat_to_umfipf(random_qbf(7, {1, 2}, 2, false));
    auto flow = [&](const std::string &desc, std::function<void(FlowCompiled &)> apply) {
        outcomes.push_back(
            diff_mutation<FlowCompiled>(++id, desc, flow_art, apply, flow_signature));
    };
    flow("flow: goal raised by one gadget unit",
         [](FlowCompiled &m) { m.instance.flow_goal += m.scale * Int(m.c_y_prime); });
    flow("flow: attack budget +1", [](FlowCompiled &m) { m.instance.attack_budget += 1; });
    flow("flow: X source arc capacity halved",
         [](FlowCompiled &m) { m.instance.network.arcs[0].cap /= 2; });

    auto mcn_art = compile_b3sat_to_umcn(random_qbf(7, {1, 1, 1}, 2, false));
    auto mcn = [&](const std::string &desc, std::function<void(McnCompiled &)> apply) {
        outcomes.push_back(
            diff_mutation<McnCompiled>(++id, desc, mcn_art, apply, mcn_signature));
    };
    mcn("mcn: saved-vertex goal -1", [](McnCompiled &m) { m.instance.goal -= 1; });
    mcn("mcn: infection budget +1", [](McnCompiled &m) { m.instance.infect_budget += 1; });

    auto ub = gen_random_ubik(11, 4, 5, 7);
    auto sp_art = compile_ubik_to_spipuf(ub);
    outcomes.push_back(diff_mutation<PathCompiled>(
        ++id, "path: length goal -1", sp_art,
        [](PathCompiled &m) { m.instance.goal -= 1; }, spipuf_signature));

    auto grid_art = compile_ubik_to_tepgfu(ub);
    outcomes.push_back(diff_mutation<GridCompiled>(
        ++id, "grid: shed goal -1", grid_art,
        [](GridCompiled &m) { m.instance.shed_goal -= 1; }, tepgfu_signature));
    outcomes.push_back(diff_mutation<GridCompiled>(
        ++id, "grid: leaf line capacity cut below its demand", grid_art,
        [](GridCompiled &m) { m.instance.lines[0].capacity -= Rat(1, 2); },
        tepgfu_signature));
    return outcomes;
}

// ---- report serialization --------------------------------------------------

std::string report_to_json(const VerificationReport &rep, bool with_sources,
                           bool with_timings) {
    nlohmann::ordered_json j;
    j["family"] = rep.family;
    j["summary"] = {
        {"checked", rep.checked},
        {"agreed", rep.agreed},
        {"skipped", rep.skipped},
        {"errors", rep.errors},
        {"asserted_disagreements", rep.asserted_disagreements},
        {"recorded_disagreements", rep.recorded_disagreements},
        {"asserted_property_violations", rep.asserted_property_violations},
        {"recorded_property_violations", rep.recorded_property_violations},
        {"ok", rep.ok()},
    };
    j["results"] = nlohmann::ordered_json::array();
    for (const auto &r : rep.results) {
        nlohmann::ordered_json e;
        e["id"] = r.id;
        if (with_sources) e["source"] = r.source;
        e["source_decision"] = r.source_decision;
        e["game_decision"] = r.game_decision;
        e["agree"] = r.agree;
        e["asserted"] = r.asserted;
        if (r.skipped) e["skipped"] = true;
        if (with_timings) e["ms"] = r.ms;
        if (!r.error.empty()) e["error"] = r.error;
        if (!r.witness_note.empty()) e["witness"] = r.witness_note;
        j["results"].push_back(e);
    }
    j["properties"] = nlohmann::ordered_json::array();
    for (const auto &p : rep.properties) {
        nlohmann::ordered_json e;
        e["name"] = p.name;
        e["cases"] = p.cases;
        e["violations"] = p.violations;
        e["asserted"] = p.asserted;
        e["notes"] = p.notes;
        j["properties"].push_back(e);
    }
    return j.dump(2) + "\n";
}

std::string report_to_text(const VerificationReport &rep) {
    std::ostringstream out;
    out << "family " << rep.family << ": " << rep.agreed << "/" << rep.checked
        << " agreements";
    if (rep.asserted_disagreements)
        out << ", " << rep.asserted_disagreements << " ASSERTED DISAGREEMENTS";
    if (rep.recorded_disagreements)
        out << ", " << rep.recorded_disagreements << " recorded disagreements";
    if (rep.skipped) out << ", " << rep.skipped << " skipped";
    if (rep.errors) out << ", " << rep.errors << " ERRORS";
    out << "\n";
    for (const auto &r : rep.results) {
        if (r.agree || r.skipped) continue;
        if (!r.error.empty()) {
            out << "  instance " << r.id << ": error " << r.error << "\n";
            continue;
        }
        out << "  instance " << r.id << ": source=" << (r.source_decision ? "yes" : "no")
            << " game=" << (r.game_decision ? "yes" : "no")
            << (r.asserted ? " [asserted]" : " [recorded]") << "\n";
    }
    for (const auto &p : rep.properties) {
        out << "  property " << p.name << ": " << p.violations << "/" << p.cases
            << " violations" << (p.asserted ? "" : " [recorded]") << "\n";
        for (const auto &n : p.notes) out << "    " << n << "\n";
    }
    out << (rep.ok() ? "OK" : "FAIL") << "\n";
    return out.str();
}

} // namespace fig

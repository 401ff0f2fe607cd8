#include "fig/reduction_knapsack.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fig/errors.hpp"

namespace fig {

int CompiledArtifact::find_item(ItemRole role, int var_or_clause) const {
    for (size_t i = 0; i < provenance.size(); ++i) {
        const auto &p = provenance[i];
        if (p.role != role) continue;
        if (role == ItemRole::Clause1 || role == ItemRole::Clause2) {
            if (p.clause == var_or_clause) return static_cast<int>(i);
        } else if (p.var == var_or_clause) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

namespace {

// clauses in which the literal occurs, as exponent sum
Int occurrence_digits(const QbfInstance &q, const DigitLayout &lay, int var,
                      bool negated) {
    Int v = 0;
    for (size_t c = 0; c < q.matrix.size(); ++c)
        for (const auto &l : q.matrix[c].literals)
            if (l.var == var && l.negated == negated) v += pow10(lay.clause_exp[c]);
    return v;
}

DigitLayout make_layout(const QbfInstance &q, int m) {
    DigitLayout lay;
    int C = static_cast<int>(q.matrix.size());
    lay.clause_exp.resize(C);
    for (int c = 0; c < C; ++c) lay.clause_exp[c] = C - 1 - c;
    lay.var_digits.resize(q.var_count());
    int base = C;
    // ascending significance: level 1 block first
    for (int bi = static_cast<int>(q.blocks.size()) - 1; bi >= 0; --bi) {
        int level = m + 1 - bi;
        int width = level % 2 == 0 ? 2 : 1;
        const auto &vars = q.blocks[bi].vars;
        int s = static_cast<int>(vars.size());
        for (int j = 0; j < s; ++j) {
            // first-listed variable of the block takes the top positions
            lay.var_digits[vars[j]] = {level, base + width * (s - 1 - j), width};
        }
        base += width * s;
    }
    lay.m_exp = base;
    return lay;
}

Int delta_l(const QbfInstance &q, int m, int level) {
    // product of (|X_l'|+1) for l' = 2..level-1; 1 when level == 2
    Int d = 1;
    for (int l = 2; l < level; ++l) {
        int bi = m + 1 - l;
        d *= static_cast<int>(q.blocks[bi].vars.size()) + 1;
    }
    return d;
}

void push_var_items(CompiledArtifact &art, const QbfInstance &q,
                    const DigitLayout &lay, int var, const Int &m_value) {
    Int base = pow10(lay.high_exp(var));
    Int m_term = m_value * pow10(lay.m_exp);
    art.instance.items.push_back(
        {base + occurrence_digits(q, lay, var, false),
         base + occurrence_digits(q, lay, var, false) + m_term});
    art.provenance.push_back({ItemRole::VarPos, var, -1});
    art.instance.items.push_back(
        {base + occurrence_digits(q, lay, var, true),
         base + occurrence_digits(q, lay, var, true) + m_term});
    art.provenance.push_back({ItemRole::VarNeg, var, -1});
}

void push_j_items(CompiledArtifact &art, const DigitLayout &lay, int var) {
    Int hi = pow10(lay.high_exp(var));
    Int lo = pow10(lay.var_digits[var].low_exp);
    art.instance.items.push_back({2 * hi, 2 * hi});
    art.provenance.push_back({ItemRole::J, var, -1});
    art.instance.items.push_back({hi, lo});
    art.provenance.push_back({ItemRole::JPrime, var, -1});
}

void push_clause_items(CompiledArtifact &art, const DigitLayout &lay, int n_clauses) {
    for (int c = 0; c < n_clauses; ++c) {
        Int d = pow10(lay.clause_exp[c]);
        art.instance.items.push_back({d, d});
        art.provenance.push_back({ItemRole::Clause1, -1, c});
        art.instance.items.push_back({2 * d, 2 * d});
        art.provenance.push_back({ItemRole::Clause2, -1, c});
    }
}

void finish_m_width(CompiledArtifact &art) {
    Int m_sum = 0;
    for (const auto &it : art.instance.items) m_sum += it.profit / pow10(art.layout.m_exp);
    art.layout.m_width = dec_digits(m_sum) + 1;
}

} // namespace

CompiledArtifact compile_b2_to_ubik(const QbfInstance &q) {
    q.check_invariants();
    if (q.blocks.size() != 2)
        throw ShapeError("compile_b2_to_ubik: exactly 2 blocks required");
    if (!q.matrix_negated)
        throw ShapeError("compile_b2_to_ubik: needs the never-satisfied goal family");
    if (q.matrix.empty()) throw ShapeError("compile_b2_to_ubik: at least one clause required");
    const auto &X = q.blocks[0].vars; // attacker-pinned, two digits each
    const auto &Y = q.blocks[1].vars; // knapsack level, one digit each

    CompiledArtifact art;
    art.source = q;
    art.layout = make_layout(q, 1);
    const DigitLayout &lay = art.layout;
    int C = static_cast<int>(q.matrix.size());

    for (int x : X) {
        push_var_items(art, q, lay, x, 1); // profits carry 1 in the M block
        push_j_items(art, lay, x);
    }
    for (int y : Y) push_var_items(art, q, lay, y, 0);
    push_clause_items(art, lay, C);

    Int W = 0, K = 0;
    for (int y : Y) W += pow10(lay.var_digits[y].low_exp);
    for (int x : X) W += 2 * pow10(lay.high_exp(x));
    for (int c = 0; c < C; ++c) W += 4 * pow10(lay.clause_exp[c]);
    for (const auto &vd : lay.var_digits)
        for (int d = 0; d < vd.width; ++d) K += pow10(vd.low_exp + d);
    for (int c = 0; c < C; ++c) K += 4 * pow10(lay.clause_exp[c]);
    K += Int(static_cast<int>(X.size())) * pow10(lay.m_exp);

    art.instance.capacity = W;
    art.instance.goal = K;
    art.instance.m = 1;
    art.instance.level_budgets = {static_cast<int>(X.size())};
    finish_m_width(art);
    return art;
}

CompiledArtifact compile_b3_to_utik(const QbfInstance &q) {
    q.check_invariants();
    if (q.blocks.size() != 3)
        throw ShapeError("compile_b3_to_utik: exactly 3 blocks required");
    if (q.matrix_negated)
        throw ShapeError("compile_b3_to_utik: needs the satisfied goal family");
    if (q.matrix.empty()) throw ShapeError("compile_b3_to_utik: at least one clause required");
    const auto &X = q.blocks[0].vars; // fortification level, one digit
    const auto &Y = q.blocks[1].vars; // interdiction level, two digits
    const auto &Z = q.blocks[2].vars; // knapsack level, one digit

    CompiledArtifact art;
    art.source = q;
    art.layout = make_layout(q, 2);
    const DigitLayout &lay = art.layout;
    int C = static_cast<int>(q.matrix.size());
    Int y1 = static_cast<int>(Y.size()) + 1;

    for (int x : X) push_var_items(art, q, lay, x, y1); // |Y|+1 at M
    for (int y : Y) {
        push_var_items(art, q, lay, y, 1); // 1 at M
        push_j_items(art, lay, y);
    }
    for (int z : Z) push_var_items(art, q, lay, z, 0);
    push_clause_items(art, lay, C);

    Int W = 0, K = 0;
    for (int u : X) W += pow10(lay.var_digits[u].low_exp);
    for (int u : Z) W += pow10(lay.var_digits[u].low_exp);
    for (int y : Y) W += 2 * pow10(lay.high_exp(y));
    for (int c = 0; c < C; ++c) W += 4 * pow10(lay.clause_exp[c]);
    for (const auto &vd : lay.var_digits)
        for (int d = 0; d < vd.width; ++d) K += pow10(vd.low_exp + d);
    for (int c = 0; c < C; ++c) K += 4 * pow10(lay.clause_exp[c]);
    K += (y1 * static_cast<int>(X.size()) + static_cast<int>(Y.size())) * pow10(lay.m_exp);

    art.instance.capacity = W;
    art.instance.goal = K;
    art.instance.m = 2;
    art.instance.level_budgets = {static_cast<int>(Y.size()), static_cast<int>(X.size())};
    finish_m_width(art);
    return art;
}

CompiledArtifact compile_qbf_to_umik(const QbfInstance &q) {
    q.check_invariants();
    int m = static_cast<int>(q.blocks.size()) - 1;
    if (m < 1) throw ShapeError("compile_qbf_to_umik: at least 2 blocks required");
    if (q.matrix.empty()) throw ShapeError("compile_qbf_to_umik: at least one clause required");
    bool want_negated = m % 2 == 1;
    if (q.matrix_negated != want_negated)
        throw ShapeError("compile_qbf_to_umik: goal family does not match the level parity");

    CompiledArtifact art;
    art.source = q;
    art.layout = make_layout(q, m);
    const DigitLayout &lay = art.layout;
    int C = static_cast<int>(q.matrix.size());

    // items, level m+1 downward, figure row order
    for (int bi = 0; bi <= m; ++bi) {
        int level = m + 1 - bi;
        Int mv = level >= 2 ? delta_l(q, m, level) : Int(0);
        for (int v : q.blocks[bi].vars) {
            push_var_items(art, q, lay, v, mv);
            if (level % 2 == 0) push_j_items(art, lay, v);
        }
    }
    push_clause_items(art, lay, C);

    Int W = 0, K = 0, m_goal = 0;
    for (int bi = 0; bi <= m; ++bi) {
        int level = m + 1 - bi;
        for (int v : q.blocks[bi].vars) {
            if (level % 2 == 0)
                W += 2 * pow10(lay.high_exp(v));
            else
                W += pow10(lay.var_digits[v].low_exp);
        }
        if (level >= 2)
            m_goal += delta_l(q, m, level) * static_cast<int>(q.blocks[bi].vars.size());
    }
    for (int c = 0; c < C; ++c) W += 4 * pow10(lay.clause_exp[c]);
    for (const auto &vd : lay.var_digits)
        for (int d = 0; d < vd.width; ++d) K += pow10(vd.low_exp + d);
    for (int c = 0; c < C; ++c) K += 4 * pow10(lay.clause_exp[c]);
    K += m_goal * pow10(lay.m_exp);

    art.instance.capacity = W;
    art.instance.goal = K;
    art.instance.m = m;
    art.instance.level_budgets.resize(m);
    for (int level = 2; level <= m + 1; ++level) {
        int bi = m + 1 - level;
        int s = static_cast<int>(q.blocks[bi].vars.size());
        int b;
        if (level % 2 == 0) {
            b = s;
        } else if (level == m + 1) {
            b = s;
        } else {
            b = s + static_cast<int>(q.blocks[bi - 1].vars.size()); // |X_l| + |X_{l+1}|
        }
        art.instance.level_budgets[level - 2] = b;
    }
    finish_m_width(art);
    return art;
}

namespace {

std::string item_label(const CompiledArtifact &art, size_t i) {
    const auto &p = art.provenance[i];
    switch (p.role) {
    case ItemRole::VarPos: return "i_" + art.source.name_of(p.var);
    case ItemRole::VarNeg: return "i_~" + art.source.name_of(p.var);
    case ItemRole::J: return "j_" + art.source.name_of(p.var);
    case ItemRole::JPrime: return "j'_" + art.source.name_of(p.var);
    case ItemRole::Clause1: return "i1_c" + std::to_string(p.clause + 1);
    case ItemRole::Clause2: return "i2_c" + std::to_string(p.clause + 1);
    }
    return "?";
}

std::string digit_row(const CompiledArtifact &art, const Int &v) {
    const DigitLayout &lay = art.layout;
    std::ostringstream out;
    out << v / pow10(lay.m_exp);
    // variable columns, most significant first
    std::vector<int> exps;
    for (int e = lay.m_exp - 1; e >= 0; --e) exps.push_back(e);
    for (int e : exps) out << " " << (v / pow10(e)) % 10;
    return out.str();
}

} // namespace

std::string render_digit_table(const CompiledArtifact &art) {
    std::ostringstream out;
    const DigitLayout &lay = art.layout;
    out << "cols: M";
    std::vector<std::string> col_names(lay.m_exp);
    for (size_t v = 0; v < lay.var_digits.size(); ++v)
        for (int d = 0; d < lay.var_digits[v].width; ++d)
            col_names[lay.var_digits[v].low_exp + d] = art.source.name_of(static_cast<int>(v));
    for (size_t c = 0; c < lay.clause_exp.size(); ++c)
        col_names[lay.clause_exp[c]] = "c" + std::to_string(c + 1);
    for (int e = lay.m_exp - 1; e >= 0; --e) out << " " << col_names[e];
    out << "\n";
    for (size_t i = 0; i < art.instance.items.size(); ++i) {
        out << item_label(art, i) << " w " << digit_row(art, art.instance.items[i].weight)
            << "\n";
        out << item_label(art, i) << " p " << digit_row(art, art.instance.items[i].profit)
            << "\n";
    }
    out << "W " << digit_row(art, art.instance.capacity) << "\n";
    out << "K " << digit_row(art, art.instance.goal) << "\n";
    return out.str();
}

std::string provenance_to_json(const CompiledArtifact &art) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (size_t i = 0; i < art.provenance.size(); ++i) {
        const auto &p = art.provenance[i];
        nlohmann::ordered_json e;
        e["item"] = i;
        switch (p.role) {
        case ItemRole::VarPos: e["role"] = "i_u"; break;
        case ItemRole::VarNeg: e["role"] = "i_u_bar"; break;
        case ItemRole::J: e["role"] = "j"; break;
        case ItemRole::JPrime: e["role"] = "j_prime"; break;
        case ItemRole::Clause1: e["role"] = "i1_c"; break;
        case ItemRole::Clause2: e["role"] = "i2_c"; break;
        }
        if (p.var >= 0) e["var"] = art.source.name_of(p.var);
        if (p.clause >= 0) e["clause"] = p.clause + 1;
        j.push_back(e);
    }
    return j.dump(2) + "\n";
}

ColumnSums column_sums(const CompiledArtifact &art) {
    const DigitLayout &lay = art.layout;
    ColumnSums s;
    s.weight.assign(lay.m_exp + 1, 0);
    s.profit.assign(lay.m_exp + 1, 0);
    for (const auto &it : art.instance.items) {
        for (int e = 0; e < lay.m_exp; ++e) {
            s.weight[e] += (it.weight / pow10(e)) % 10;
            s.profit[e] += (it.profit / pow10(e)) % 10;
        }
        s.weight[lay.m_exp] += it.weight / pow10(lay.m_exp);
        s.profit[lay.m_exp] += it.profit / pow10(lay.m_exp);
    }
    return s;
}

int expected_goal_digits(const CompiledArtifact &art) {
    Int m_value = art.instance.goal / pow10(art.layout.m_exp);
    return art.layout.m_exp + dec_digits(m_value);
}

} // namespace fig

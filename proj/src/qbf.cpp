#include "fig/qbf.hpp"

#include <algorithm>
#include <sstream>

#include "fig/rng.hpp"

namespace fig {

int QbfInstance::var_count() const {
    int n = 0;
    for (const auto &b : blocks) n += static_cast<int>(b.vars.size());
    return n;
}

std::string QbfInstance::name_of(int var) const {
    if (var < static_cast<int>(var_names.size()) && !var_names[var].empty())
        return var_names[var];
    return "v" + std::to_string(var + 1);
}

void QbfInstance::check_invariants() const {
    if (blocks.empty()) throw ShapeError("qbf: at least one quantifier block required");
    if (blocks.front().role != Role::Exists)
        throw ShapeError("qbf: outermost block must be Exists");
    for (size_t i = 0; i + 1 < blocks.size(); ++i)
        if (blocks[i].role == blocks[i + 1].role)
            throw ShapeError("qbf: quantifier roles must strictly alternate");
    int n = var_count();
    std::vector<int> seen(n, 0);
    for (const auto &b : blocks) {
        if (b.vars.empty()) throw ShapeError("qbf: empty quantifier block");
        for (int v : b.vars) {
            if (v < 0 || v >= n) throw ShapeError("qbf: variable index out of range");
            if (seen[v]++) throw ShapeError("qbf: variable quantified twice");
        }
    }
    for (const auto &c : matrix) {
        if (c.literals.empty() || c.literals.size() > 3)
            throw ShapeError("qbf: clause width must be 1..3");
        for (const auto &l : c.literals)
            if (l.var < 0 || l.var >= n)
                throw ShapeError("qbf: clause variable not quantified");
    }
}

Clause normalize_clause(std::vector<Literal> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i].var == lits[i + 1].var)
            throw ShapeError("clause: tautological (contains a literal and its negation)");
    if (lits.empty()) throw ShapeError("clause: empty");
    if (lits.size() > 3) throw ShapeError("clause: width > 3");
    return Clause{std::move(lits)};
}

bool eval_matrix(const QbfInstance &q, const std::vector<bool> &assignment) {
    if (static_cast<int>(assignment.size()) < q.var_count())
        throw ShapeError("eval_matrix: assignment does not cover all variables");
    bool sat = true;
    for (const auto &c : q.matrix) {
        bool clause_sat = false;
        for (const auto &l : c.literals)
            if (assignment[l.var] != l.negated) { clause_sat = true; break; }
        if (!clause_sat) { sat = false; break; }
    }
    return sat != q.matrix_negated;
}

namespace {

bool decide_rec(const QbfInstance &q, size_t block, size_t pos,
                std::vector<bool> &assignment) {
    if (block == q.blocks.size()) return eval_matrix(q, assignment);
    const auto &b = q.blocks[block];
    if (pos == b.vars.size()) return decide_rec(q, block + 1, 0, assignment);
    int v = b.vars[pos];
    for (bool val : {false, true}) {
        assignment[v] = val;
        bool sub = decide_rec(q, block, pos + 1, assignment);
        if (b.role == Role::Exists && sub) return true;
        if (b.role == Role::ForAll && !sub) return false;
    }
    return b.role == Role::ForAll;
}

} // namespace

QbfResult qbf_decide(const QbfInstance &q) {
    q.check_invariants();
    std::vector<bool> assignment(q.var_count(), false);
    QbfResult r;
    const auto &top = q.blocks.front().vars;
    // top block is Exists: search its assignments in lexicographic order
    // (0 before 1) so the reported witness is canonical
    size_t k = top.size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
        std::vector<bool> topvals(k);
        for (size_t i = 0; i < k; ++i) {
            topvals[i] = (mask >> (k - 1 - i)) & 1;
            assignment[top[i]] = topvals[i];
        }
        bool sub = q.blocks.size() == 1
                       ? eval_matrix(q, assignment)
                       : decide_rec(q, 1, 0, assignment);
        if (sub) {
            r.value = true;
            r.witness = topvals;
            return r;
        }
    }
    return r;
}

QbfInstance parse_qdimacs(const std::string &text) {
    QbfInstance q;
    std::istringstream in(text);
    std::string line;
    int nvars = -1, nclauses = -1;
    bool negated = false;
    std::vector<std::pair<char, std::vector<int>>> quant_lines;
    std::vector<std::vector<int>> clause_lines;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") {
            std::string rest;
            if (ls >> rest && rest == "negated-matrix") negated = true;
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            if (!(ls >> fmt >> nvars >> nclauses) || fmt != "cnf" || nvars < 0 || nclauses < 0)
                throw ParseError("qdimacs: malformed problem line");
            continue;
        }
        if (tok == "e" || tok == "a") {
            if (nvars < 0) throw ParseError("qdimacs: quantifier line before header");
            std::vector<int> vars;
            int v;
            while (ls >> v && v != 0) {
                if (v < 1 || v > nvars) throw ParseError("qdimacs: variable out of range");
                vars.push_back(v - 1);
            }
            if (v != 0) throw ParseError("qdimacs: quantifier line not zero-terminated");
            quant_lines.emplace_back(tok[0], std::move(vars));
            continue;
        }
        if (nvars < 0) throw ParseError("qdimacs: clause before header");
        std::vector<int> lits;
        int l = 0;
        std::istringstream cs(line);
        while (cs >> l && l != 0) {
            if (l < -nvars || l > nvars) throw ParseError("qdimacs: literal out of range");
            lits.push_back(l);
        }
        if (l != 0) throw ParseError("qdimacs: clause not zero-terminated");
        clause_lines.push_back(std::move(lits));
    }
    if (nvars < 0) throw ParseError("qdimacs: missing problem line");
    if (static_cast<int>(clause_lines.size()) != nclauses)
        throw ParseError("qdimacs: clause count does not match header");
    if (quant_lines.empty()) throw ParseError("qdimacs: no quantifier lines");
    for (const auto &[kind, vars] : quant_lines)
        q.blocks.push_back({kind == 'e' ? Role::Exists : Role::ForAll, vars});
    q.matrix_negated = negated;
    for (const auto &lits : clause_lines) {
        std::vector<Literal> ls;
        for (int l : lits) ls.push_back({std::abs(l) - 1, l < 0});
        try {
            q.matrix.push_back(normalize_clause(std::move(ls)));
        } catch (const ShapeError &e) {
            throw ParseError(std::string("qdimacs: ") + e.what());
        }
    }
    int declared = 0;
    for (const auto &b : q.blocks) declared += static_cast<int>(b.vars.size());
    if (declared != nvars) throw ParseError("qdimacs: quantifier lines do not cover all variables");
    try {
        q.check_invariants();
    } catch (const ShapeError &e) {
        throw ParseError(std::string("qdimacs: ") + e.what());
    }
    return q;
}

std::string emit_qdimacs(const QbfInstance &q) {
    std::ostringstream out;
    if (q.matrix_negated) out << "c negated-matrix\n";
    out << "p cnf " << q.var_count() << " " << q.matrix.size() << "\n";
    for (const auto &b : q.blocks) {
        out << (b.role == Role::Exists ? "e" : "a");
        for (int v : b.vars) out << " " << v + 1;
        out << " 0\n";
    }
    for (const auto &c : q.matrix) {
        for (const auto &l : c.literals) out << (l.negated ? -(l.var + 1) : l.var + 1) << " ";
        out << "0\n";
    }
    return out.str();
}

long long normalized_clause_count(int n) {
    auto choose = [](long long a, long long b) {
        long long r = 1;
        for (long long i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
        return r;
    };
    long long total = 0;
    for (int k = 1; k <= 3 && k <= n; ++k) total += choose(n, k) << k;
    return total;
}

std::vector<Clause> all_normalized_clauses(int n) {
    std::vector<Clause> out;
    for (int k = 1; k <= 3 && k <= n; ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            for (int signs = 0; signs < (1 << k); ++signs) {
                std::vector<Literal> lits;
                for (int i = 0; i < k; ++i)
                    lits.push_back({idx[i], ((signs >> i) & 1) != 0});
                out.push_back(normalize_clause(std::move(lits)));
            }
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return out;
}

QbfInstance random_qbf(uint64_t seed, const std::vector<int> &block_sizes,
                       int clause_count, bool matrix_negated) {
    if (block_sizes.empty()) throw ShapeError("random_qbf: block_sizes must be nonempty");
    for (int s : block_sizes)
        if (s < 1) throw ShapeError("random_qbf: block sizes must be >= 1");
    if (clause_count < 0) throw ShapeError("random_qbf: negative clause count");
    QbfInstance q;
    int next = 0;
    Role role = Role::Exists;
    for (int s : block_sizes) {
        QuantifierBlock b;
        b.role = role;
        for (int i = 0; i < s; ++i) b.vars.push_back(next++);
        q.blocks.push_back(std::move(b));
        role = role == Role::Exists ? Role::ForAll : Role::Exists;
    }
    q.matrix_negated = matrix_negated;
    int n = next;
    Rng rng(seed);
    // weight clause widths by how many normalized clauses have each width
    long long w1 = n >= 1 ? 2ll * n : 0;
    long long w2 = n >= 2 ? 4ll * n * (n - 1) / 2 : 0;
    long long w3 = n >= 3 ? 8ll * n * (n - 1) * (n - 2) / 6 : 0;
    for (int ci = 0; ci < clause_count; ++ci) {
        long long t = static_cast<long long>(rng.below(static_cast<uint64_t>(w1 + w2 + w3)));
        int k = t < w1 ? 1 : (t < w1 + w2 ? 2 : 3);
        std::vector<int> vars;
        while (static_cast<int>(vars.size()) < k) {
            int v = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
        }
        std::vector<Literal> lits;
        for (int v : vars) lits.push_back({v, rng.flip()});
        q.matrix.push_back(normalize_clause(std::move(lits)));
    }
    q.check_invariants();
    return q;
}

} // namespace fig

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fig/errors.hpp"

namespace fig {

enum class Role { Exists, ForAll };

struct Literal {
    int var = 0;
    bool negated = false;

    friend bool operator==(const Literal &, const Literal &) = default;
    friend auto operator<=>(const Literal &, const Literal &) = default;
};

// 1..3 literals, sorted, no duplicates, no complementary pair.
struct Clause {
    std::vector<Literal> literals;

    friend bool operator==(const Clause &, const Clause &) = default;
    friend auto operator<=>(const Clause &, const Clause &) = default;
};

struct QuantifierBlock {
    Role role;
    std::vector<int> vars; // global variable indices, in declaration order
};

// Alternating-quantified CNF with at most 3 literals per clause.
// matrix_negated=true encodes the "E is never satisfied" goal families.
struct QbfInstance {
    std::vector<QuantifierBlock> blocks; // outermost first, roles alternate, Exists first
    std::vector<Clause> matrix;
    bool matrix_negated = false;
    std::vector<std::string> var_names; // optional; defaults to v1..vn

    int var_count() const;
    std::string name_of(int var) const;
    void check_invariants() const; // throws ShapeError
};

// Sorts literals, removes duplicates. Throws ShapeError on tautological
// or oversized clauses (the reductions index gadgets by literal
// occurrences, so ill-formed clauses would corrupt gadget counts).
Clause normalize_clause(std::vector<Literal> lits);

// Truth of the matrix under a full assignment, XOR matrix_negated.
bool eval_matrix(const QbfInstance &q, const std::vector<bool> &assignment);

struct QbfResult {
    bool value = false;
    // assignment of the outermost block's variables (block order) when
    // the instance is true; lexicographically smallest with 0 < 1
    std::optional<std::vector<bool>> witness;
};

// Exhaustive evaluation of the quantifier prefix over eval_matrix.
QbfResult qbf_decide(const QbfInstance &q);

// QDIMACS dialect: "p cnf <nvars> <nclauses>", alternating e/a lines
// (e first), zero-terminated clauses, extension comment
// "c negated-matrix" toggles matrix_negated.
QbfInstance parse_qdimacs(const std::string &text);
std::string emit_qdimacs(const QbfInstance &q);

// Reproducible random instance; clauses i.i.d. uniform over all
// normalized 1..3-literal clauses on the declared variables.
QbfInstance random_qbf(uint64_t seed, const std::vector<int> &block_sizes,
                       int clause_count, bool matrix_negated = false);

// How many distinct normalized clauses exist on n variables.
long long normalized_clause_count(int n);

// All normalized clauses on n variables, in a fixed deterministic order.
std::vector<Clause> all_normalized_clauses(int n);

} // namespace fig

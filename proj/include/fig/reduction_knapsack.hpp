#pragma once

#include <string>
#include <vector>

#include "fig/knapsack.hpp"
#include "fig/qbf.hpp"

namespace fig {

// Digit positions of the base-10 encoding. Position = power-of-ten
// exponent; clause positions are the least significant block, then one
// digit per defender-level variable and two per interdiction-level
// variable, then the high-order M block.
struct DigitLayout {
    struct VarDigits {
        int level = 0;   // game level of the variable's block (1 = knapsack)
        int low_exp = 0;
        int width = 1;   // 1 or 2; high position = low_exp + width - 1
    };
    std::vector<int> clause_exp;   // clause index -> exponent
    std::vector<VarDigits> var_digits; // by global variable index
    int m_exp = 0;                 // exponent where the M block starts
    int m_width = 1;               // digits reserved for the M block

    int high_exp(int var) const {
        return var_digits[var].low_exp + var_digits[var].width - 1;
    }
};

enum class ItemRole { VarPos, VarNeg, J, JPrime, Clause1, Clause2 };

struct ItemProvenance {
    ItemRole role;
    int var = -1;    // for VarPos/VarNeg/J/JPrime
    int clause = -1; // for Clause1/Clause2
};

struct CompiledArtifact {
    UmikInstance instance;
    DigitLayout layout;
    std::vector<ItemProvenance> provenance;
    QbfInstance source;

    // -1 when the item does not exist
    int find_item(ItemRole role, int var_or_clause) const;
};

// B2-with-negated-matrix formulas (ExistsX ForAllY, E never satisfied)
// into the bilevel game, digit-for-digit as in the source construction.
CompiledArtifact compile_b2_to_ubik(const QbfInstance &q);

// B3 formulas (ExistsX ForAllY ExistsZ, E satisfied) into the trilevel game.
CompiledArtifact compile_b3_to_utik(const QbfInstance &q);

// General alternating prefix of m+1 blocks into the (m+1)-level game;
// specialises item-for-item to the two compilers above at m=1 and m=2.
CompiledArtifact compile_qbf_to_umik(const QbfInstance &q);

// Plain-text digit table in the figures' row/column layout.
std::string render_digit_table(const CompiledArtifact &art);

std::string provenance_to_json(const CompiledArtifact &art);

// Column sums over all items for every clause/variable digit position,
// weights and profits separately (the soundness condition for per-digit
// reasoning: each must be <= 9), plus the M-block sums as the final entry.
struct ColumnSums {
    std::vector<Int> weight;
    std::vector<Int> profit;
};
ColumnSums column_sums(const CompiledArtifact &art);

// Expected decimal digit count of the profit goal:
// |C| + sum of variable digit widths + digits of the M-block value.
int expected_goal_digits(const CompiledArtifact &art);

} // namespace fig

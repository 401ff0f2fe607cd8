#pragma once

#include <string>
#include <vector>

#include "fig/flow.hpp"
#include "fig/knapsack.hpp"
#include "fig/mcn.hpp"
#include "fig/path.hpp"
#include "fig/powergrid.hpp"
#include "fig/qbf.hpp"
#include "fig/reduction_knapsack.hpp"

namespace fig {

enum class Family { Ubik, Utik, Umik, Umfipf, Spipuf, Tepgfu, Umcn };

std::string family_name(Family f);
Family family_from_name(const std::string &s);

struct FamilySpec {
    Family family = Family::Ubik;
    std::vector<int> block_sizes; // QBF-source families
    int clause_min = 1;
    int clause_max = 2;
    int count = 0;       // number of random draws
    uint64_t seed = 1;
    bool exhaustive = false; // all normalized clause sets instead of draws
    bool pruning = true;
    bool parallel = false;
    bool with_properties = false;
    bool assert_all = false; // override the record-only small-|Y| policy
    double per_instance_budget_ms = 0; // > 0: over-budget instances are
                                       // recorded as skipped, not asserted
    // UBIK-source families (SPIPUF / TEPGFU)
    int n_max = 5;
    int w_max = 5;
    int p_max = 7;
};

struct InstanceResult {
    int id = 0;
    std::string source;   // qdimacs text or knapsack json
    bool source_decision = false;
    bool game_decision = false;
    bool agree = false;
    bool asserted = true; // false: recorded only, outside the proofs' domain
    bool skipped = false; // desk-scale guard or time budget hit; recorded, never failed
    double ms = 0;        // wall time of the two decisions
    std::string witness_note;
    std::string error;
};

struct PropertyCheck {
    std::string name;
    int cases = 0;
    int violations = 0;
    bool asserted = true;
    std::vector<std::string> notes; // first few violation witnesses
};

struct VerificationReport {
    std::string family;
    std::vector<InstanceResult> results;
    std::vector<PropertyCheck> properties;
    int checked = 0;
    int agreed = 0;
    int skipped = 0;
    int errors = 0;
    int asserted_disagreements = 0;
    int recorded_disagreements = 0;
    int asserted_property_violations = 0;
    int recorded_property_violations = 0;

    bool ok() const {
        return asserted_disagreements == 0 && asserted_property_violations == 0 &&
               errors == 0;
    }
    void finish(); // recompute the counters from results/properties
};

// Compiles and solves both sides of every instance in the family and
// records agreement verbatim. Instances outside the constructions'
// stated validity domain (|Y| = 1 for the trilevel knapsack and the flow
// game) are recorded, not asserted, unless assert_all is set.
VerificationReport check_equivalence(const FamilySpec &spec);

// The structural properties of each construction, enumerated literally
// at instance scale.
std::vector<PropertyCheck> property_suite_ubik(const CompiledArtifact &art);
std::vector<PropertyCheck> property_suite_utik(const CompiledArtifact &art);
std::vector<PropertyCheck> property_suite_flow(const FlowCompiled &art);
std::vector<PropertyCheck> property_suite_mcn(const McnCompiled &art);

// Digit-table renderings of the two worked construction examples.
QbfInstance figure1_formula();
QbfInstance figure2_formula();
McnInstance figure3_instance();
std::pair<std::string, std::string> regenerate_figures();

// Seeded random bilevel knapsack instances for the game-to-game reductions.
UmikInstance gen_random_ubik(uint64_t seed, int n_max, int w_max, int p_max);

// Item-for-item comparison (items, budgets, capacity, goal, provenance).
bool artifacts_identical(const CompiledArtifact &a, const CompiledArtifact &b);

struct MutationOutcome {
    int id = 0;
    std::string description;
    bool detected = false;
    std::string detected_by;
};

// 20 seeded single-parameter mutations of compiled instances; each must
// be caught by at least one equivalence, property, or structural check.
std::vector<MutationOutcome> run_mutation_suite();

// Timings are emitted only on request so that default outputs stay
// byte-deterministic.
std::string report_to_json(const VerificationReport &rep, bool with_sources = false,
                           bool with_timings = false);
std::string report_to_text(const VerificationReport &rep);

} // namespace fig

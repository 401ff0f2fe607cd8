#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fig/verify.hpp"

using namespace fig;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitShape = 3;
constexpr int kExitGuard = 4;
constexpr int kExitVerify = 5;

std::string slurp(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

std::string decision_json(const GameDecision &d) {
    nlohmann::ordered_json j;
    j["decision"] = d.value;
    if (d.witness)
        j["witness"] = *d.witness;
    else
        j["witness"] = nullptr;
    return j.dump() + "\n";
}

std::string qbf_decision_json(const QbfResult &r) {
    nlohmann::ordered_json j;
    j["decision"] = r.value;
    if (r.witness) {
        std::vector<int> bits;
        for (bool b : *r.witness) bits.push_back(b ? 1 : 0);
        j["witness"] = bits;
    } else {
        j["witness"] = nullptr;
    }
    return j.dump() + "\n";
}

std::vector<int> parse_blocks(const std::string &s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

uint64_t mask_from_list(const std::vector<int> &v) {
    uint64_t m = 0;
    for (int i : v) m |= uint64_t{1} << i;
    return m;
}

int run(int argc, char **argv) {
    CLI::App app{"fortification-interdiction game toolkit"};
    app.require_subcommand(1);

    auto *cmp = app.add_subcommand("compile", "compile a source instance into a game");
    std::string cmp_target, cmp_in, cmp_out, cmp_prov, cmp_table, cmp_dot;
    cmp->add_option("--target", cmp_target, "ubik|utik|umik|umfipf|spipuf|tepgfu|umcn")
        ->required();
    cmp->add_option("--in", cmp_in, "source file (qdimacs or knapsack json)")->required();
    cmp->add_option("--out", cmp_out, "instance output (default stdout)");
    cmp->add_option("--provenance", cmp_prov, "sidecar provenance json");
    cmp->add_option("--digit-table", cmp_table, "digit-table rendering (knapsack targets)");
    cmp->add_option("--dot", cmp_dot, "DOT export of the compiled structure");

    auto *slv = app.add_subcommand("solve", "decide an instance and print the witness");
    std::string slv_game, slv_in;
    bool slv_noprune = false, slv_parallel = false;
    slv->add_option("--game", slv_game, "qbf|ubik|utik|umik|umfipf|spipuf|tepgfu|umcn")
        ->required();
    slv->add_option("--in", slv_in, "instance file")->required();
    slv->add_flag("--no-prune", slv_noprune, "disable admissible pruning (umcn)");
    slv->add_flag("--parallel", slv_parallel, "parallel top-level search (umcn)");

    auto *ver = app.add_subcommand("verify", "equivalence and property families");
    std::string ver_family = "ubik", ver_blocks, ver_out;
    int ver_count = 0, ver_cmin = 1, ver_cmax = 2;
    uint64_t ver_seed = 0;
    bool ver_exhaustive = false, ver_props = false, ver_parallel = false;
    bool ver_assert_all = false, ver_mutations = false, ver_text = false;
    bool ver_sources = false, ver_timings = false;
    double ver_budget = 0;
    int ver_x = 0, ver_y = 0, ver_z = 0;
    ver->add_option("--family", ver_family, "ubik|utik|umik|umfipf|spipuf|tepgfu|umcn");
    ver->add_option("--blocks", ver_blocks, "comma-separated block sizes, e.g. 1,2");
    ver->add_option("--x", ver_x, "outermost block size (alternative to --blocks)");
    ver->add_option("--y", ver_y, "second block size");
    ver->add_option("--z", ver_z, "third block size");
    ver->add_option("--count", ver_count, "number of random instances");
    ver->add_option("--seed", ver_seed, "random seed");
    ver->add_option("--cmin", ver_cmin, "minimum clause count");
    ver->add_option("--cmax", ver_cmax, "maximum clause count");
    ver->add_flag("--exhaustive", ver_exhaustive, "all normalized clause sets");
    ver->add_flag("--properties", ver_props, "also run the property suites");
    ver->add_flag("--parallel", ver_parallel, "verify instances in parallel");
    ver->add_flag("--assert-all", ver_assert_all,
                  "assert even outside the recorded-only domain");
    ver->add_flag("--mutations", ver_mutations, "run the seeded mutation suite instead");
    ver->add_flag("--text", ver_text, "human-readable summary to stdout");
    ver->add_flag("--with-sources", ver_sources, "embed instance sources in the report");
    ver->add_flag("--timings", ver_timings, "include per-instance wall times in the report");
    ver->add_option("--budget-ms", ver_budget, "per-instance wall budget; over-budget runs are recorded as skipped");
    ver->add_option("--out", ver_out, "report file (default stdout)");

    auto *gen = app.add_subcommand("gen", "generate a random source instance");
    std::string gen_kind = "qbf", gen_blocks = "1,1", gen_out;
    uint64_t gen_seed = 0;
    int gen_clauses = 2, gen_nmax = 5, gen_wmax = 5, gen_pmax = 7;
    bool gen_negated = false;
    gen->add_option("--kind", gen_kind, "qbf|ubik");
    gen->add_option("--seed", gen_seed, "random seed")->required();
    gen->add_option("--blocks", gen_blocks, "block sizes for qbf");
    gen->add_option("--clauses", gen_clauses, "clause count for qbf");
    gen->add_flag("--negated", gen_negated, "never-satisfied goal family");
    gen->add_option("--n-max", gen_nmax, "max items for ubik");
    gen->add_option("--w-max", gen_wmax, "max weight for ubik");
    gen->add_option("--p-max", gen_pmax, "max profit for ubik");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    auto *ren = app.add_subcommand("render", "digit-table rendering of a compilation");
    std::string ren_in, ren_target = "ubik", ren_out;
    int ren_figure = 0;
    ren->add_option("--in", ren_in, "qdimacs source");
    ren->add_option("--target", ren_target, "ubik|utik|umik");
    ren->add_option("--figure", ren_figure, "render a built-in worked example (1 or 2)");
    ren->add_option("--out", ren_out, "output file (default stdout)");

    auto *dot = app.add_subcommand("export-dot", "DOT rendering of a game instance");
    std::string dot_game, dot_in, dot_out, dot_play;
    dot->add_option("--game", dot_game, "umfipf|spipuf|umcn|tepgfu")->required();
    dot->add_option("--in", dot_in, "instance json")->required();
    dot->add_option("--play", dot_play,
                    "json with D/I/P vertex lists to color a critical-node play");
    dot->add_option("--out", dot_out, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    if (cmp->parsed()) {
        if (cmp_target == "ubik" || cmp_target == "utik" || cmp_target == "umik") {
            auto q = parse_qdimacs(slurp(cmp_in));
            CompiledArtifact art = cmp_target == "ubik"   ? compile_b2_to_ubik(q)
                                   : cmp_target == "utik" ? compile_b3_to_utik(q)
                                                          : compile_qbf_to_umik(q);
            spill(cmp_out, umik_to_json(art.instance));
            if (!cmp_prov.empty()) spill(cmp_prov, provenance_to_json(art));
            if (!cmp_table.empty()) spill(cmp_table, render_digit_table(art));
        } else if (cmp_target == "umfipf") {
            auto art = compile_b2sat_to_umfipf(parse_qdimacs(slurp(cmp_in)));
            spill(cmp_out, flow_to_json(art.instance));
            if (!cmp_dot.empty()) spill(cmp_dot, flow_to_dot(art.instance.network));
        } else if (cmp_target == "umcn") {
            auto art = compile_b3sat_to_umcn(parse_qdimacs(slurp(cmp_in)));
            spill(cmp_out, mcn_to_json(art.instance));
            if (!cmp_dot.empty()) spill(cmp_dot, mcn_to_dot(art.instance));
        } else if (cmp_target == "spipuf") {
            auto art = compile_ubik_to_spipuf(umik_from_json(slurp(cmp_in)));
            spill(cmp_out, path_to_json(art.instance));
            if (!cmp_prov.empty()) {
                nlohmann::ordered_json j;
                j["item_arc"] = art.item_arc;
                j["detour_arc"] = art.detour_arc;
                spill(cmp_prov, j.dump(2) + "\n");
            }
            if (!cmp_dot.empty()) spill(cmp_dot, path_to_dot(art.instance.graph));
        } else if (cmp_target == "tepgfu") {
            auto art = compile_ubik_to_tepgfu(umik_from_json(slurp(cmp_in)));
            spill(cmp_out, grid_to_json(art.instance));
            if (!cmp_prov.empty()) {
                nlohmann::ordered_json j;
                j["item_line"] = art.item_line;
                spill(cmp_prov, j.dump(2) + "\n");
            }
            if (!cmp_dot.empty()) spill(cmp_dot, grid_to_dot(art.instance));
        } else {
            throw ShapeError("unknown compile target: " + cmp_target);
        }
        return 0;
    }

    if (slv->parsed()) {
        std::string text = slurp(slv_in);
        if (slv_game == "qbf") {
            std::cout << qbf_decision_json(qbf_decide(parse_qdimacs(text)));
        } else if (slv_game == "ubik") {
            std::cout << decision_json(ubik_decide(umik_from_json(text)));
        } else if (slv_game == "utik") {
            std::cout << decision_json(utik_decide(umik_from_json(text)));
        } else if (slv_game == "umik") {
            std::cout << decision_json(umik_decide(umik_from_json(text)));
        } else if (slv_game == "umfipf") {
            std::cout << decision_json(umfipf_decide(flow_from_json(text)));
        } else if (slv_game == "spipuf") {
            std::cout << decision_json(spipuf_decide(path_from_json(text)));
        } else if (slv_game == "tepgfu") {
            std::cout << decision_json(tepgfu_decide(grid_from_json(text)));
        } else if (slv_game == "umcn") {
            UmcnOptions opts;
            opts.prune = !slv_noprune;
            opts.parallel = slv_parallel;
            std::cout << decision_json(umcn_decide(mcn_from_json(text), opts));
        } else {
            throw ShapeError("unknown game: " + slv_game);
        }
        return 0;
    }

    if (ver->parsed()) {
        if (ver_mutations) {
            auto outcomes = run_mutation_suite();
            bool all = true;
            for (const auto &m : outcomes) {
                std::cout << (m.detected ? "caught " : "MISSED ") << m.id << ": "
                          << m.description;
                if (m.detected) std::cout << " (by " << m.detected_by << ")";
                std::cout << "\n";
                all = all && m.detected;
            }
            return all ? 0 : kExitVerify;
        }
        FamilySpec spec;
        spec.family = family_from_name(ver_family);
        if (!ver_blocks.empty()) spec.block_sizes = parse_blocks(ver_blocks);
        if (spec.block_sizes.empty() && ver_x > 0) {
            spec.block_sizes.push_back(ver_x);
            if (ver_y > 0) spec.block_sizes.push_back(ver_y);
            if (ver_z > 0) spec.block_sizes.push_back(ver_z);
        }
        spec.count = ver_count;
        spec.seed = ver_seed;
        spec.clause_min = ver_cmin;
        spec.clause_max = ver_cmax;
        spec.exhaustive = ver_exhaustive;
        spec.with_properties = ver_props;
        spec.parallel = ver_parallel;
        spec.assert_all = ver_assert_all;
        spec.per_instance_budget_ms = ver_budget;
        auto rep = check_equivalence(spec);
        if (!ver_out.empty()) spill(ver_out, report_to_json(rep, ver_sources, ver_timings));
        if (ver_text || ver_out.empty()) std::cout << report_to_text(rep);
        return rep.ok() ? 0 : kExitVerify;
    }

    if (gen->parsed()) {
        if (gen_kind == "qbf") {
            auto q = random_qbf(gen_seed, parse_blocks(gen_blocks), gen_clauses,
                                gen_negated);
            spill(gen_out, emit_qdimacs(q));
        } else if (gen_kind == "ubik") {
            spill(gen_out,
                  umik_to_json(gen_random_ubik(gen_seed, gen_nmax, gen_wmax, gen_pmax)));
        } else {
            throw ShapeError("unknown gen kind: " + gen_kind);
        }
        return 0;
    }

    if (ren->parsed()) {
        if (ren_figure == 1) {
            spill(ren_out, render_digit_table(compile_b2_to_ubik(figure1_formula())));
            return 0;
        }
        if (ren_figure == 2) {
            spill(ren_out, render_digit_table(compile_b3_to_utik(figure2_formula())));
            return 0;
        }
        auto q = parse_qdimacs(slurp(ren_in));
        CompiledArtifact art = ren_target == "ubik"   ? compile_b2_to_ubik(q)
                               : ren_target == "utik" ? compile_b3_to_utik(q)
                                                      : compile_qbf_to_umik(q);
        spill(ren_out, render_digit_table(art));
        return 0;
    }

    if (dot->parsed()) {
        std::string text = slurp(dot_in);
        if (dot_game == "umfipf") {
            spill(dot_out, flow_to_dot(flow_from_json(text).network));
        } else if (dot_game == "spipuf") {
            spill(dot_out, path_to_dot(path_from_json(text).graph));
        } else if (dot_game == "tepgfu") {
            spill(dot_out, grid_to_dot(grid_from_json(text)));
        } else if (dot_game == "umcn") {
            auto inst = mcn_from_json(text);
            if (dot_play.empty()) {
                spill(dot_out, mcn_to_dot(inst));
            } else {
                nlohmann::json pj;
                try {
                    pj = nlohmann::json::parse(dot_play);
                } catch (const nlohmann::json::exception &e) {
                    throw ParseError(std::string("play json: ") + e.what());
                }
                auto play = propagate(inst,
                                      mask_from_list(pj.value("D", std::vector<int>{})),
                                      mask_from_list(pj.value("I", std::vector<int>{})),
                                      mask_from_list(pj.value("P", std::vector<int>{})));
                spill(dot_out, mcn_to_dot(inst, &play));
            }
        } else {
            throw ShapeError("unknown export-dot game: " + dot_game);
        }
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const SizeLimitError &e) {
        std::cerr << "size guard: " << e.what() << "\n";
        return kExitGuard;
    } catch (const ShapeError &e) {
        std::cerr << "shape error: " << e.what() << "\n";
        return kExitShape;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

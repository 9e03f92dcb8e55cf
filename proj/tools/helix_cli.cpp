// helix: command-line surface over the root-system, stability, quiver and
// mutation modules. Every subcommand emits JSON by default (schemas are
// versioned); arrange can emit SVG, phases CSV, graph dot.
//
// Exit codes: 0 success, 1 I/O failure, 2 domain error. Errors are written
// to stderr as one JSON object.

#include "helix/json_io.hpp"
#include "helix/svg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace helix;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_artifact(const std::string& out_path, const std::string& content)
{
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw IoError("cannot open output path: " + out_path);
    f << content;
    if (!f.good())
        throw IoError("write failed: " + out_path);
}

std::string read_input(const std::string& path)
{
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot open input path: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

NodeSelection make_selection(const std::string& type, std::size_t node)
{
    return NodeSelection(build_cartan(type), node);
}

Algebra load_algebra(const std::string& name)
{
    if (name == "preproj_A1" || name == "conifold_nccr")
        return preset(name);
    const char* dir = std::getenv("HELIX_PRESET_DIR");
    std::string path = (dir ? std::string(dir) + "/" : std::string("")) + name;
    if (path.size() < 5 || path.substr(path.size() - 5) != ".json")
        path += ".json";
    return algebra_from_json(json::parse(read_input(path)));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"desk-scale calculator for restricted affine root systems, "
                 "stability phases, two-vertex quiver algebras and mutation words"};
    app.require_subcommand(1);

    std::string type = "A1t", out_path, format = "json", charge_str;
    std::size_t node = 1;
    long bound = 40, period = 2, cvalue = 2, radius = 4, steps = 2, length = 1;
    std::string word_str, side = "upper", preset_name = "preproj_A1", profile_path,
                op = "report";
    bool force_json = false, with_classes = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_flag("--json", force_json, "force JSON output");
    };

    auto* roots = app.add_subcommand("roots", "enumerate positive roots up to a height bound");
    roots->add_option("--type", type, "affine type tag, e.g. A1t D4t E8t")->required();
    roots->add_option("--bound", bound, "height bound")->required();
    add_common(roots);

    auto* restr = app.add_subcommand("restrict", "restricted roots of a two-node selection");
    restr->add_option("--type", type)->required();
    restr->add_option("--node", node, "node paired with the extended node (default 1)");
    restr->add_option("--bound", bound)->required();
    restr->add_flag("--classes", with_classes, "include translation classes");
    add_common(restr);

    auto* arrange = app.add_subcommand("arrange", "line arrangement of restricted roots");
    arrange->add_option("--type", type)->required();
    arrange->add_option("--node", node);
    arrange->add_option("--bound", bound)->required();
    arrange->add_option("--format", format, "json or svg");
    add_common(arrange);

    auto* phases_cmd = app.add_subcommand("phases", "phases of restricted roots under a charge");
    phases_cmd->add_option("--type", type)->required();
    phases_cmd->add_option("--node", node);
    phases_cmd->add_option("--bound", bound)->required();
    phases_cmd->add_option("--charge", charge_str, "central charge \"a+bi,c+di\"")->required();
    phases_cmd->add_option("--format", format, "json or csv");
    add_common(phases_cmd);

    auto* gap = app.add_subcommand("gap", "phase gap report for a central charge");
    gap->add_option("--type", type)->required();
    gap->add_option("--node", node);
    gap->add_option("--bound", bound);
    gap->add_option("--charge", charge_str)->required();
    add_common(gap);

    auto* mutate = app.add_subcommand("mutate", "normalize a functor word and its K-matrix");
    mutate->add_option("--word", word_str, "dot-separated word, e.g. Phi0.VdB")->required();
    mutate->add_option("--period", period, "helix period (default 2)");
    mutate->add_option("--c", cvalue, "extension count of the mutation matrices");
    add_common(mutate);

    auto* chain = app.add_subcommand("chain", "heart labels along the tilting chain");
    chain->add_option("--side", side, "upper or lower")->required();
    chain->add_option("--steps", steps, "number of labels")->required();
    chain->add_option("--period", period);
    add_common(chain);

    auto* graph = app.add_subcommand("graph", "tilting exchange graph around the origin");
    graph->add_option("--radius", radius, "word distance from the origin")->required();
    graph->add_option("--format", format, "json or dot");
    add_common(graph);

    auto* spread_cmd = app.add_subcommand("spread", "cohomology profile toolkit");
    spread_cmd->add_option("--preset", preset_name, "preproj_A1, conifold_nccr, or a preset file name");
    spread_cmd->add_option("--profile", profile_path, "profile JSON path or - for stdin")->required();
    spread_cmd->add_option("--op", op, "report | bangbang | interval | regrade | walk | collapse");
    spread_cmd->add_option("--period", period);
    spread_cmd->add_option("--c", cvalue);
    add_common(spread_cmd);

    auto* catalog = app.add_subcommand("catalog", "brick labels for a contraction length");
    catalog->add_option("--length", length, "fibre length, 1..6")->required();
    add_common(catalog);

    auto* preset_cmd = app.add_subcommand("preset", "dump a bundled algebra preset");
    preset_cmd->add_option("--name", preset_name)->required();
    add_common(preset_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (roots->parsed()) {
            auto c = build_cartan(type);
            write_artifact(out_path, dump(roots_json(enumerate_roots(c, bound))));
        } else if (restr->parsed()) {
            auto sel = make_selection(type, node);
            json j = restricted_roots_json(restricted_roots(sel, bound));
            j["delta_bar"] = json_of(delta_bar(sel));
            j["node_length"] = to_ll(node_length(sel.parent, sel.node));
            if (with_classes)
                j["classes"] = classes_json(root_classes_mod_delta(sel, bound));
            write_artifact(out_path, dump(j));
        } else if (arrange->parsed()) {
            auto sel = make_selection(type, node);
            auto arr = arrangement(sel, bound);
            if (format == "svg" && !force_json) {
                std::string caption = type + " node " + std::to_string(node) +
                                      " bound " + std::to_string(bound);
                write_artifact(out_path, arrangement_svg(arr, caption));
            } else {
                write_artifact(out_path, dump(arrangement_json(arr)));
            }
        } else if (phases_cmd->parsed()) {
            auto sel = make_selection(type, node);
            auto ps = phases(parse_charge(charge_str), sel, bound);
            if (format == "csv" && !force_json)
                write_artifact(out_path, phases_csv(ps));
            else
                write_artifact(out_path, dump(phases_json(ps)));
        } else if (gap->parsed()) {
            auto sel = make_selection(type, node);
            auto g = find_phase_gap(parse_charge(charge_str), sel, bound);
            write_artifact(out_path, dump(gap_json(g, bound)));
        } else if (mutate->parsed()) {
            MutationConfig cfg{period, cvalue};
            auto w = parse_word(word_str);
            auto reduced = reduce_word(w, period);
            write_artifact(out_path, dump(word_json(reduced, k_action(w, cfg))));
        } else if (chain->parsed()) {
            if (side != "upper" && side != "lower")
                throw std::invalid_argument("side must be upper or lower");
            auto labels = heart_chain(side == "upper" ? HeartLabel::Upper : HeartLabel::Lower,
                                      steps, period);
            write_artifact(out_path, dump(chain_json(labels)));
        } else if (graph->parsed()) {
            auto g = exchange_graph(radius);
            if (format == "dot" && !force_json)
                write_artifact(out_path, graph_dot(g));
            else
                write_artifact(out_path, dump(graph_json(g)));
        } else if (spread_cmd->parsed()) {
            Algebra q = load_algebra(preset_name);
            auto profile = profile_from_json(q, json::parse(read_input(profile_path)));
            MutationConfig cfg{period, cvalue};
            json j = {{"schema_version", kSchemaVersion}, {"op", op}};
            if (op == "report") {
                auto [p, n] = normalize(profile);
                auto rep = check_selfext_nonneg(q, p);
                j["spread"] = n;
                j["selfext_ok"] = rep.selfext_ok;
                j["top_class"] = json_of(rep.top_class);
                j["bottom_class"] = json_of(rep.bottom_class);
                if (rep.witness)
                    j["witness"] = {{"from", rep.witness->from_summand},
                                    {"to", rep.witness->to_summand},
                                    {"shift", rep.witness->shift},
                                    {"ext_degree", rep.witness->ext_degree},
                                    {"dim", rep.witness->dim}};
            } else if (op == "bangbang") {
                auto [p, n] = normalize(profile);
                auto r = hom_vanishing_bang_bang(q, p);
                if (!r)
                    j["result"] = "not_applicable";
                else
                    j["result"] = *r;
            } else if (op == "interval") {
                auto [p, n] = normalize(profile);
                auto iv = improvement_interval(q, p);
                j["nonempty"] = iv.nonempty;
                j["torsion_generator_count"] = iv.torsion_generators.size();
                j["torsionfree_generator_count"] = iv.torsionfree_generators.size();
            } else if (op == "regrade") {
                auto [p, n] = normalize(profile);
                std::vector<Representation> gens;
                for (const auto* s : p.at_degree(0))
                    gens.push_back(s->module);
                auto out = tilt_regrade(q, p, gens);
                j["profile"] = profile_json(q, out);
                j["spread"] = out.spread();
            } else if (op == "walk") {
                auto res = guided_walk(q, profile, cfg);
                const char* status = res.status == WalkStatus::Done ? "done"
                                     : res.status == WalkStatus::MaxSteps ? "max_steps"
                                     : res.status == WalkStatus::SelfextFailed ? "selfext_failed"
                                     : res.status == WalkStatus::StandinSplit ? "standin_split"
                                                                              : "no_progress";
                j["status"] = status;
                j["steps"] = res.steps;
                j["word"] = format_word(res.word);
                j["spread"] = res.profile.spread();
                j["final_class"] = json_of(res.profile.total_class());
            } else if (op == "collapse") {
                auto [p, n] = normalize(profile);
                auto res = collapse_detect(q, p);
                j["valid"] = res.valid;
                if (res.violation)
                    j["violation"] = {{"marker", res.violation->marker},
                                      {"top_degree", res.violation->top_degree},
                                      {"bottom_degree", res.violation->bottom_degree},
                                      {"hom_dim", res.violation->hom_dim}};
                else {
                    json groups = json::object();
                    for (const auto& [m, idx] : res.groups)
                        groups[m] = idx;
                    j["groups"] = groups;
                }
            } else {
                throw std::invalid_argument("unknown spread op: " + op);
            }
            write_artifact(out_path, dump(j));
        } else if (catalog->parsed()) {
            if (length < 1 || length > 6)
                throw std::invalid_argument("length must be between 1 and 6");
            std::vector<std::string> labels;
            labels.push_back("O_C");
            for (long k = 2; k <= length; ++k)
                labels.push_back("O_" + std::to_string(k) + "C");
            if (length >= 5)
                labels.push_back("Z");
            const std::string note =
                "up to shifts, mutation functors, and the Grothendieck duality functor";
            if (force_json) {
                json j = {{"schema_version", kSchemaVersion},
                          {"length", length},
                          {"labels", labels},
                          {"note", note}};
                write_artifact(out_path, dump(j));
            } else {
                std::string text;
                for (const auto& l : labels)
                    text += l + "\n";
                text += "# " + note + "\n";
                write_artifact(out_path, text);
            }
        } else if (preset_cmd->parsed()) {
            write_artifact(out_path, dump(algebra_json(load_algebra(preset_name))));
        }
    } catch (const IoError& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "io"}}.dump() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "domain"}}.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "domain"}}.dump() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "domain"}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
        return 2;
    }
    return 0;
}

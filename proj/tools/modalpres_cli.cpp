// Command-line front end. Every command prints one JSON object
// {"result": ..., "witness": ...}. Exit codes: 0 success, 2 usage, 3 input.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "modalpres/charform.hpp"
#include "modalpres/formula.hpp"
#include "modalpres/gnn.hpp"
#include "modalpres/json_io.hpp"
#include "modalpres/morphism.hpp"
#include "modalpres/synthesis.hpp"
#include "modalpres/unravel.hpp"

using nlohmann::json;
using namespace modalpres;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

MorphismKind kind_arg(const std::string& s) {
    auto k = parse_kind(s);
    if (!k) throw Usage("unknown kind '" + s + "' (iso, embed, injhom, hom)");
    return *k;
}

void emit(const json& result, const json& witness = nullptr) {
    json out;
    out["result"] = result;
    out["witness"] = witness;
    std::cout << out.dump() << '\n';
}

json witness_json(const Witness& w) {
    json j = json::object();
    for (const auto& [a, b] : w) j[a] = b;
    return j;
}

json counterexample_json(const std::optional<Counterexample>& cx) {
    if (!cx) return nullptr;
    return {{"source", model_to_json(cx->source)},
            {"target", model_to_json(cx->target)},
            {"mapping", witness_json(cx->mapping)}};
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Preservation theorems for modal logic: models, formulas, morphisms and GNNs"};
    app.require_subcommand(1);

    std::string formula_text, model_path, model_b, fragment = "egml", kind = "embed", gnn_path, graph_path, node;
    std::vector<std::string> paths;
    std::size_t L = 0, n = 1, bound = 2;
    bool ml = false, use_max = false, plain = false;

    auto* check_cmd = app.add_subcommand("check", "Evaluate a formula at the point of a model");
    check_cmd->add_option("formula", formula_text)->required();
    check_cmd->add_option("model", model_path)->required();

    auto* unravel_cmd = app.add_subcommand("unravel", "L-unravelling of a model");
    unravel_cmd->add_option("-L", L, "depth")->required();
    unravel_cmd->add_option("model", model_path)->required();

    auto* char_cmd = app.add_subcommand("charform", "Characteristic formula of a model");
    char_cmd->add_option("--fragment", fragment)->check(CLI::IsMember({"egml", "epgml", "epml"}));
    char_cmd->add_option("-L", L, "depth")->required();
    char_cmd->add_flag("--plain", plain, "omit the matching conjuncts over overlapping successor classes");
    char_cmd->add_option("model", model_path)->required();

    auto* prune_cmd = app.add_subcommand("prune", "Prune ML-equivalent sibling subtrees of a tree model");
    prune_cmd->add_option("model", model_path)->required();

    auto* relate_cmd = app.add_subcommand("relate", "Search for a morphism from a to b");
    relate_cmd->add_option("--kind", kind)->required();
    relate_cmd->add_option("a", model_path)->required();
    relate_cmd->add_option("b", model_b)->required();

    auto* minimal_cmd = app.add_subcommand("minimal", "Minimal tree models under a morphism preorder");
    minimal_cmd->add_option("--kind", kind)->required();
    minimal_cmd->add_option("models", paths)->required();

    auto* synth_cmd = app.add_subcommand("synth", "Synthesize a defining formula from generators");
    synth_cmd->add_option("--kind", kind)->required();
    synth_cmd->add_option("-L", L, "depth")->required();
    synth_cmd->add_flag("--ml", ml, "prune before building characteristic formulas (embeddings only)");
    synth_cmd->add_option("generators", paths);

    auto* anti_cmd = app.add_subcommand("antichain", "Member of the antichain family");
    anti_cmd->add_option("--kind", kind)->required();
    anti_cmd->add_option("-n", n)->required()->check(CLI::PositiveNumber);

    auto* eval_cmd = app.add_subcommand("gnn-eval", "Run a GNN classifier on a graph node");
    eval_cmd->add_option("gnn", gnn_path)->required();
    eval_cmd->add_option("graph", graph_path)->required();
    eval_cmd->add_option("node", node)->required();

    std::string props_csv;
    auto* compile_cmd = app.add_subcommand("gnn-compile", "Compile a negation-free formula into a GNN");
    compile_cmd->add_flag("--max", use_max, "MAX aggregation (grades must be 1)");
    compile_cmd->add_option("--props", props_csv, "comma-separated input propositions");
    compile_cmd->add_option("formula", formula_text)->required();

    auto* pres_cmd = app.add_subcommand("testpres", "Search small models for a preservation counterexample");
    pres_cmd->add_option("--kind", kind)->required();
    pres_cmd->add_option("--bound", bound)->required();
    auto* pf = pres_cmd->add_option("--formula", formula_text);
    auto* pg = pres_cmd->add_option("--gnn", gnn_path);
    pf->excludes(pg);
    pg->excludes(pf);

    std::string enum_props = "p";
    std::size_t max_worlds = 0, max_height = 0, max_branching = 0;
    bool trees = false, graphs = false;
    auto* enum_cmd = app.add_subcommand("enumerate", "Pointed models up to isomorphism");
    enum_cmd->add_option("--props", enum_props, "comma-separated propositions");
    enum_cmd->add_option("--max-worlds", max_worlds, "world bound (0 = none, trees only)");
    enum_cmd->add_flag("--trees", trees);
    enum_cmd->add_option("--max-height", max_height);
    enum_cmd->add_option("--max-branching", max_branching);
    enum_cmd->add_flag("--graphs", graphs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check_cmd) {
            emit(check(parse_formula(formula_text), load_model_file(model_path)));
        } else if (*unravel_cmd) {
            emit(model_to_json(unravel(load_model_file(model_path), L).model()));
        } else if (*char_cmd) {
            auto f = char_formula(*parse_fragment(fragment), load_model_file(model_path), L,
                                  plain ? CharStyle::Plain : CharStyle::Matching);
            emit(print_formula(f));
        } else if (*prune_cmd) {
            emit(model_to_json(prune(as_tree(load_model_file(model_path))).model()));
        } else if (*relate_cmd) {
            auto w = find_morphism(kind_arg(kind), load_model_file(model_path), load_model_file(model_b));
            emit(w.has_value(), w ? witness_json(*w) : json(nullptr));
        } else if (*minimal_cmd) {
            std::vector<TreeModel> trees_in;
            for (const auto& p : paths) trees_in.push_back(as_tree(load_model_file(p)));
            json out = json::array();
            for (const auto& t : minimal_models(trees_in, kind_arg(kind))) out.push_back(model_to_json(t.model()));
            emit(out);
        } else if (*synth_cmd) {
            std::vector<PointedModel> gens;
            for (const auto& p : paths) gens.push_back(load_model_file(p));
            auto s = synthesize(gens, kind_arg(kind), L, ml);
            json mins = json::array();
            for (const auto& t : s.minimal) mins.push_back(model_to_json(t.model()));
            emit(print_formula(s.formula), {{"minimal", mins}});
        } else if (*anti_cmd) {
            emit(model_to_json(antichain_family(kind_arg(kind), n).model()));
        } else if (*eval_cmd) {
            auto net = gnn_from_json(parse_json_text(read_text_file(gnn_path)));
            auto g = graph_from_json(parse_json_text(read_text_file(graph_path)));
            auto v = g.index_of(node);
            if (!v) throw ModelError("unknown node '" + node + "'");
            auto trace = evaluate_gnn(net, g);
            json states = json::array();
            for (const auto& layer : trace.states) {
                json row = json::array();
                for (const auto& x : layer[*v]) row.push_back(rational_to_string(x));
                states.push_back(row);
            }
            emit(static_cast<bool>(trace.verdict[*v]), {{"trace", states}});
        } else if (*compile_cmd) {
            auto f = parse_formula(formula_text);
            Signature sig(props_csv.empty() ? propositions(f) : split_names(props_csv));
            emit(gnn_to_json(compile_formula_to_gnn(f, sig, use_max)));
        } else if (*pres_cmd) {
            if (pf->count() == 0 && pg->count() == 0) throw Usage("testpres needs --formula or --gnn");
            std::optional<Counterexample> cx;
            if (pf->count())
                cx = check_preservation(parse_formula(formula_text), kind_arg(kind), bound);
            else
                cx = check_preservation(gnn_from_json(parse_json_text(read_text_file(gnn_path))), kind_arg(kind), bound);
            emit(!cx.has_value(), counterexample_json(cx));
        } else if (*enum_cmd) {
            EnumerateOptions opts;
            opts.signature = Signature(split_names(enum_props));
            if (!trees && max_worlds == 0) throw Usage("enumerate needs --max-worlds unless --trees is given");
            opts.max_worlds = max_worlds;
            opts.tree_only = trees;
            opts.max_height = max_height;
            opts.max_branching = max_branching;
            opts.graphs_only = graphs;
            json out = json::array();
            for_each_model(opts, [&](const PointedModel& m) { out.push_back(model_to_json(m)); });
            const auto count = out.size();
            emit(out, {{"count", count}});
        }
    } catch (const Usage& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

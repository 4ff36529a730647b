#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modalpres/charform.hpp"
#include "modalpres/equivalence.hpp"
#include "modalpres/gnn.hpp"
#include "modalpres/json_io.hpp"
#include "modalpres/synthesis.hpp"
#include "modalpres/unravel.hpp"

namespace py = pybind11;
using namespace modalpres;

namespace {

MorphismKind kind_arg(const std::string& s) {
    auto k = parse_kind(s);
    if (!k) throw py::value_error("unknown kind '" + s + "'");
    return *k;
}

Fragment fragment_arg(const std::string& s) {
    auto f = parse_fragment(s);
    if (!f) throw py::value_error("unknown fragment '" + s + "'");
    return *f;
}

TreeModel tree_arg(const PointedModel& m) { return as_tree(m); }

py::dict trace_dict(const GnnModel& n, const FeatureGraph& g) {
    auto t = evaluate_gnn(n, g);
    py::dict out;
    for (std::size_t v = 0; v < g.size(); ++v) {
        py::list states;
        for (const auto& layer : t.states) {
            py::list row;
            for (const auto& x : layer[v]) row.append(rational_to_string(x));
            states.append(row);
        }
        out[py::str(g.node(v))] = py::make_tuple(static_cast<bool>(t.verdict[v]), states);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Modal logic preservation toolkit";

    py::register_exception<Error>(m, "ModalpresError", PyExc_ValueError);

    py::class_<PointedModel>(m, "Model")
        .def_static("from_json", [](const std::string& text) { return load_model(text); }, py::arg("text"))
        .def_static("load", &load_model_file, py::arg("path"))
        .def("to_json", &dump_model)
        .def_property_readonly("worlds", &PointedModel::ids)
        .def_property_readonly("point", [](const PointedModel& pm) { return pm.id(pm.point()); })
        .def_property_readonly("signature", [](const PointedModel& pm) { return pm.signature().props(); })
        .def_property_readonly("edge_count", &PointedModel::edge_count)
        .def("__len__", &PointedModel::world_count)
        .def("__repr__", [](const PointedModel& pm) {
            return "<Model " + std::to_string(pm.world_count()) + " worlds, point " + pm.id(pm.point()) + ">";
        });

    py::class_<Formula>(m, "Formula")
        .def_static("parse", [](const std::string& text) { return parse_formula(text); }, py::arg("text"))
        .def("__str__", &print_formula)
        .def("__repr__", [](const Formula& f) { return "Formula('" + print_formula(f) + "')"; })
        .def("__eq__", &Formula::operator==)
        .def("__hash__", [](const Formula& f) { return py::hash(py::str(print_formula(f))); })
        .def_property_readonly("depth", [](const Formula& f) { return depth(f); })
        .def_property_readonly("propositions", [](const Formula& f) { return propositions(f); })
        .def("fragments", [](const Formula& f) {
            auto c = classify(f);
            py::dict d;
            d["ML"] = c.in_ML;
            d["EGML"] = c.in_exists_GML;
            d["EPGML"] = c.in_exists_pos_GML;
            d["EML"] = c.in_exists_ML;
            d["EPML"] = c.in_exists_pos_ML;
            return d;
        });

    m.def("check", &check, py::arg("formula"), py::arg("model"));
    m.def("evaluate", [](const Formula& f, const PointedModel& pm) {
        auto v = evaluate(f, pm);
        py::dict out;
        for (std::size_t w = 0; w < v.size(); ++w) out[py::str(pm.id(w))] = static_cast<bool>(v[w]);
        return out;
    });
    m.def("unravel", [](const PointedModel& pm, std::size_t L) { return unravel(pm, L).model(); }, py::arg("model"),
          py::arg("L"));
    m.def("prune", [](const PointedModel& pm) { return prune(tree_arg(pm)).model(); }, py::arg("tree"));
    m.def("canonical_key", [](const PointedModel& pm) { return canonical_key(tree_arg(pm)); }, py::arg("tree"));
    m.def("relate",
          [](const std::string& kind, const PointedModel& a, const PointedModel& b) -> std::optional<Witness> {
              return find_morphism(kind_arg(kind), a, b);
          },
          py::arg("kind"), py::arg("source"), py::arg("target"));
    m.def("l_bisimilar",
          [](const PointedModel& a, const PointedModel& b, std::size_t L) { return l_bisimilar(a, b, L).has_value(); },
          py::arg("a"), py::arg("b"), py::arg("L"));
    m.def("charform",
          [](const PointedModel& pm, std::size_t L, const std::string& fragment, bool plain) {
              return char_formula(fragment_arg(fragment), pm, L, plain ? CharStyle::Plain : CharStyle::Matching);
          },
          py::arg("model"), py::arg("L"), py::arg("fragment") = "egml", py::arg("plain") = false);
    m.def("synthesize",
          [](const std::vector<PointedModel>& gens, const std::string& kind, std::size_t L, bool ml) {
              auto s = synthesize(gens, kind_arg(kind), L, ml);
              std::vector<PointedModel> mins;
              for (const auto& t : s.minimal) mins.push_back(t.model());
              return py::make_tuple(s.formula, mins);
          },
          py::arg("generators"), py::arg("kind"), py::arg("L"), py::arg("ml") = false);
    m.def("antichain", [](const std::string& kind, std::size_t n) { return antichain_family(kind_arg(kind), n).model(); },
          py::arg("kind"), py::arg("n"));
    m.def("enumerate_models",
          [](const std::vector<std::string>& props, std::size_t max_worlds, bool graphs) {
              EnumerateOptions opts;
              opts.signature = Signature(props);
              opts.max_worlds = max_worlds;
              opts.graphs_only = graphs;
              return enumerate_models(opts);
          },
          py::arg("props"), py::arg("max_worlds"), py::arg("graphs") = false);

    m.def("gnn_eval",
          [](const std::string& gnn_json, const std::string& graph_json) {
              return trace_dict(gnn_from_json(parse_json_text(gnn_json)), graph_from_json(parse_json_text(graph_json)));
          },
          py::arg("gnn"), py::arg("graph"));
    m.def("gnn_compile",
          [](const Formula& f, const std::vector<std::string>& props, bool use_max) {
              Signature sig(props.empty() ? propositions(f) : props);
              return gnn_to_json(compile_formula_to_gnn(f, sig, use_max)).dump();
          },
          py::arg("formula"), py::arg("props") = std::vector<std::string>{}, py::arg("use_max") = false);
    m.def("gnn_certified",
          [](const std::string& gnn_json) {
              return positive_weight_certificate(gnn_from_json(parse_json_text(gnn_json))).certified;
          },
          py::arg("gnn"));
}

#include <doctest.h>

#include <random>

#include "modalpres/gnn.hpp"
#include "modalpres/json_io.hpp"
#include "oracles.hpp"

using namespace modalpres;

namespace {

const std::string fixtures = FIXTURES_DIR;

GnnModel load_gnn(const std::string& name) { return gnn_from_json(parse_json_text(read_text_file(fixtures + "/" + name))); }
FeatureGraph load_graph(const std::string& name) {
    return graph_from_json(parse_json_text(read_text_file(fixtures + "/" + name)));
}

Vector vec(std::initializer_list<int> xs) {
    Vector v;
    for (int x : xs) v.emplace_back(x);
    return v;
}

} // namespace

TEST_CASE("rationals") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-1/2") == Rational(-1, 2));
    CHECK(parse_rational("4/8") == Rational(1, 2));
    CHECK(rational_to_string(Rational(2, 4)) == "1/2");
    CHECK(rational_to_string(Rational(-3)) == "-3");
    for (const char* bad : {"", "1/0", "a", "1/", "/2", "1.5"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_rational(bad), ParseError);
    }
}

TEST_CASE("aggregations") {
    std::vector<Vector> ms{vec({1, 5}), vec({3, 0}), vec({2, 2})};
    CHECK(aggregate(Aggregation::Sum, 1, ms, 2) == vec({6, 7}));
    CHECK(aggregate(Aggregation::Max, 1, ms, 2) == vec({3, 5}));
    CHECK(aggregate(Aggregation::MaxKSum, 2, ms, 2) == vec({5, 7}));
    CHECK(aggregate(Aggregation::Mean, 1, ms, 2) == Vector{Rational(2), Rational(7, 3)});
    for (auto a : {Aggregation::Sum, Aggregation::Max, Aggregation::MaxKSum, Aggregation::Mean})
        CHECK(aggregate(a, 2, {}, 2) == vec({0, 0}));
}

TEST_CASE("multiset order") {
    std::vector<Vector> a{vec({-1, 2}), vec({0, 1})};
    std::vector<Vector> b{vec({-1, 2}), vec({0, 3}), vec({-1, -1})};
    CHECK(multiset_leq(a, b));
    CHECK(multiset_leq(a, a));
    CHECK_FALSE(multiset_leq({vec({1}), vec({1})}, {vec({1}), vec({0})}));
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> val(0, 2), len(0, 4);
    for (int i = 0; i < 300; ++i) {
        auto draw = [&] {
            std::vector<Vector> m(len(rng));
            for (auto& v : m) v = vec({val(rng), val(rng)});
            return m;
        };
        auto x = draw(), y = draw(), z = draw();
        CHECK(multiset_leq(x, y) == oracle::multiset_leq(x, y));
        if (multiset_leq(x, y) && multiset_leq(y, z)) CHECK(multiset_leq(x, z));
    }
}

TEST_CASE("proof network on the star and the edge") {
    auto n = load_gnn("sum_proof.json");
    auto g = load_graph("star_graph.json");
    auto h = load_graph("edge_graph.json");
    auto tg = evaluate_gnn(n, g);
    auto th = evaluate_gnn(n, h);
    CHECK(tg.states[1][*g.index_of("v")][0] == 3);
    CHECK(th.states[1][*h.index_of("v'")][0] == 2);
    CHECK(tg.verdict[*g.index_of("v")]);
    CHECK_FALSE(th.verdict[*h.index_of("v'")]);
    CHECK(positive_weight_certificate(n).certified);
}

TEST_CASE("certificates") {
    auto mean = positive_weight_certificate(load_gnn("mean_net.json"));
    CHECK_FALSE(mean.certified);
    REQUIRE(mean.mean_evidence);
    CHECK(mean.mean_evidence->small_value == 1);
    CHECK(mean.mean_evidence->large_value == Rational(1, 2));
    auto neg = load_gnn("sum_proof.json");
    neg.layers[0].C[0][0] = -1;
    CHECK_FALSE(positive_weight_certificate(neg).certified);
    // A negative neighbour weight breaks monotonicity on small graphs.
    neg.classifier.threshold = 1;
    CHECK(check_preservation(neg, MorphismKind::InjectiveHom, 3));
}

TEST_CASE("classifier thresholds") {
    Classifier c{Rational(1), false};
    CHECK(classify_vector(c, vec({1, 2})));
    CHECK_FALSE(classify_vector(c, vec({1, 0})));
    c.strict = true;
    CHECK_FALSE(classify_vector(c, vec({1, 2})));
    CHECK(classify_vector(c, vec({2, 2})));
}

TEST_CASE("validation and json errors") {
    auto n = load_gnn("sum_proof.json");
    n.layers[0].b.push_back(0);
    CHECK_THROWS_AS(n.validate(), DimensionError);
    auto bad = parse_json_text(R"({"input_dim":1,"layers":[{"agg":"MAXKSUM","A":[["1"]],"C":[["1"]],"b":["0"]}],"classifier":{"threshold":"1","strict":false}})");
    CHECK_THROWS(gnn_from_json(bad));
    CHECK_THROWS(graph_from_json(parse_json_text(R"({"dim":1,"nodes":["a"],"edges":[["a","a"]],"features":{"a":[1]}})")));
    auto round = gnn_to_json(load_gnn("sum_proof.json"));
    CHECK(gnn_to_json(gnn_from_json(round)) == round);
    auto g = load_graph("star_graph.json");
    CHECK(graph_to_json(graph_from_json(graph_to_json(g))) == graph_to_json(g));
}

TEST_CASE("graph and kripke views") {
    auto g = load_graph("star_graph.json");
    auto m = graph_to_kripke(g, *g.index_of("v"));
    CHECK(m.edge_count() == 4);
    CHECK(check(parse_formula("<2>p1"), m));
    auto back = kripke_to_graph(m);
    CHECK(graph_to_json(back) == graph_to_json(g));
    auto dir = load_model(R"({"signature":["p"],"worlds":["a","b"],"edges":[["a","b"]],"valuation":{},"point":"a"})");
    CHECK_THROWS_AS(kripke_to_graph(dir), ModelError);
}

TEST_CASE("compiled networks") {
    Signature sig({"p"});
    EnumerateOptions opts;
    opts.signature = sig;
    opts.max_worlds = 4;
    opts.graphs_only = true;
    auto graphs = enumerate_models(opts);
    struct Case {
        const char* text;
        bool max;
    };
    for (auto [text, use_max] : {Case{"p", false}, Case{"<>p", true}, Case{"<2>p", false}, Case{"true", false},
                                 Case{"p & <>(p | <2>true)", false}, Case{"<>(p & <>p)", true}}) {
        CAPTURE(text);
        auto f = parse_formula(text);
        auto n = compile_formula_to_gnn(f, sig, use_max);
        CHECK(positive_weight_certificate(n).certified);
        for (const auto& L : n.layers) CHECK(L.agg == (use_max ? Aggregation::Max : Aggregation::Sum));
        for (const auto& m : graphs) {
            auto g = kripke_to_graph(m);
            auto t = evaluate_gnn(n, g);
            auto truth = evaluate(f, m);
            for (std::size_t v = 0; v < g.size(); ++v) {
                CHECK(t.verdict[v] == truth[v]);
                for (std::size_t l = 1; l + 1 < t.states.size(); ++l)
                    for (const auto& x : t.states[l][v]) CHECK((x == 0 || x == 1));
            }
        }
    }
    CHECK_THROWS_AS(compile_formula_to_gnn(parse_formula("~p"), sig), FragmentError);
    CHECK_THROWS_AS(compile_formula_to_gnn(parse_formula("<2>p"), sig, true), FragmentError);
    CHECK_THROWS_AS(compile_formula_to_gnn(parse_formula("q"), sig), UnknownProposition);
}

TEST_CASE("evaluation is reproducible") {
    auto n = compile_formula_to_gnn(parse_formula("<2>(p1 | <>p1)"), default_feature_signature(1));
    auto g = load_graph("star_graph.json");
    auto a = evaluate_gnn(n, g), b = evaluate_gnn(n, g);
    CHECK(a.states == b.states);
    CHECK(a.verdict == b.verdict);
}

#include <doctest.h>

#include <random>

#include "modalpres/json_io.hpp"
#include "modalpres/kripke.hpp"
#include "modalpres/synthesis.hpp"
#include "oracles.hpp"

using namespace modalpres;

namespace {
const std::string fixtures = FIXTURES_DIR;
}

TEST_CASE("fig1 model loads with its valuation") {
    auto m = load_model_file(fixtures + "/fig1.json");
    CHECK(m.world_count() == 4);
    CHECK(m.edge_count() == 4);
    auto p1 = *m.signature().index_of("p1");
    auto p2 = *m.signature().index_of("p2");
    std::vector<std::string> e1, e2;
    for (auto w : m.extension(p1)) e1.push_back(m.id(w));
    for (auto w : m.extension(p2)) e2.push_back(m.id(w));
    CHECK(e1 == std::vector<std::string>{"v2", "v4"});
    CHECK(e2 == std::vector<std::string>{"v3"});
    CHECK(m.id(m.point()) == "w");
}

TEST_CASE("model validation errors") {
    CHECK_THROWS_AS(load_model(R"({"signature":["p"],"worlds":["a"],"edges":[["a","b"]],"valuation":{},"point":"a"})"),
                    ModelError);
    CHECK_THROWS_AS(load_model(R"({"signature":["p"],"worlds":["a"],"edges":[],"valuation":{},"point":"z"})"),
                    ModelError);
    CHECK_THROWS_AS(load_model(R"({"signature":["p"],"worlds":["a","a"],"edges":[],"valuation":{},"point":"a"})"),
                    ModelError);
    CHECK_THROWS_AS(load_model(R"({"signature":["p"],"worlds":["a"],"edges":[],"valuation":{"q":["a"]},"point":"a"})"),
                    Error);
    CHECK_THROWS_AS(load_model(R"({"signature":["p"],"worlds":["a"],"edges":[],"valuation":{},"point":"a","x":1})"),
                    ParseError);
    CHECK_THROWS_AS(load_model(R"({"signature":["p"],"worlds":["a"],"edges":[],)"), ParseError);
    CHECK_THROWS_AS(Signature({"p", "p"}), Error);
    CHECK_THROWS_AS(Signature({"true"}), Error);
    CHECK_THROWS_AS(Signature({"1p"}), Error);
}

TEST_CASE("dump is canonical and idempotent") {
    std::mt19937_64 rng(7);
    Signature sig({"p", "q"});
    for (int trial = 0; trial < 50; ++trial) {
        auto m = oracle::random_model(rng, sig, 1 + trial % 5, 0.4);
        auto once = dump_model(m);
        auto back = load_model(once);
        CHECK(dump_model(back) == once);
        auto ids = m.ids();
        std::sort(ids.begin(), ids.end());
        CHECK(back.ids() == ids);
        CHECK(oracle::isomorphic(m, back));
    }
    auto one = load_model(R"({"signature":[],"worlds":["w"],"edges":[],"valuation":{},"point":"w"})");
    CHECK(dump_model(load_model(dump_model(one))) == dump_model(one));
}

TEST_CASE("tree recognition") {
    auto fig1 = load_model_file(fixtures + "/fig1.json");
    std::string reason;
    CHECK_FALSE(try_as_tree(fig1, &reason));
    CHECK_FALSE(reason.empty());
    CHECK_THROWS_AS(as_tree(fig1), NotATreeError);
    auto t = as_tree(load_model_file(fixtures + "/fig4.json"));
    CHECK(t.height() == 3);
    CHECK(t.size() == 10);
    CHECK(t.children(t.root()).size() == 3);
    CHECK_FALSE(t.parent(t.root()).has_value());
    CHECK_FALSE(try_as_tree(load_model_file(fixtures + "/self_loop.json")));
}

TEST_CASE("canonical key decides isomorphism") {
    std::mt19937_64 rng(11);
    Signature sig({"p"});
    std::vector<PointedModel> trees;
    for (int i = 0; i < 60; ++i) trees.push_back(oracle::random_tree(rng, sig, 1 + i % 6));
    for (std::size_t i = 0; i < trees.size(); ++i)
        for (std::size_t j = i; j < trees.size(); ++j) {
            const bool same = canonical_key(as_tree(trees[i])) == canonical_key(as_tree(trees[j]));
            CHECK(same == oracle::isomorphic(trees[i], trees[j]));
        }
}

TEST_CASE("enumerator yields one model per isomorphism class") {
    for (bool graphs : {false, true}) {
        EnumerateOptions opts;
        opts.signature = Signature({"p"});
        opts.max_worlds = 3;
        opts.graphs_only = graphs;
        auto models = enumerate_models(opts);
        for (std::size_t i = 0; i < models.size(); ++i)
            for (std::size_t j = i + 1; j < models.size(); ++j) CHECK_FALSE(oracle::isomorphic(models[i], models[j]));
        // Count classes of all labelled models directly.
        std::vector<PointedModel> reps;
        for (std::size_t n = 1; n <= 3; ++n) {
            const std::size_t slots = n * n;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
                std::vector<std::pair<WorldIndex, WorldIndex>> edges;
                bool ok = true;
                for (std::size_t s = 0; s < slots; ++s)
                    if ((mask >> s) & 1u) edges.emplace_back(s / n, s % n);
                if (graphs)
                    for (auto [u, v] : edges)
                        if (u == v || !((mask >> (v * n + u)) & 1u)) ok = false;
                if (!ok) continue;
                for (Label ls = 0; ls < (Label{1} << n); ++ls) {
                    std::vector<Label> labels;
                    std::vector<std::string> ids;
                    for (std::size_t w = 0; w < n; ++w) {
                        labels.push_back((ls >> w) & 1u);
                        ids.push_back("z" + std::to_string(w));
                    }
                    auto m = PointedModel::from_indices(opts.signature, ids, edges, labels, 0);
                    bool seen = false;
                    for (const auto& r : reps)
                        if (oracle::isomorphic(r, m)) {
                            seen = true;
                            break;
                        }
                    if (!seen) reps.push_back(m);
                }
            }
        }
        CHECK(models.size() == reps.size());
    }
}

TEST_CASE("one proposition, one world gives four pointed models with loops") {
    EnumerateOptions opts;
    opts.signature = Signature({"p"});
    opts.max_worlds = 1;
    CHECK(enumerate_models(opts).size() == 4);
    opts.graphs_only = true;
    CHECK(enumerate_models(opts).size() == 2);
}

TEST_CASE("tree enumeration matches brute force") {
    Signature sig({"p"});
    auto trees = enumerate_trees(sig, 2, 2);
    for (std::size_t i = 0; i < trees.size(); ++i) {
        CHECK(trees[i].height() <= 2);
        for (std::size_t j = i + 1; j < trees.size(); ++j) CHECK(canonical_key(trees[i]) != canonical_key(trees[j]));
    }
    // Rooted trees of height <= 2, branching <= 2, binary labels: count by hand.
    // Height-0 shapes: 2. Height<=1: 2 labels x multisets of size <= 2 over 2 = 2 * 6 = 12.
    // Height<=2: 2 labels x multisets of size <= 2 over 12 = 2 * (1 + 12 + 78) = 182.
    CHECK(trees.size() == 182);
}

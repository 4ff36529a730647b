#include <doctest.h>

#include <random>

#include "modalpres/formula.hpp"
#include "modalpres/kripke.hpp"
#include "oracles.hpp"

using namespace modalpres;

namespace {

const std::string fixtures = FIXTURES_DIR;

Formula random_formula(std::mt19937_64& rng, int depth, const std::vector<std::string>& props) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 2);
    switch (pick(rng)) {
    case 0: return Formula::prop(props[rng() % props.size()]);
    case 1: return rng() % 2 ? Formula::truth() : Formula::falsity();
    case 2: return Formula::negation(Formula::prop(props[rng() % props.size()]));
    case 3: return Formula::negation(random_formula(rng, depth - 1, props));
    case 4: return Formula::conjunction(random_formula(rng, depth - 1, props), random_formula(rng, depth - 1, props));
    case 5: return Formula::disjunction(random_formula(rng, depth - 1, props), random_formula(rng, depth - 1, props));
    default: return Formula::diamond(1 + rng() % 3, random_formula(rng, depth - 1, props));
    }
}

} // namespace

TEST_CASE("parse and print") {
    CHECK(print_formula(parse_formula("<>p")) == "<>p");
    CHECK(print_formula(parse_formula("<1>p")) == "<>p");
    CHECK(print_formula(parse_formula("<2>(p | q)")) == "<2>(p | q)");
    CHECK(print_formula(parse_formula("p & q | r")) == "p & q | r");
    CHECK(print_formula(parse_formula("p & (q | r)")) == "p & (q | r)");
    CHECK(print_formula(parse_formula("~~p")) == "~~p");
    CHECK(print_formula(parse_formula("  true&false ")) == "true & false");
    auto f = parse_formula("p & q & r");
    CHECK(f.op() == Op::And);
    CHECK(f.left().op() == Op::And);
    CHECK(depth(parse_formula("<>(p & <2><>q)")) == 3);
    CHECK(propositions(parse_formula("q & <>(p | q)")) == std::vector<std::string>{"p", "q"});
}

TEST_CASE("parse errors carry positions") {
    for (const char* bad : {"", "p &", "<0>p", "<>", "(p", "p q", "<x>p", "&p", "p)"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_formula(bad), ParseError);
    }
    try {
        parse_formula("p & & q");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("print/parse round trip on random formulas") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        auto f = random_formula(rng, 4, {"p", "q"});
        auto text = print_formula(f);
        CAPTURE(text);
        CHECK(parse_formula(text) == f);
    }
}

TEST_CASE("fragment classification") {
    auto c = classify(parse_formula("<2>p"));
    CHECK(c.in_exists_pos_GML);
    CHECK_FALSE(c.in_ML);
    CHECK_FALSE(c.in_exists_pos_ML);
    c = classify(parse_formula("~p & <>q"));
    CHECK(c.in_exists_GML);
    CHECK(c.in_exists_ML);
    CHECK_FALSE(c.in_exists_pos_GML);
    c = classify(parse_formula("~<>p"));
    CHECK(c.in_ML);
    CHECK_FALSE(c.in_exists_GML);
    c = classify(parse_formula("<>(p | q) & true"));
    CHECK(c.in_exists_pos_ML);
    CHECK(c.in_exists_pos_GML);
    CHECK(c.depth == 1);
    CHECK_FALSE(classify(parse_formula("~true")).in_exists_GML);
}

TEST_CASE("evaluation on fig1") {
    auto m = load_model_file(fixtures + "/fig1.json");
    CHECK(check(parse_formula("<2>p1"), m));
    CHECK_FALSE(check(parse_formula("<3>p1"), m));
    CHECK(check(parse_formula("<>(p2 & <><2>p1)"), m));
    CHECK(check(parse_formula("~p1 & ~p2"), m));
    CHECK_THROWS_AS(check(parse_formula("r"), m), UnknownProposition);
}

TEST_CASE("evaluation agrees with direct recursion") {
    std::mt19937_64 rng(5);
    Signature sig({"p", "q"});
    for (int i = 0; i < 200; ++i) {
        auto m = oracle::random_model(rng, sig, 1 + i % 5, 0.35);
        auto f = random_formula(rng, 3, {"p", "q"});
        auto all = evaluate(f, m);
        for (WorldIndex w = 0; w < m.world_count(); ++w) CHECK(all[w] == oracle::holds(f, m, w));
    }
}

TEST_CASE("folds") {
    CHECK(conjoin({}) == Formula::truth());
    CHECK(disjoin({}) == Formula::falsity());
    auto f = conjoin({Formula::prop("a"), Formula::prop("b"), Formula::prop("c")});
    CHECK(print_formula(f) == "a & b & c");
    CHECK(parse_formula(print_formula(f)) == f);
    CHECK_THROWS(Formula::diamond(0, Formula::truth()));
}

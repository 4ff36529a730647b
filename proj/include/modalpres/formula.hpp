#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "modalpres/kripke.hpp"

namespace modalpres {

enum class Op { True, False, Prop, Not, And, Or, Diamond };

struct FormulaNode;

// Immutable, structurally shared formula of graded modal logic.
class Formula {
public:
    static Formula truth();
    static Formula falsity();
    static Formula prop(std::string name);
    static Formula negation(Formula f);
    static Formula conjunction(Formula a, Formula b);
    static Formula disjunction(Formula a, Formula b);
    // <k>f: at least k successors satisfy f. k >= 1.
    static Formula diamond(unsigned k, Formula f);

    Op op() const;
    const std::string& name() const;   // Prop only
    unsigned grade() const;            // Diamond only
    const Formula& child() const;      // Not and Diamond
    const Formula& left() const;       // And and Or
    const Formula& right() const;

    // Structural equality and a total order on formulas.
    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }
    bool operator<(const Formula& other) const;

private:
    explicit Formula(std::shared_ptr<const FormulaNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
    Op op;
    std::string name;
    unsigned grade = 0;
    std::vector<Formula> kids;
};

// Left fold of `parts` with And; True if empty.
Formula conjoin(const std::vector<Formula>& parts);
// Left fold of `parts` with Or; False if empty.
Formula disjoin(const std::vector<Formula>& parts);

Formula parse_formula(std::string_view text);
std::string print_formula(const Formula& f);

// Nesting depth of diamonds.
std::size_t depth(const Formula& f);
std::size_t formula_size(const Formula& f);
// Distinct proposition names, sorted.
std::vector<std::string> propositions(const Formula& f);

struct FragmentReport {
    bool in_ML = false;
    bool in_exists_GML = false;
    bool in_exists_pos_GML = false;
    bool in_exists_ML = false;
    bool in_exists_pos_ML = false;
    std::size_t depth = 0;
};

FragmentReport classify(const Formula& f);

// Truth value of f at every world of m, indexed by world.
std::vector<bool> evaluate(const Formula& f, const PointedModel& m);
// Truth at the point. Throws UnknownProposition for names outside the signature.
bool check(const Formula& f, const PointedModel& m);

} // namespace modalpres

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "modalpres/formula.hpp"
#include "modalpres/kripke.hpp"
#include "modalpres/morphism.hpp"

namespace modalpres {

struct EnumerateOptions {
    Signature signature;
    std::size_t max_worlds = 1;
    // Trees only: max_height and max_branching bound the shape and
    // max_worlds = 0 means no size bound.
    bool tree_only = false;
    std::size_t max_height = 0;
    std::size_t max_branching = 0;
    // Symmetric irreflexive frames (graphs viewed as Kripke models).
    bool graphs_only = false;
};

// One representative per isomorphism class of pointed models, smallest
// models first. World ids are "w0".."w{n-1}" with the point at "w0"
// (tree ids follow breadth-first order).
void for_each_model(const EnumerateOptions& opts, const std::function<void(const PointedModel&)>& visit);
std::vector<PointedModel> enumerate_models(const EnumerateOptions& opts);
std::vector<TreeModel> enumerate_trees(const Signature& sig,
                                       std::size_t max_height,
                                       std::size_t max_branching,
                                       std::size_t max_worlds = 0);

// One representative (least canonical key) per ⪯-equivalence class of the
// ⪯-minimal inputs, sorted by canonical key.
std::vector<TreeModel> minimal_models(const std::vector<TreeModel>& trees, MorphismKind kind);

struct Synthesis {
    Formula formula;
    std::vector<TreeModel> minimal;
};

// Disjunction of characteristic formulas of the minimal L-unravellings of
// the generators: ∃GML for Embedding (∃ML with `ml`), ∃⁺GML for
// InjectiveHom, ∃⁺ML for Hom. No generators gives False.
Synthesis synthesize(const std::vector<PointedModel>& generators, MorphismKind kind, std::size_t L, bool ml = false);

// Model M_n of the antichain family (signature p1..p4). Worlds v1..v{n+2},
// u and w; labelled only for Hom.
TreeModel antichain_family(MorphismKind kind, std::size_t n);

// The tree (T, v1): path v1..v{L+1} plus a p-labelled child u of v1.
TreeModel path_with_marked_leaf(std::size_t L);

struct Counterexample {
    PointedModel source;
    PointedModel target;
    Witness mapping;
};

// Searches the given models for M ⪯ N with member[M] and not member[N].
std::optional<Counterexample> find_preservation_counterexample(const std::vector<PointedModel>& models,
                                                               const std::vector<bool>& member,
                                                               MorphismKind kind);

// Over all pointed models with at most `bound` worlds on the formula's
// propositions.
std::optional<Counterexample> check_preservation(const Formula& f, MorphismKind kind, std::size_t bound);

} // namespace modalpres

#include "modalpres/synthesis.hpp"

#include <algorithm>

#include "modalpres/charform.hpp"
#include "modalpres/unravel.hpp"

namespace modalpres {

std::vector<TreeModel> minimal_models(const std::vector<TreeModel>& trees, MorphismKind kind) {
    if (kind == MorphismKind::Iso) throw ModelError("minimal_models needs embed, injhom or hom");
    std::vector<std::pair<std::string, const TreeModel*>> keyed;
    for (const auto& t : trees) keyed.emplace_back(canonical_key(t), &t);
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    // Invariant: `mins` is an antichain and every processed tree lies above one of its elements.
    std::vector<std::pair<std::string, const TreeModel*>> mins;
    for (const auto& entry : keyed) {
        if (!mins.empty() && mins.back().first == entry.first) continue;
        const TreeModel& t = *entry.second;
        bool dominated = false;
        for (const auto& m : mins)
            if (tree_preorder(kind, *m.second, t)) {
                dominated = true;
                break;
            }
        if (dominated) continue;
        std::erase_if(mins, [&](const auto& m) { return tree_preorder(kind, t, *m.second); });
        mins.push_back(entry);
    }
    std::sort(mins.begin(), mins.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<TreeModel> out;
    for (const auto& m : mins) out.push_back(*m.second);
    return out;
}

Synthesis synthesize(const std::vector<PointedModel>& generators, MorphismKind kind, std::size_t L, bool ml) {
    if (kind == MorphismKind::Iso) throw ModelError("synthesis needs embed, injhom or hom");
    if (ml && kind != MorphismKind::Embedding) throw ModelError("the ML variant applies to embeddings only");
    std::vector<TreeModel> unravelled;
    for (const auto& g : generators) {
        if (!unravelled.empty() && !(g.signature() == unravelled.front().model().signature()))
            throw SignatureMismatch("generators have different signatures");
        unravelled.push_back(unravel(g, L));
    }
    Synthesis s{Formula::falsity(), minimal_models(unravelled, kind)};
    std::vector<Formula> parts;
    for (const auto& t : s.minimal) {
        switch (kind) {
        case MorphismKind::Embedding:
            if (ml)
                parts.push_back(char_exists_gml(prune(t).model(), L, CharStyle::Plain));
            else
                parts.push_back(char_exists_gml(t.model(), L));
            break;
        case MorphismKind::InjectiveHom: parts.push_back(char_exists_pos_gml(t.model(), L)); break;
        default: parts.push_back(char_exists_pos_ml(t.model(), L)); break;
        }
    }
    s.formula = disjoin(parts);
    return s;
}

TreeModel antichain_family(MorphismKind kind, std::size_t n) {
    if (n == 0) throw ModelError("antichain index must be at least 1");
    if (kind != MorphismKind::InjectiveHom && kind != MorphismKind::Hom)
        throw ModelError("antichain family is defined for injhom and hom");
    const bool labelled = kind == MorphismKind::Hom;
    std::vector<std::string> ids;
    std::vector<Label> labels;
    for (std::size_t i = 1; i <= n + 2; ++i) {
        ids.push_back("v" + std::to_string(i));
        labels.push_back(labelled ? (i % 2 == 0 ? Label{1} : Label{2}) : 0);
    }
    const WorldIndex u = ids.size();
    ids.push_back("u");
    labels.push_back(labelled ? Label{4} : 0);
    const WorldIndex w = ids.size();
    ids.push_back("w");
    labels.push_back(labelled ? Label{8} : 0);

    std::vector<std::pair<WorldIndex, WorldIndex>> edges;
    for (std::size_t i = 0; i + 1 < n + 2; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(0, u);
    edges.emplace_back(n, w);
    return as_tree(PointedModel::from_indices(Signature({"p1", "p2", "p3", "p4"}), std::move(ids), edges,
                                              std::move(labels), 0));
}

TreeModel path_with_marked_leaf(std::size_t L) {
    std::vector<std::string> ids;
    std::vector<Label> labels;
    std::vector<std::pair<WorldIndex, WorldIndex>> edges;
    for (std::size_t i = 1; i <= L + 1; ++i) {
        ids.push_back("v" + std::to_string(i));
        labels.push_back(0);
        if (i > 1) edges.emplace_back(i - 2, i - 1);
    }
    edges.emplace_back(0, ids.size());
    ids.push_back("u");
    labels.push_back(1);
    return as_tree(PointedModel::from_indices(Signature({"p"}), std::move(ids), edges, std::move(labels), 0));
}

std::optional<Counterexample> find_preservation_counterexample(const std::vector<PointedModel>& models,
                                                               const std::vector<bool>& member,
                                                               MorphismKind kind) {
    for (std::size_t i = 0; i < models.size(); ++i) {
        if (!member[i]) continue;
        for (std::size_t j = 0; j < models.size(); ++j) {
            if (member[j]) continue;
            if (auto w = find_morphism(kind, models[i], models[j])) return Counterexample{models[i], models[j], *w};
        }
    }
    return std::nullopt;
}

std::optional<Counterexample> check_preservation(const Formula& f, MorphismKind kind, std::size_t bound) {
    EnumerateOptions opts;
    opts.signature = Signature(propositions(f));
    opts.max_worlds = bound;
    auto models = enumerate_models(opts);
    std::vector<bool> member;
    member.reserve(models.size());
    for (const auto& m : models) member.push_back(check(f, m));
    return find_preservation_counterexample(models, member, kind);
}

} // namespace modalpres

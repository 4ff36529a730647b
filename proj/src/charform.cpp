#include "modalpres/charform.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "modalpres/equivalence.hpp"

namespace modalpres {

std::string fragment_name(Fragment f) {
    switch (f) {
    case Fragment::ExistsGML: return "egml";
    case Fragment::ExistsPosGML: return "epgml";
    case Fragment::ExistsPosML: return "epml";
    }
    return "?";
}

std::optional<Fragment> parse_fragment(std::string_view name) {
    if (name == "egml") return Fragment::ExistsGML;
    if (name == "epgml") return Fragment::ExistsPosGML;
    if (name == "epml") return Fragment::ExistsPosML;
    return std::nullopt;
}

namespace {

class CharBuilder {
public:
    CharBuilder(const PointedModel& m, std::size_t l, bool positive, CharStyle style)
        : m_(m), types_(refine_types_upto(m, l, Logic::GML)), positive_(positive), style_(style) {}

    Formula build(WorldIndex w, std::size_t r) {
        auto key = std::make_pair(w, r);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        std::vector<Formula> parts;
        const auto& sig = m_.signature();
        for (std::size_t p = 0; p < sig.size(); ++p)
            if (m_.holds(p, w)) parts.push_back(Formula::prop(sig[p]));
        if (!positive_)
            for (std::size_t p = 0; p < sig.size(); ++p)
                if (!m_.holds(p, w)) parts.push_back(Formula::negation(Formula::prop(sig[p])));

        if (r > 0) {
            // type string -> (count, representative)
            std::map<std::string, std::pair<unsigned, WorldIndex>> classes;
            for (WorldIndex v : m_.successors(w)) {
                auto [it, fresh] = classes.emplace(types_[r - 1].type[v], std::make_pair(0u, v));
                ++it->second.first;
            }
            std::vector<Class> cls;
            for (const auto& [type, entry] : classes) {
                cls.push_back({entry.first, m_.label(entry.second), build(entry.second, r - 1)});
                parts.push_back(Formula::diamond(entry.first, cls.back().formula));
            }
            if (style_ == CharStyle::Matching) add_hall_conditions(cls, parts);
        }
        Formula f = conjoin(parts);
        memo_.emplace(key, f);
        return f;
    }

private:
    struct Class {
        unsigned size;
        Label label;
        Formula formula;
    };

    // One conjunct <n>(f_1 | ... | f_k) per set of at least two classes whose
    // formulas can hold at the same world. With literals, classes with
    // different labels never overlap, so only same-label sets count.
    void add_hall_conditions(const std::vector<Class>& cls, std::vector<Formula>& parts) const {
        std::vector<std::vector<std::size_t>> groups;
        if (positive_) {
            groups.emplace_back();
            for (std::size_t i = 0; i < cls.size(); ++i) groups.back().push_back(i);
        } else {
            std::map<Label, std::vector<std::size_t>> by_label;
            for (std::size_t i = 0; i < cls.size(); ++i) by_label[cls[i].label].push_back(i);
            for (auto& [label, g] : by_label) groups.push_back(std::move(g));
        }
        std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sets;
        for (const auto& g : groups) {
            if (g.size() < 2) continue;
            if (g.size() > kMaxMatchingClasses)
                throw ModelError("too many overlapping successor classes (" + std::to_string(g.size()) + ")");
            for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << g.size()); ++mask) {
                std::vector<std::size_t> members;
                for (std::size_t b = 0; b < g.size(); ++b)
                    if ((mask >> b) & 1u) members.push_back(g[b]);
                if (members.size() >= 2) sets.emplace_back(members.size(), std::move(members));
            }
        }
        std::stable_sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
            return a.first != b.first ? a.first < b.first : a.second < b.second;
        });
        for (const auto& [size, members] : sets) {
            unsigned total = 0;
            std::vector<Formula> alts;
            for (auto i : members) {
                total += cls[i].size;
                alts.push_back(cls[i].formula);
            }
            parts.push_back(Formula::diamond(total, disjoin(alts)));
        }
    }

    static constexpr std::size_t kMaxMatchingClasses = 12;

    const PointedModel& m_;
    std::vector<TypePartition> types_;
    bool positive_;
    CharStyle style_;
    std::map<std::pair<WorldIndex, std::size_t>, Formula> memo_;
};

std::optional<Formula> strip(const Formula& f) {
    switch (f.op()) {
    case Op::Not:
        if (f.child().op() == Op::Prop) return std::nullopt;
        return f;
    case Op::And: {
        auto a = strip(f.left());
        auto b = strip(f.right());
        if (!a) return b;
        if (!b) return a;
        return Formula::conjunction(*a, *b);
    }
    case Op::Or: {
        auto a = strip(f.left());
        auto b = strip(f.right());
        return Formula::disjunction(a ? *a : Formula::truth(), b ? *b : Formula::truth());
    }
    case Op::Diamond: {
        auto c = strip(f.child());
        return Formula::diamond(f.grade(), c ? *c : Formula::truth());
    }
    default: return f;
    }
}

} // namespace

Formula char_exists_gml(const PointedModel& m, std::size_t l, CharStyle style) {
    return CharBuilder(m, l, false, style).build(m.point(), l);
}

Formula strip_negative_literals(const Formula& f) {
    auto g = strip(f);
    return g ? *g : Formula::truth();
}

Formula collapse_grades(const Formula& f) {
    switch (f.op()) {
    case Op::Not: return Formula::negation(collapse_grades(f.child()));
    case Op::And: return Formula::conjunction(collapse_grades(f.left()), collapse_grades(f.right()));
    case Op::Or: return Formula::disjunction(collapse_grades(f.left()), collapse_grades(f.right()));
    case Op::Diamond: return Formula::diamond(1, collapse_grades(f.child()));
    default: return f;
    }
}

Formula char_exists_pos_gml(const PointedModel& m, std::size_t l, CharStyle style) {
    return CharBuilder(m, l, true, style).build(m.point(), l);
}

Formula char_exists_pos_ml(const PointedModel& m, std::size_t l) {
    return collapse_grades(char_exists_pos_gml(m, l, CharStyle::Plain));
}

Formula char_formula(Fragment fragment, const PointedModel& m, std::size_t l, CharStyle style) {
    switch (fragment) {
    case Fragment::ExistsGML: return char_exists_gml(m, l, style);
    case Fragment::ExistsPosGML: return char_exists_pos_gml(m, l, style);
    case Fragment::ExistsPosML: return char_exists_pos_ml(m, l);
    }
    return char_exists_gml(m, l, style);
}

TreeModel restrict_tree(const TreeModel& t, const std::vector<bool>& keep) {
    const auto& m = t.model();
    if (keep.size() != m.world_count()) throw ModelError("keep mask has the wrong size");
    for (WorldIndex w = 0; w < m.world_count(); ++w) {
        auto p = t.parent(w);
        if (keep[w] && (p ? !keep[*p] : false)) throw ModelError("kept world '" + m.id(w) + "' lost its parent");
    }
    if (!keep[t.root()]) throw ModelError("the root must be kept");
    std::vector<WorldIndex> new_index(m.world_count(), 0);
    std::vector<std::string> ids;
    std::vector<Label> labels;
    for (WorldIndex w : t.bfs_order()) {
        if (!keep[w]) continue;
        new_index[w] = ids.size();
        ids.push_back(m.id(w));
        labels.push_back(m.label(w));
    }
    std::vector<std::pair<WorldIndex, WorldIndex>> edges;
    for (WorldIndex w : t.bfs_order())
        if (keep[w])
            for (WorldIndex c : m.successors(w))
                if (keep[c]) edges.emplace_back(new_index[w], new_index[c]);
    return as_tree(PointedModel::from_indices(m.signature(), std::move(ids), edges, std::move(labels),
                                              new_index[t.root()]));
}

TreeModel prune(const TreeModel& t, PruneOrder order) {
    TreeModel cur = t;
    const std::size_t height = t.height();
    for (std::size_t k = 0; k <= height; ++k) {
        const auto& m = cur.model();
        const auto types = refine_types(m, k, Logic::ML);
        const auto codes = subtree_codes(cur);
        std::vector<bool> keep(m.world_count(), true);
        bool removed = false;
        for (WorldIndex x : cur.bfs_order()) {
            std::map<std::string, WorldIndex> best;
            for (WorldIndex c : m.successors(x)) {
                if (cur.subtree_height(c) != k) continue;
                auto [it, fresh] = best.emplace(types.type[c], c);
                if (fresh) continue;
                const WorldIndex old = it->second;
                auto rank = [&](WorldIndex w) { return std::make_pair(codes[w], m.id(w)); };
                const bool better = order == PruneOrder::LeastKeyFirst ? rank(c) < rank(old) : rank(old) < rank(c);
                const WorldIndex loser = better ? old : c;
                if (better) it->second = c;
                keep[loser] = false;
                removed = true;
            }
        }
        if (!removed) continue;
        // Drop descendants of removed worlds.
        for (WorldIndex w : cur.bfs_order())
            if (auto p = cur.parent(w); p && !keep[*p]) keep[w] = false;
        cur = restrict_tree(cur, keep);
    }
    return cur;
}

} // namespace modalpres

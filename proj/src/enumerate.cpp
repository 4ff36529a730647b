#include <algorithm>
#include <numeric>

#include "modalpres/synthesis.hpp"

namespace modalpres {

namespace {

std::vector<std::string> world_names(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("w" + std::to_string(i));
    return ids;
}

// Calls visit(labels) for every label sequence whose tail (worlds 1..n-1)
// is non-decreasing. Sorting the tail is always possible by relabelling,
// so these sequences cover every isomorphism class.
void for_each_label_sequence(std::size_t n, Label label_count, const std::function<void(const std::vector<Label>&)>& visit) {
    std::vector<Label> labels(n, 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
            visit(labels);
            return;
        }
        const Label start = i <= 1 ? 0 : labels[i - 1];
        for (Label l = start; l < label_count; ++l) {
            labels[i] = l;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
}

void enumerate_general(const EnumerateOptions& opts, const std::function<void(const PointedModel&)>& visit) {
    const std::size_t props = opts.signature.size();
    if (props > 8) throw ModelError("enumeration supports at most 8 propositions");
    const std::size_t limit = opts.graphs_only ? 8 : 5;
    if (opts.max_worlds > limit)
        throw ModelError("enumeration supports at most " + std::to_string(limit) + " worlds");
    const Label label_count = Label{1} << props;

    for (std::size_t n = 1; n <= opts.max_worlds; ++n) {
        // Candidate edge slots, as (u, v) pairs; for graphs each slot is an undirected pair.
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) {
                if (opts.graphs_only && u >= v) continue;
                slots.emplace_back(u, v);
            }
        // Permutations of worlds 1..n-1 (the point stays at 0).
        std::vector<std::vector<std::size_t>> perms;
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        do perms.push_back(p);
        while (std::next_permutation(p.begin() + 1, p.end()));

        auto adjacency_bits = [&](std::uint64_t mask) {
            std::uint64_t adj = 0;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if (!((mask >> s) & 1u)) continue;
                auto [u, v] = slots[s];
                adj |= std::uint64_t{1} << (u * n + v);
                if (opts.graphs_only) adj |= std::uint64_t{1} << (v * n + u);
            }
            return adj;
        };
        auto permute = [&](std::uint64_t adj, const std::vector<std::size_t>& perm) {
            std::uint64_t out = 0;
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = 0; v < n; ++v)
                    if ((adj >> (u * n + v)) & 1u) out |= std::uint64_t{1} << (perm[u] * n + perm[v]);
            return out;
        };

        for_each_label_sequence(n, label_count, [&](const std::vector<Label>& labels) {
            // Only relabellings that fix the label sequence can tie with it.
            std::vector<const std::vector<std::size_t>*> stabilizer;
            for (const auto& perm : perms) {
                bool same = true;
                for (std::size_t j = 0; j < n && same; ++j) same = labels[perm[j]] == labels[j];
                if (same && perm != perms.front()) stabilizer.push_back(&perm);
            }
            const std::uint64_t masks = std::uint64_t{1} << slots.size();
            for (std::uint64_t mask = 0; mask < masks; ++mask) {
                const std::uint64_t adj = adjacency_bits(mask);
                bool canonical = true;
                for (const auto* perm : stabilizer)
                    if (permute(adj, *perm) < adj) {
                        canonical = false;
                        break;
                    }
                if (!canonical) continue;
                std::vector<std::pair<WorldIndex, WorldIndex>> edges;
                for (std::size_t u = 0; u < n; ++u)
                    for (std::size_t v = 0; v < n; ++v)
                        if ((adj >> (u * n + v)) & 1u) edges.emplace_back(u, v);
                visit(PointedModel::from_indices(opts.signature, world_names(n), edges, labels, 0));
            }
        });
    }
}

struct Shape {
    Label label = 0;
    std::vector<std::size_t> kids;  // indices into the previous level
    std::size_t size = 1;
};

std::vector<std::vector<Shape>> tree_levels(std::size_t props, std::size_t max_height, std::size_t max_branching) {
    const Label label_count = Label{1} << props;
    std::vector<std::vector<Shape>> levels(max_height + 1);
    for (Label l = 0; l < label_count; ++l) levels[0].push_back({l, {}, 1});
    for (std::size_t h = 1; h <= max_height; ++h) {
        const auto& below = levels[h - 1];
        for (Label l = 0; l < label_count; ++l) {
            std::vector<std::size_t> kids;
            auto rec = [&](auto&& self, std::size_t start) -> void {
                std::size_t size = 1;
                for (std::size_t k : kids) size += below[k].size;
                levels[h].push_back({l, kids, size});
                if (kids.size() == max_branching) return;
                for (std::size_t k = start; k < below.size(); ++k) {
                    kids.push_back(k);
                    self(self, k);
                    kids.pop_back();
                }
            };
            rec(rec, 0);
        }
    }
    return levels;
}

TreeModel materialize(const std::vector<std::vector<Shape>>& levels, std::size_t h, std::size_t index, const Signature& sig) {
    // Breadth-first: (level, shape index)
    std::vector<std::pair<std::size_t, std::size_t>> nodes{{h, index}};
    std::vector<std::pair<WorldIndex, WorldIndex>> edges;
    std::vector<Label> labels;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [lv, idx] = nodes[i];
        const Shape& s = levels[lv][idx];
        labels.push_back(s.label);
        for (std::size_t k : s.kids) {
            edges.emplace_back(i, nodes.size());
            nodes.emplace_back(lv - 1, k);
        }
    }
    return as_tree(PointedModel::from_indices(sig, world_names(nodes.size()), edges, std::move(labels), 0));
}

} // namespace

std::vector<TreeModel> enumerate_trees(const Signature& sig,
                                       std::size_t max_height,
                                       std::size_t max_branching,
                                       std::size_t max_worlds) {
    if (sig.size() > 8) throw ModelError("enumeration supports at most 8 propositions");
    auto levels = tree_levels(sig.size(), max_height, max_branching);
    std::vector<TreeModel> out;
    const auto& top = levels[max_height];
    for (std::size_t i = 0; i < top.size(); ++i)
        if (max_worlds == 0 || top[i].size <= max_worlds) out.push_back(materialize(levels, max_height, i, sig));
    std::stable_sort(out.begin(), out.end(), [](const TreeModel& a, const TreeModel& b) { return a.size() < b.size(); });
    return out;
}

void for_each_model(const EnumerateOptions& opts, const std::function<void(const PointedModel&)>& visit) {
    if (opts.tree_only) {
        for (const auto& t : enumerate_trees(opts.signature, opts.max_height, opts.max_branching, opts.max_worlds))
            visit(t.model());
        return;
    }
    enumerate_general(opts, visit);
}

std::vector<PointedModel> enumerate_models(const EnumerateOptions& opts) {
    std::vector<PointedModel> out;
    for_each_model(opts, [&](const PointedModel& m) { out.push_back(m); });
    return out;
}

} // namespace modalpres

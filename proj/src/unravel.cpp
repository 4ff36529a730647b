#include "modalpres/unravel.hpp"

namespace modalpres {

namespace {

std::string escape_component(const std::string& id) {
    if (id.find_first_of("/\\") == std::string::npos) return id;
    std::string out;
    for (char c : id) {
        if (c == '/' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

Unravelling unravel_with_origin(const PointedModel& m, std::size_t L) {
    std::vector<std::string> ids{escape_component(m.id(m.point()))};
    std::vector<WorldIndex> origin{m.point()};
    std::vector<std::size_t> depth{0};
    std::vector<std::pair<WorldIndex, WorldIndex>> edges;

    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (depth[i] == L) continue;
        for (WorldIndex v : m.successors(origin[i])) {
            const WorldIndex child = ids.size();
            ids.push_back(ids[i] + "/" + escape_component(m.id(v)));
            origin.push_back(v);
            depth.push_back(depth[i] + 1);
            edges.emplace_back(i, child);
        }
    }
    std::vector<Label> labels;
    labels.reserve(origin.size());
    for (WorldIndex w : origin) labels.push_back(m.label(w));
    auto model = PointedModel::from_indices(m.signature(), std::move(ids), edges, std::move(labels), 0);
    return {as_tree(model), std::move(origin)};
}

TreeModel unravel(const PointedModel& m, std::size_t L) { return unravel_with_origin(m, L).tree; }

std::size_t world_count_at_depth(const TreeModel& t, std::size_t d) {
    if (d > t.height())
        throw ModelError("depth " + std::to_string(d) + " exceeds tree height " + std::to_string(t.height()));
    std::size_t count = 0;
    for (WorldIndex w = 0; w < t.size(); ++w)
        if (t.depth(w) == d) ++count;
    return count;
}

} // namespace modalpres

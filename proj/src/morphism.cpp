#include "modalpres/morphism.hpp"

#include <deque>

#include "modalpres/matching.hpp"

namespace modalpres {

std::string kind_name(MorphismKind kind) {
    switch (kind) {
    case MorphismKind::Iso: return "iso";
    case MorphismKind::Embedding: return "embed";
    case MorphismKind::InjectiveHom: return "injhom";
    case MorphismKind::Hom: return "hom";
    }
    return "?";
}

std::optional<MorphismKind> parse_kind(std::string_view name) {
    if (name == "iso") return MorphismKind::Iso;
    if (name == "embed") return MorphismKind::Embedding;
    if (name == "injhom") return MorphismKind::InjectiveHom;
    if (name == "hom") return MorphismKind::Hom;
    return std::nullopt;
}

namespace {

constexpr WorldIndex kUnset = static_cast<WorldIndex>(-1);

bool exact_labels(MorphismKind k) { return k == MorphismKind::Iso || k == MorphismKind::Embedding; }
bool injective(MorphismKind k) { return k != MorphismKind::Hom; }

bool label_ok(MorphismKind k, Label a, Label b) { return exact_labels(k) ? a == b : (a & ~b) == 0; }

void require_same_signature(const PointedModel& a, const PointedModel& b) {
    if (!(a.signature() == b.signature())) throw SignatureMismatch("models have different signatures");
}

class Search {
public:
    Search(MorphismKind kind, const PointedModel& src, const PointedModel& dst)
        : kind_(kind), src_(src), dst_(dst), map_(src.world_count(), kUnset), used_(dst.world_count(), false) {
        build_order();
    }

    std::optional<std::vector<WorldIndex>> run() {
        if (kind_ == MorphismKind::Iso &&
            (src_.world_count() != dst_.world_count() || src_.edge_count() != dst_.edge_count()))
            return std::nullopt;
        if (injective(kind_) && src_.world_count() > dst_.world_count()) return std::nullopt;
        if (extend(0)) return map_;
        return std::nullopt;
    }

private:
    // Breadth-first over the undirected frame so neighbours are placed early.
    void build_order() {
        const std::size_t n = src_.world_count();
        std::vector<bool> seen(n, false);
        auto bfs = [&](WorldIndex start) {
            std::deque<WorldIndex> queue{start};
            seen[start] = true;
            while (!queue.empty()) {
                WorldIndex u = queue.front();
                queue.pop_front();
                order_.push_back(u);
                for (const auto* list : {&src_.successors(u), &src_.predecessors(u)})
                    for (WorldIndex v : *list)
                        if (!seen[v]) {
                            seen[v] = true;
                            queue.push_back(v);
                        }
            }
        };
        bfs(src_.point());
        for (WorldIndex w = 0; w < n; ++w)
            if (!seen[w]) bfs(w);
    }

    bool candidate(WorldIndex u, WorldIndex v) const {
        if (injective(kind_) && used_[v]) return false;
        if (!label_ok(kind_, src_.label(u), dst_.label(v))) return false;
        const bool loop_u = src_.has_edge(u, u);
        const bool loop_v = dst_.has_edge(v, v);
        if (loop_u && !loop_v) return false;
        if (exact_labels(kind_) && loop_v && !loop_u) return false;
        if (injective(kind_)) {
            if (src_.successors(u).size() > dst_.successors(v).size()) return false;
            if (src_.predecessors(u).size() > dst_.predecessors(v).size()) return false;
        }
        if (kind_ == MorphismKind::Iso) {
            if (src_.successors(u).size() != dst_.successors(v).size()) return false;
            if (src_.predecessors(u).size() != dst_.predecessors(v).size()) return false;
        }
        if (exact_labels(kind_)) {
            for (WorldIndex z : order_) {
                if (map_[z] == kUnset || z == u) continue;
                if (src_.has_edge(u, z) != dst_.has_edge(v, map_[z])) return false;
                if (src_.has_edge(z, u) != dst_.has_edge(map_[z], v)) return false;
            }
            return true;
        }
        for (WorldIndex z : src_.successors(u))
            if (map_[z] != kUnset && z != u && !dst_.has_edge(v, map_[z])) return false;
        for (WorldIndex z : src_.predecessors(u))
            if (map_[z] != kUnset && z != u && !dst_.has_edge(map_[z], v)) return false;
        return true;
    }

    bool extend(std::size_t i) {
        if (i == order_.size()) return true;
        const WorldIndex u = order_[i];
        auto attempt = [&](WorldIndex v) {
            if (!candidate(u, v)) return false;
            map_[u] = v;
            used_[v] = true;
            if (extend(i + 1)) return true;
            map_[u] = kUnset;
            used_[v] = false;
            return false;
        };
        if (u == src_.point()) return attempt(dst_.point());
        for (WorldIndex v = 0; v < dst_.world_count(); ++v)
            if (attempt(v)) return true;
        return false;
    }

    MorphismKind kind_;
    const PointedModel& src_;
    const PointedModel& dst_;
    std::vector<WorldIndex> order_;
    std::vector<WorldIndex> map_;
    std::vector<bool> used_;
};

} // namespace

std::optional<std::vector<WorldIndex>> find_morphism_indices(MorphismKind kind,
                                                             const PointedModel& src,
                                                             const PointedModel& dst) {
    require_same_signature(src, dst);
    return Search(kind, src, dst).run();
}

std::optional<Witness> find_morphism(MorphismKind kind, const PointedModel& src, const PointedModel& dst) {
    auto map = find_morphism_indices(kind, src, dst);
    if (!map) return std::nullopt;
    Witness w;
    for (WorldIndex u = 0; u < src.world_count(); ++u) w[src.id(u)] = dst.id((*map)[u]);
    return w;
}

bool verify_mapping(MorphismKind kind,
                    const PointedModel& src,
                    const PointedModel& dst,
                    const std::vector<WorldIndex>& f) {
    require_same_signature(src, dst);
    const std::size_t n = src.world_count();
    if (f.size() != n) return false;
    for (WorldIndex u = 0; u < n; ++u)
        if (f[u] >= dst.world_count()) return false;
    if (f[src.point()] != dst.point()) return false;
    if (injective(kind)) {
        std::vector<bool> hit(dst.world_count(), false);
        for (WorldIndex u = 0; u < n; ++u) {
            if (hit[f[u]]) return false;
            hit[f[u]] = true;
        }
    }
    if (kind == MorphismKind::Iso && n != dst.world_count()) return false;
    for (WorldIndex u = 0; u < n; ++u) {
        if (!label_ok(kind, src.label(u), dst.label(f[u]))) return false;
        for (WorldIndex v = 0; v < n; ++v) {
            const bool e = src.has_edge(u, v);
            const bool e2 = dst.has_edge(f[u], f[v]);
            if (e && !e2) return false;
            if (exact_labels(kind) && e2 && !e) return false;
        }
    }
    return true;
}

bool verify_witness(MorphismKind kind, const PointedModel& src, const PointedModel& dst, const Witness& mapping) {
    std::vector<WorldIndex> f(src.world_count());
    if (mapping.size() != src.world_count()) return false;
    for (const auto& [a, b] : mapping) {
        auto ia = src.index_of(a);
        auto ib = dst.index_of(b);
        if (!ia || !ib) return false;
        f[*ia] = *ib;
    }
    return verify_mapping(kind, src, dst, f);
}

bool tree_preorder(MorphismKind kind, const TreeModel& a, const TreeModel& b) {
    require_same_signature(a.model(), b.model());
    if (kind == MorphismKind::Iso) return a.size() == b.size() && canonical_key(a) == canonical_key(b);
    const auto& ma = a.model();
    const auto& mb = b.model();
    const std::size_t nb = mb.world_count();
    // 0 unknown, 1 yes, 2 no
    std::vector<unsigned char> memo(ma.world_count() * nb, 0);

    auto fits = [&](auto&& self, WorldIndex x, WorldIndex y) -> bool {
        unsigned char& slot = memo[x * nb + y];
        if (slot) return slot == 1;
        bool ok = label_ok(kind, ma.label(x), mb.label(y));
        const auto& xs = ma.successors(x);
        const auto& ys = mb.successors(y);
        if (ok && kind == MorphismKind::Hom) {
            for (WorldIndex c : xs) {
                bool some = false;
                for (WorldIndex d : ys)
                    if (self(self, c, d)) {
                        some = true;
                        break;
                    }
                if (!some) {
                    ok = false;
                    break;
                }
            }
        } else if (ok && !xs.empty()) {
            if (xs.size() > ys.size()) {
                ok = false;
            } else {
                std::vector<std::vector<std::size_t>> adj(xs.size());
                for (std::size_t i = 0; i < xs.size(); ++i)
                    for (std::size_t j = 0; j < ys.size(); ++j)
                        if (self(self, xs[i], ys[j])) adj[i].push_back(j);
                ok = saturating_matching(adj, ys.size()).has_value();
            }
        }
        slot = ok ? 1 : 2;
        return ok;
    };
    return fits(fits, a.root(), b.root());
}

} // namespace modalpres

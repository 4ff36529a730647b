#include "modalpres/equivalence.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace modalpres {

std::vector<TypePartition> refine_types_upto(const PointedModel& m, std::size_t depth, Logic logic) {
    const std::size_t n = m.world_count();
    const std::size_t props = m.signature().size();
    std::vector<TypePartition> out;
    std::vector<std::string> prev;
    for (std::size_t d = 0; d <= depth; ++d) {
        std::vector<std::string> cur(n);
        for (WorldIndex w = 0; w < n; ++w) {
            std::string s = "(" + label_bits(m.label(w), props);
            if (d > 0) {
                std::vector<const std::string*> kids;
                for (WorldIndex v : m.successors(w)) kids.push_back(&prev[v]);
                std::sort(kids.begin(), kids.end(), [](auto* a, auto* b) { return *a < *b; });
                if (logic == Logic::ML)
                    kids.erase(std::unique(kids.begin(), kids.end(), [](auto* a, auto* b) { return *a == *b; }),
                               kids.end());
                for (auto* k : kids) s += *k;
            }
            s += ")";
            cur[w] = std::move(s);
        }
        TypePartition p;
        p.logic = logic;
        p.depth = d;
        std::set<std::string> distinct(cur.begin(), cur.end());
        std::map<std::string, std::size_t> rank;
        for (const auto& t : distinct) rank.emplace(t, rank.size());
        p.klass.resize(n);
        for (WorldIndex w = 0; w < n; ++w) p.klass[w] = rank.at(cur[w]);
        p.class_count = distinct.size();
        p.type = cur;
        prev = std::move(cur);
        out.push_back(std::move(p));
    }
    return out;
}

TypePartition refine_types(const PointedModel& m, std::size_t depth, Logic logic) {
    return std::move(refine_types_upto(m, depth, logic).back());
}

std::optional<Bisimulation> l_bisimilar(const PointedModel& a, const PointedModel& b, std::size_t L) {
    if (!(a.signature() == b.signature())) throw SignatureMismatch("models have different signatures");
    const std::size_t na = a.world_count();
    const std::size_t nb = b.world_count();
    // rel[k][u * nb + v]: u and v agree for k more steps.
    std::vector<std::vector<bool>> rel(L + 1, std::vector<bool>(na * nb, false));
    for (WorldIndex u = 0; u < na; ++u)
        for (WorldIndex v = 0; v < nb; ++v) rel[0][u * nb + v] = a.label(u) == b.label(v);
    for (std::size_t k = 1; k <= L; ++k) {
        const auto& below = rel[k - 1];
        for (WorldIndex u = 0; u < na; ++u)
            for (WorldIndex v = 0; v < nb; ++v) {
                if (!rel[0][u * nb + v]) continue;
                bool ok = std::all_of(a.successors(u).begin(), a.successors(u).end(), [&](WorldIndex x) {
                    return std::any_of(b.successors(v).begin(), b.successors(v).end(),
                                       [&](WorldIndex y) { return below[x * nb + y]; });
                });
                ok = ok && std::all_of(b.successors(v).begin(), b.successors(v).end(), [&](WorldIndex y) {
                    return std::any_of(a.successors(u).begin(), a.successors(u).end(),
                                       [&](WorldIndex x) { return below[x * nb + y]; });
                });
                rel[k][u * nb + v] = ok;
            }
    }
    if (!rel[L][a.point() * nb + b.point()]) return std::nullopt;
    Bisimulation z;
    z.L = L;
    z.level.resize(L + 1);
    for (std::size_t d = 0; d <= L; ++d)
        for (WorldIndex u = 0; u < na; ++u)
            for (WorldIndex v = 0; v < nb; ++v)
                if (rel[L - d][u * nb + v]) z.level[d].emplace_back(u, v);
    return z;
}

bool verify_bisimulation(const PointedModel& a, const PointedModel& b, const Bisimulation& z) {
    if (z.level.size() != z.L + 1) return false;
    std::vector<std::set<std::pair<WorldIndex, WorldIndex>>> lv;
    for (const auto& l : z.level) lv.emplace_back(l.begin(), l.end());
    if (!lv[0].count({a.point(), b.point()})) return false;
    for (std::size_t d = 0; d <= z.L; ++d)
        for (const auto& [u, v] : lv[d]) {
            if (u >= a.world_count() || v >= b.world_count()) return false;
            if (a.label(u) != b.label(v)) return false;
            if (d == z.L) continue;
            for (WorldIndex x : a.successors(u)) {
                bool found = false;
                for (WorldIndex y : b.successors(v)) found = found || lv[d + 1].count({x, y});
                if (!found) return false;
            }
            for (WorldIndex y : b.successors(v)) {
                bool found = false;
                for (WorldIndex x : a.successors(u)) found = found || lv[d + 1].count({x, y});
                if (!found) return false;
            }
        }
    return true;
}

} // namespace modalpres

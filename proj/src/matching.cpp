#include "modalpres/matching.hpp"

namespace modalpres {

namespace {

constexpr std::size_t kFree = static_cast<std::size_t>(-1);

bool augment(std::size_t l,
             const std::vector<std::vector<std::size_t>>& adj,
             std::vector<std::size_t>& match_right,
             std::vector<bool>& visited) {
    for (std::size_t r : adj[l]) {
        if (visited[r]) continue;
        visited[r] = true;
        if (match_right[r] == kFree || augment(match_right[r], adj, match_right, visited)) {
            match_right[r] = l;
            return true;
        }
    }
    return false;
}

} // namespace

std::optional<std::vector<std::size_t>> saturating_matching(const std::vector<std::vector<std::size_t>>& adj,
                                                            std::size_t right_count) {
    if (adj.size() > right_count) return std::nullopt;
    std::vector<std::size_t> match_right(right_count, kFree);
    for (std::size_t l = 0; l < adj.size(); ++l) {
        std::vector<bool> visited(right_count, false);
        if (!augment(l, adj, match_right, visited)) return std::nullopt;
    }
    std::vector<std::size_t> partner(adj.size(), kFree);
    for (std::size_t r = 0; r < right_count; ++r)
        if (match_right[r] != kFree) partner[match_right[r]] = r;
    return partner;
}

} // namespace modalpres

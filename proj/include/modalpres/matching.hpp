#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace modalpres {

// Maximum bipartite matching by augmenting paths. adj[l] lists the right
// vertices compatible with left vertex l. Returns right partner per left
// vertex if every left vertex can be matched, nullopt otherwise.
std::optional<std::vector<std::size_t>> saturating_matching(const std::vector<std::vector<std::size_t>>& adj,
                                                            std::size_t right_count);

} // namespace modalpres

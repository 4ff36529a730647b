#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "modalpres/kripke.hpp"

namespace modalpres {

// L-unravelling: worlds are the paths of length <= L from the point.
// Path ids join the source ids with '/'; a '/' or '\' inside a source id
// is escaped with '\' so distinct paths never share an id.
TreeModel unravel(const PointedModel& m, std::size_t L);

// Source world of each unravelled world (last element of its path).
struct Unravelling {
    TreeModel tree;
    std::vector<WorldIndex> origin;
};
Unravelling unravel_with_origin(const PointedModel& m, std::size_t L);

std::size_t world_count_at_depth(const TreeModel& t, std::size_t d);

} // namespace modalpres

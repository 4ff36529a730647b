#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modalpres/kripke.hpp"

namespace modalpres {

enum class Logic { GML, ML };

// World types at a fixed modal depth. A GML type at depth d is exactly the
// canonical key of the world's d-unravelling; ML types use sets of
// successor types instead of multisets.
struct TypePartition {
    Logic logic = Logic::GML;
    std::size_t depth = 0;
    std::vector<std::string> type;   // per world
    std::vector<std::size_t> klass;  // per world; dense ids ordered by type string
    std::size_t class_count = 0;
};

TypePartition refine_types(const PointedModel& m, std::size_t depth, Logic logic);
// Types at every depth 0..depth.
std::vector<TypePartition> refine_types_upto(const PointedModel& m, std::size_t depth, Logic logic);

// Largest depth-stratified L-bisimulation: level[d] relates worlds that
// can still be matched for L - d further steps. level[0] contains the
// point pair when the models are L-bisimilar.
struct Bisimulation {
    std::size_t L = 0;
    std::vector<std::vector<std::pair<WorldIndex, WorldIndex>>> level;
};

std::optional<Bisimulation> l_bisimilar(const PointedModel& a, const PointedModel& b, std::size_t L);

// Checks label agreement and the forth and back clauses between levels.
bool verify_bisimulation(const PointedModel& a, const PointedModel& b, const Bisimulation& z);

} // namespace modalpres

#pragma once

#include <cstddef>
#include <string_view>

#include "modalpres/formula.hpp"
#include "modalpres/kripke.hpp"

namespace modalpres {

enum class Fragment { ExistsGML, ExistsPosGML, ExistsPosML };

std::string fragment_name(Fragment f);
// "egml", "epgml", "epml".
std::optional<Fragment> parse_fragment(std::string_view name);

// Plain: the point's literals and one graded diamond per GML_{l-1} class of
// successors, ordered by class type. Matching adds, for every set S of at
// least two classes whose formulas can hold together, <n>(f_1 | ... | f_k)
// with n the total size of S. Only the matching form makes satisfaction
// equivalent to an embedding (injective homomorphism) of unravellings when
// two classes can be witnessed by the same successor.
enum class CharStyle { Matching, Plain };

// Characteristic ∃GML formula of depth l.
Formula char_exists_gml(const PointedModel& m, std::size_t l, CharStyle style = CharStyle::Matching);
// Without negative literals; empty conjunctions become True.
Formula char_exists_pos_gml(const PointedModel& m, std::size_t l, CharStyle style = CharStyle::Matching);
// Plain positive form with every grade set to 1.
Formula char_exists_pos_ml(const PointedModel& m, std::size_t l);
Formula char_formula(Fragment fragment, const PointedModel& m, std::size_t l, CharStyle style = CharStyle::Matching);
Formula strip_negative_literals(const Formula& f);
Formula collapse_grades(const Formula& f);

enum class PruneOrder { LeastKeyFirst, GreatestKeyFirst };

// Stage-wise removal of ML-equivalent sibling subtrees. Surviving worlds
// keep their ids. The order only picks which representative survives.
TreeModel prune(const TreeModel& t, PruneOrder order = PruneOrder::LeastKeyFirst);

// Subtree of t on the worlds flagged in keep (must be closed under parent).
TreeModel restrict_tree(const TreeModel& t, const std::vector<bool>& keep);

} // namespace modalpres

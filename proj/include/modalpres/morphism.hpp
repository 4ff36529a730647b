#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modalpres/kripke.hpp"

namespace modalpres {

// Ordered from strictest to weakest: Iso ⊆ Embedding ⊆ InjectiveHom ⊆ Hom.
enum class MorphismKind { Iso, Embedding, InjectiveHom, Hom };

// "iso", "embed", "injhom", "hom".
std::string kind_name(MorphismKind kind);
std::optional<MorphismKind> parse_kind(std::string_view name);

// Source world id -> target world id.
using Witness = std::map<std::string, std::string>;

// Complete backtracking search for a morphism of the given kind mapping
// src.point to dst.point. Throws SignatureMismatch.
std::optional<Witness> find_morphism(MorphismKind kind, const PointedModel& src, const PointedModel& dst);
std::optional<std::vector<WorldIndex>> find_morphism_indices(MorphismKind kind,
                                                             const PointedModel& src,
                                                             const PointedModel& dst);

// Independent check that `mapping` is a morphism of the given kind.
bool verify_witness(MorphismKind kind, const PointedModel& src, const PointedModel& dst, const Witness& mapping);
bool verify_mapping(MorphismKind kind,
                    const PointedModel& src,
                    const PointedModel& dst,
                    const std::vector<WorldIndex>& mapping);

// Tree fast path for a ⪯ b. Embedding compares labels exactly, the
// homomorphism kinds by containment. Iso is rejected.
bool tree_preorder(MorphismKind kind, const TreeModel& a, const TreeModel& b);

} // namespace modalpres

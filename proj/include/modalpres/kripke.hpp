#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "modalpres/errors.hpp"

namespace modalpres {

using WorldIndex = std::size_t;

// Bit i is set iff the i-th proposition of the signature holds.
using Label = std::uint64_t;

constexpr std::size_t kMaxProps = 64;

class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<std::string> props);

    std::size_t size() const noexcept { return props_.size(); }
    bool empty() const noexcept { return props_.empty(); }
    const std::vector<std::string>& props() const noexcept { return props_; }
    const std::string& operator[](std::size_t i) const { return props_[i]; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const Signature& other) const { return props_ == other.props_; }

private:
    std::vector<std::string> props_;
};

bool is_identifier(std::string_view s);

class PointedModel {
public:
    using Edge = std::pair<std::string, std::string>;

    PointedModel(Signature signature,
                 std::vector<std::string> worlds,
                 const std::vector<Edge>& edges,
                 const std::map<std::string, std::vector<std::string>>& valuation,
                 const std::string& point);

    // Index-based construction; labels[i] is the label of worlds[i].
    static PointedModel from_indices(Signature signature,
                                     std::vector<std::string> worlds,
                                     const std::vector<std::pair<WorldIndex, WorldIndex>>& edges,
                                     std::vector<Label> labels,
                                     WorldIndex point);

    const Signature& signature() const noexcept { return signature_; }
    std::size_t world_count() const noexcept { return ids_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    const std::string& id(WorldIndex w) const { return ids_.at(w); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    std::optional<WorldIndex> index_of(const std::string& id) const;
    WorldIndex point() const noexcept { return point_; }

    const std::vector<WorldIndex>& successors(WorldIndex w) const { return succ_.at(w); }
    const std::vector<WorldIndex>& predecessors(WorldIndex w) const { return pred_.at(w); }
    bool has_edge(WorldIndex u, WorldIndex v) const;

    Label label(WorldIndex w) const { return labels_.at(w); }
    bool holds(std::size_t prop, WorldIndex w) const { return (labels_.at(w) >> prop) & 1u; }
    // Worlds where proposition `prop` holds, ascending.
    const std::vector<WorldIndex>& extension(std::size_t prop) const { return valuation_.at(prop); }

    // Same frame and valuation with a different point.
    PointedModel with_point(WorldIndex w) const;

    // Directed shortest-path distance from the point; nullopt if unreachable.
    std::vector<std::optional<std::size_t>> distances_from_point() const;

private:
    PointedModel() = default;
    void finish(const std::vector<std::pair<WorldIndex, WorldIndex>>& edges);

    Signature signature_;
    std::vector<std::string> ids_;
    std::unordered_map<std::string, WorldIndex> index_;
    std::vector<std::vector<WorldIndex>> succ_;
    std::vector<std::vector<WorldIndex>> pred_;
    std::vector<std::vector<WorldIndex>> valuation_;
    std::vector<Label> labels_;
    WorldIndex point_ = 0;
    std::size_t edge_count_ = 0;
};

// A pointed model whose frame is a finite tree rooted at the point.
class TreeModel {
public:
    const PointedModel& model() const noexcept { return model_; }
    WorldIndex root() const noexcept { return model_.point(); }
    std::size_t size() const noexcept { return model_.world_count(); }
    std::size_t height() const noexcept { return height_; }

    std::optional<WorldIndex> parent(WorldIndex w) const;
    std::size_t depth(WorldIndex w) const { return depth_.at(w); }
    std::size_t subtree_height(WorldIndex w) const { return subtree_height_.at(w); }
    const std::vector<WorldIndex>& children(WorldIndex w) const { return model_.successors(w); }

    // Worlds in breadth-first order from the root.
    const std::vector<WorldIndex>& bfs_order() const noexcept { return order_; }

    operator const PointedModel&() const noexcept { return model_; }

private:
    friend std::optional<TreeModel> try_as_tree(const PointedModel& m, std::string* reason);
    explicit TreeModel(PointedModel m) : model_(std::move(m)) {}

    PointedModel model_;
    std::vector<std::optional<WorldIndex>> parent_;
    std::vector<std::size_t> depth_;
    std::vector<std::size_t> subtree_height_;
    std::vector<WorldIndex> order_;
    std::size_t height_ = 0;
};

std::optional<TreeModel> try_as_tree(const PointedModel& m, std::string* reason = nullptr);
// Throws NotATreeError naming the violated condition.
TreeModel as_tree(const PointedModel& m);

// Label rendered as one '0'/'1' character per proposition, in signature order.
std::string label_bits(Label label, std::size_t prop_count);

// AHU code of the subtree rooted at w.
std::string subtree_code(const TreeModel& t, WorldIndex w);
// Codes for every world of the tree, indexed by world.
std::vector<std::string> subtree_codes(const TreeModel& t);
// Equal for two trees iff they are isomorphic; also the canonical total order.
std::string canonical_key(const TreeModel& t);

PointedModel load_model(std::string_view json_text);
PointedModel load_model_file(const std::string& path);
std::string dump_model(const PointedModel& m);

} // namespace modalpres

#include "modalpres/kripke.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "modalpres/json_io.hpp"

namespace modalpres {

namespace {

bool is_keyword(std::string_view s) { return s == "true" || s == "false"; }

} // namespace

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s.front())) return false;
    return std::all_of(s.begin() + 1, s.end(), [&](char c) { return alpha(c) || digit(c); });
}

Signature::Signature(std::vector<std::string> props) : props_(std::move(props)) {
    if (props_.size() > kMaxProps)
        throw ModelError("signature has more than " + std::to_string(kMaxProps) + " propositions");
    std::set<std::string> seen;
    for (const auto& p : props_) {
        if (!is_identifier(p) || is_keyword(p)) throw ModelError("invalid proposition name '" + p + "'");
        if (!seen.insert(p).second) throw ModelError("duplicate proposition '" + p + "'");
    }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < props_.size(); ++i)
        if (props_[i] == name) return i;
    return std::nullopt;
}

PointedModel::PointedModel(Signature signature,
                           std::vector<std::string> worlds,
                           const std::vector<Edge>& edges,
                           const std::map<std::string, std::vector<std::string>>& valuation,
                           const std::string& point) {
    signature_ = std::move(signature);
    ids_ = std::move(worlds);
    if (ids_.empty()) throw ModelError("model has no worlds");
    for (WorldIndex i = 0; i < ids_.size(); ++i) {
        if (ids_[i].empty()) throw ModelError("empty world id");
        if (!index_.emplace(ids_[i], i).second) throw ModelError("duplicate world '" + ids_[i] + "'");
    }
    auto lookup = [&](const std::string& id) {
        auto it = index_.find(id);
        if (it == index_.end()) throw ModelError("unknown world '" + id + "'");
        return it->second;
    };
    std::vector<std::pair<WorldIndex, WorldIndex>> idx_edges;
    idx_edges.reserve(edges.size());
    for (const auto& [a, b] : edges) idx_edges.emplace_back(lookup(a), lookup(b));

    labels_.assign(ids_.size(), 0);
    for (const auto& [prop, ws] : valuation) {
        auto p = signature_.index_of(prop);
        if (!p) throw ModelError("valuation names proposition '" + prop + "' outside the signature");
        for (const auto& w : ws) labels_[lookup(w)] |= Label{1} << *p;
    }
    point_ = lookup(point);
    finish(idx_edges);
}

PointedModel PointedModel::from_indices(Signature signature,
                                        std::vector<std::string> worlds,
                                        const std::vector<std::pair<WorldIndex, WorldIndex>>& edges,
                                        std::vector<Label> labels,
                                        WorldIndex point) {
    PointedModel m;
    m.signature_ = std::move(signature);
    m.ids_ = std::move(worlds);
    if (m.ids_.empty()) throw ModelError("model has no worlds");
    if (labels.size() != m.ids_.size()) throw ModelError("label count does not match world count");
    for (WorldIndex i = 0; i < m.ids_.size(); ++i) {
        if (m.ids_[i].empty()) throw ModelError("empty world id");
        if (!m.index_.emplace(m.ids_[i], i).second) throw ModelError("duplicate world '" + m.ids_[i] + "'");
    }
    const Label mask = m.signature_.size() == 64 ? ~Label{0} : ((Label{1} << m.signature_.size()) - 1);
    for (Label l : labels)
        if (l & ~mask) throw ModelError("label uses propositions outside the signature");
    for (const auto& [a, b] : edges)
        if (a >= m.ids_.size() || b >= m.ids_.size()) throw ModelError("edge endpoint out of range");
    if (point >= m.ids_.size()) throw ModelError("point out of range");
    m.labels_ = std::move(labels);
    m.point_ = point;
    m.finish(edges);
    return m;
}

void PointedModel::finish(const std::vector<std::pair<WorldIndex, WorldIndex>>& edges) {
    const std::size_t n = ids_.size();
    succ_.assign(n, {});
    pred_.assign(n, {});
    for (const auto& [a, b] : edges) succ_[a].push_back(b);
    edge_count_ = 0;
    for (WorldIndex a = 0; a < n; ++a) {
        auto& s = succ_[a];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        edge_count_ += s.size();
        for (WorldIndex b : s) pred_[b].push_back(a);
    }
    valuation_.assign(signature_.size(), {});
    for (WorldIndex w = 0; w < n; ++w)
        for (std::size_t p = 0; p < signature_.size(); ++p)
            if ((labels_[w] >> p) & 1u) valuation_[p].push_back(w);
}

std::optional<WorldIndex> PointedModel::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool PointedModel::has_edge(WorldIndex u, WorldIndex v) const {
    const auto& s = succ_.at(u);
    return std::binary_search(s.begin(), s.end(), v);
}

PointedModel PointedModel::with_point(WorldIndex w) const {
    if (w >= ids_.size()) throw ModelError("point out of range");
    PointedModel copy = *this;
    copy.point_ = w;
    return copy;
}

std::vector<std::optional<std::size_t>> PointedModel::distances_from_point() const {
    std::vector<std::optional<std::size_t>> dist(ids_.size());
    std::deque<WorldIndex> queue{point_};
    dist[point_] = 0;
    while (!queue.empty()) {
        WorldIndex u = queue.front();
        queue.pop_front();
        for (WorldIndex v : succ_[u]) {
            if (dist[v]) continue;
            dist[v] = *dist[u] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

std::optional<WorldIndex> TreeModel::parent(WorldIndex w) const { return parent_.at(w); }

std::optional<TreeModel> try_as_tree(const PointedModel& m, std::string* reason) {
    auto fail = [&](std::string why) -> std::optional<TreeModel> {
        if (reason) *reason = std::move(why);
        return std::nullopt;
    };
    const std::size_t n = m.world_count();
    if (!m.predecessors(m.point()).empty()) return fail("point '" + m.id(m.point()) + "' has a predecessor");
    for (WorldIndex w = 0; w < n; ++w)
        if (w != m.point() && m.predecessors(w).size() > 1)
            return fail("world '" + m.id(w) + "' has more than one parent");

    TreeModel t(m);
    t.parent_.assign(n, std::nullopt);
    t.depth_.assign(n, 0);
    t.subtree_height_.assign(n, 0);
    std::vector<bool> seen(n, false);
    seen[m.point()] = true;
    t.order_.push_back(m.point());
    for (std::size_t i = 0; i < t.order_.size(); ++i) {
        WorldIndex u = t.order_[i];
        for (WorldIndex v : m.successors(u)) {
            if (seen[v]) return fail("cycle through world '" + m.id(v) + "'");
            seen[v] = true;
            t.parent_[v] = u;
            t.depth_[v] = t.depth_[u] + 1;
            t.order_.push_back(v);
        }
    }
    if (t.order_.size() != n) {
        for (WorldIndex w = 0; w < n; ++w)
            if (!seen[w]) return fail("world '" + m.id(w) + "' is unreachable from the point");
    }
    for (auto it = t.order_.rbegin(); it != t.order_.rend(); ++it)
        for (WorldIndex c : m.successors(*it))
            t.subtree_height_[*it] = std::max(t.subtree_height_[*it], t.subtree_height_[c] + 1);
    t.height_ = t.subtree_height_[m.point()];
    return t;
}

TreeModel as_tree(const PointedModel& m) {
    std::string reason;
    auto t = try_as_tree(m, &reason);
    if (!t) throw NotATreeError("not a tree: " + reason);
    return std::move(*t);
}

std::string label_bits(Label label, std::size_t prop_count) {
    std::string bits(prop_count, '0');
    for (std::size_t p = 0; p < prop_count; ++p)
        if ((label >> p) & 1u) bits[p] = '1';
    return bits;
}

std::vector<std::string> subtree_codes(const TreeModel& t) {
    const auto& m = t.model();
    std::vector<std::string> code(m.world_count());
    const auto& order = t.bfs_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        WorldIndex w = *it;
        std::vector<const std::string*> kids;
        for (WorldIndex c : m.successors(w)) kids.push_back(&code[c]);
        std::sort(kids.begin(), kids.end(), [](auto* a, auto* b) { return *a < *b; });
        std::string s = "(" + label_bits(m.label(w), m.signature().size());
        for (auto* k : kids) s += *k;
        s += ")";
        code[w] = std::move(s);
    }
    return code;
}

std::string subtree_code(const TreeModel& t, WorldIndex w) { return subtree_codes(t).at(w); }

std::string canonical_key(const TreeModel& t) { return subtree_codes(t).at(t.root()); }

// ---- JSON ----

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json parse_json_text(std::string_view text) {
    try {
        return nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
}

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
    return *it;
}

std::vector<std::string> string_array(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) throw ParseError(what + " must be an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

} // namespace

PointedModel model_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("model must be a JSON object");
    static const std::set<std::string> allowed{"signature", "worlds", "edges", "valuation", "point"};
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ParseError("unknown key '" + key + "'");

    Signature sig(string_array(require(j, "signature"), "signature"));
    auto worlds = string_array(require(j, "worlds"), "worlds");

    const auto& jedges = require(j, "edges");
    if (!jedges.is_array()) throw ParseError("edges must be an array");
    std::vector<PointedModel::Edge> edges;
    for (const auto& e : jedges) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw ParseError("each edge must be a pair of world ids");
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }

    const auto& jval = require(j, "valuation");
    if (!jval.is_object()) throw ParseError("valuation must be an object");
    std::map<std::string, std::vector<std::string>> valuation;
    for (const auto& [prop, ws] : jval.items()) valuation[prop] = string_array(ws, "valuation of " + prop);

    const auto& jpoint = require(j, "point");
    if (!jpoint.is_string()) throw ParseError("point must be a string");
    return PointedModel(std::move(sig), std::move(worlds), edges, valuation, jpoint.get<std::string>());
}

nlohmann::json model_to_json(const PointedModel& m) {
    std::vector<std::string> worlds = m.ids();
    std::sort(worlds.begin(), worlds.end());
    std::vector<std::pair<std::string, std::string>> edges;
    for (WorldIndex u = 0; u < m.world_count(); ++u)
        for (WorldIndex v : m.successors(u)) edges.emplace_back(m.id(u), m.id(v));
    std::sort(edges.begin(), edges.end());

    nlohmann::json j;
    j["signature"] = m.signature().props();
    j["worlds"] = worlds;
    j["edges"] = nlohmann::json::array();
    for (const auto& [a, b] : edges) j["edges"].push_back({a, b});
    j["valuation"] = nlohmann::json::object();
    for (std::size_t p = 0; p < m.signature().size(); ++p) {
        std::vector<std::string> ws;
        for (WorldIndex w : m.extension(p)) ws.push_back(m.id(w));
        std::sort(ws.begin(), ws.end());
        j["valuation"][m.signature()[p]] = ws;
    }
    j["point"] = m.id(m.point());
    return j;
}

PointedModel load_model(std::string_view json_text) { return model_from_json(parse_json_text(json_text)); }

PointedModel load_model_file(const std::string& path) { return load_model(read_text_file(path)); }

std::string dump_model(const PointedModel& m) { return model_to_json(m).dump(); }

} // namespace modalpres

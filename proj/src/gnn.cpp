#include "modalpres/gnn.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "modalpres/json_io.hpp"
#include "modalpres/matching.hpp"

namespace modalpres {

using boost::multiprecision::cpp_int;

Rational parse_rational(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
        std::string_view digits = s;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw ParseError("invalid rational '" + std::string(text) + "'");
        return cpp_int(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    cpp_int num = parse_int(text.substr(0, slash));
    cpp_int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
    const cpp_int num = boost::multiprecision::numerator(r);
    const cpp_int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

void GnnModel::validate() const {
    std::size_t dim = input_dim;
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& L = layers[l];
        const std::string where = "layer " + std::to_string(l) + ": ";
        if (L.A.size() != dim || L.C.size() != dim)
            throw DimensionError(where + "weight matrices need " + std::to_string(dim) + " rows");
        for (const auto* M : {&L.A, &L.C})
            for (const auto& row : *M)
                if (row.size() != L.b.size()) throw DimensionError(where + "matrix width differs from bias length");
        if (L.agg == Aggregation::MaxKSum && L.k == 0) throw DimensionError(where + "MAXKSUM needs k >= 1");
        dim = L.b.size();
    }
}

// ---- graphs ----

FeatureGraph::FeatureGraph(std::size_t dim,
                           std::vector<std::string> nodes,
                           const std::vector<std::pair<std::string, std::string>>& edges,
                           const std::vector<std::vector<std::uint8_t>>& features)
    : dim_(dim), nodes_(std::move(nodes)), adj_(nodes_.size()), features_(features) {
    if (nodes_.empty()) throw ModelError("graph has no nodes");
    if (features_.size() != nodes_.size()) throw ModelError("feature count differs from node count");
    std::set<std::string> seen;
    for (const auto& n : nodes_)
        if (n.empty() || !seen.insert(n).second) throw ModelError("duplicate or empty node id '" + n + "'");
    for (const auto& f : features_) {
        if (f.size() != dim_) throw DimensionError("feature vector length differs from dim");
        for (auto x : f)
            if (x > 1) throw ModelError("features must be 0 or 1");
    }
    for (const auto& [a, b] : edges) {
        auto ia = index_of(a);
        auto ib = index_of(b);
        if (!ia || !ib) throw ModelError("edge names an unknown node");
        if (*ia == *ib) throw ModelError("self-loop at '" + a + "'");
        adj_[*ia].push_back(*ib);
        adj_[*ib].push_back(*ia);
    }
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
}

std::optional<std::size_t> FeatureGraph::index_of(const std::string& id) const {
    auto it = std::find(nodes_.begin(), nodes_.end(), id);
    if (it == nodes_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

// ---- evaluation ----

Vector aggregate(Aggregation agg, std::size_t k, const std::vector<Vector>& multiset, std::size_t dim) {
    Vector out(dim, Rational(0));
    if (multiset.empty()) return out;
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<Rational> column;
        column.reserve(multiset.size());
        for (const auto& v : multiset) column.push_back(v.at(i));
        switch (agg) {
        case Aggregation::Sum:
            for (const auto& x : column) out[i] += x;
            break;
        case Aggregation::Max: out[i] = *std::max_element(column.begin(), column.end()); break;
        case Aggregation::MaxKSum: {
            std::sort(column.begin(), column.end(), std::greater<>());
            const std::size_t take = std::min(k, column.size());
            for (std::size_t j = 0; j < take; ++j) out[i] += column[j];
            break;
        }
        case Aggregation::Mean:
            for (const auto& x : column) out[i] += x;
            out[i] /= Rational(static_cast<long long>(column.size()));
            break;
        }
    }
    return out;
}

bool classify_vector(const Classifier& c, const Vector& x) {
    return std::all_of(x.begin(), x.end(),
                       [&](const Rational& v) { return c.strict ? v > c.threshold : v >= c.threshold; });
}

GnnTrace evaluate_gnn(const GnnModel& n, const FeatureGraph& g) {
    n.validate();
    if (g.dim() != n.input_dim)
        throw DimensionError("graph dimension " + std::to_string(g.dim()) + " differs from network input " +
                             std::to_string(n.input_dim));
    GnnTrace trace;
    std::vector<Vector> cur;
    for (std::size_t v = 0; v < g.size(); ++v) {
        Vector x;
        for (auto bit : g.features(v)) x.emplace_back(static_cast<int>(bit));
        cur.push_back(std::move(x));
    }
    trace.states.push_back(cur);
    for (const auto& L : n.layers) {
        std::vector<Vector> next(g.size());
        for (std::size_t v = 0; v < g.size(); ++v) {
            std::vector<Vector> msgs;
            for (std::size_t u : g.neighbours(v)) msgs.push_back(cur[u]);
            const Vector agg = aggregate(L.agg, L.k, msgs, L.in_dim());
            Vector out = L.b;
            for (std::size_t i = 0; i < L.in_dim(); ++i)
                for (std::size_t j = 0; j < L.out_dim(); ++j) {
                    if (!cur[v][i].is_zero()) out[j] += cur[v][i] * L.A[i][j];
                    if (!agg[i].is_zero()) out[j] += agg[i] * L.C[i][j];
                }
            for (auto& x : out) {
                if (x < 0) x = 0;
                if (L.act == Activation::TruncatedReLU && x > 1) x = 1;
            }
            next[v] = std::move(out);
        }
        cur = std::move(next);
        trace.states.push_back(cur);
    }
    for (const auto& x : cur) trace.verdict.push_back(classify_vector(n.classifier, x));
    return trace;
}

bool multiset_leq(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    std::optional<std::size_t> dim;
    for (const auto* side : {&a, &b})
        for (const auto& v : *side) {
            if (dim && *dim != v.size()) throw DimensionError("multiset vectors differ in dimension");
            dim = v.size();
        }
    if (a.size() > b.size()) return false;
    std::vector<std::vector<std::size_t>> adj(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            bool dominated = true;
            for (std::size_t c = 0; c < a[i].size() && dominated; ++c) dominated = a[i][c] <= b[j][c];
            if (dominated) adj[i].push_back(j);
        }
    return saturating_matching(adj, b.size()).has_value();
}

Certificate positive_weight_certificate(const GnnModel& n) {
    n.validate();
    for (std::size_t l = 0; l < n.layers.size(); ++l) {
        const auto& L = n.layers[l];
        const std::string where = "layer " + std::to_string(l);
        if (L.agg == Aggregation::Mean) {
            MeanEvidence e;
            e.small = {Vector{Rational(1)}};
            e.large = {Vector{Rational(1)}, Vector{Rational(0)}};
            e.small_value = aggregate(Aggregation::Mean, 1, e.small, 1)[0];
            e.large_value = aggregate(Aggregation::Mean, 1, e.large, 1)[0];
            return {false, where + ": MEAN aggregation is not monotone", e};
        }
        for (const auto& [name, M] : {std::pair{"A", &L.A}, std::pair{"C", &L.C}})
            for (std::size_t i = 0; i < M->size(); ++i)
                for (std::size_t j = 0; j < (*M)[i].size(); ++j)
                    if ((*M)[i][j] < 0)
                        return {false,
                                where + ": negative entry " + name + "[" + std::to_string(i) + "][" +
                                    std::to_string(j) + "]",
                                std::nullopt};
    }
    return {true, "all weights non-negative and aggregations monotone", std::nullopt};
}

// ---- compilation ----

namespace {

struct Compiled {
    std::vector<Formula> subs;  // post-order, children before parents
    std::map<Formula, std::size_t> index;
    std::vector<std::size_t> round;  // first layer after which the coordinate is exact
};

void collect(const Formula& f, Compiled& c) {
    if (c.index.count(f)) return;
    std::size_t r = 1;
    switch (f.op()) {
    case Op::Diamond:
        collect(f.child(), c);
        r = c.round[c.index.at(f.child())] + 1;
        break;
    case Op::And:
    case Op::Or:
        collect(f.left(), c);
        collect(f.right(), c);
        r = std::max(c.round[c.index.at(f.left())], c.round[c.index.at(f.right())]) + 1;
        break;
    default: break;
    }
    c.index.emplace(f, c.subs.size());
    c.subs.push_back(f);
    c.round.push_back(r);
}

Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, Vector(cols, Rational(0))); }

} // namespace

GnnModel compile_formula_to_gnn(const Formula& f, const Signature& sig, bool use_max) {
    const auto report = classify(f);
    if (!report.in_exists_pos_GML) throw FragmentError("compilation needs a negation-free formula");
    if (use_max && !report.in_exists_pos_ML) throw FragmentError("MAX compilation needs all grades equal to 1");
    for (const auto& p : propositions(f))
        if (!sig.index_of(p)) throw UnknownProposition("unknown proposition '" + p + "'");

    Compiled c;
    collect(f, c);
    const std::size_t D = c.subs.size();
    const std::size_t rounds = c.round[c.index.at(f)];
    const Aggregation agg = use_max ? Aggregation::Max : Aggregation::Sum;

    GnnModel n;
    n.input_dim = sig.size();
    for (std::size_t t = 1; t <= rounds; ++t) {
        const std::size_t in = t == 1 ? sig.size() : D;
        GnnLayer L{agg, 1, Activation::TruncatedReLU, zeros(in, D), zeros(in, D), Vector(D, Rational(0))};
        for (std::size_t s = 0; s < D; ++s) {
            const Formula& g = c.subs[s];
            switch (g.op()) {
            case Op::True: L.b[s] = 1; break;
            case Op::False: break;
            case Op::Prop:
                if (t == 1) L.A[*sig.index_of(g.name())][s] = 1;
                else L.A[s][s] = 1;
                break;
            case Op::And:
            case Op::Or:
                if (t == 1) break;
                L.A[c.index.at(g.left())][s] += 1;
                L.A[c.index.at(g.right())][s] += 1;
                if (g.op() == Op::And) L.b[s] = -1;
                break;
            case Op::Diamond:
                if (t == 1) break;
                L.C[c.index.at(g.child())][s] += 1;
                L.b[s] = -Rational(static_cast<long long>(g.grade()) - 1);
                break;
            case Op::Not: break;  // excluded above
            }
        }
        n.layers.push_back(std::move(L));
    }
    GnnLayer project{agg, 1, Activation::ReLU, zeros(D, 1), zeros(D, 1), Vector(1, Rational(0))};
    project.A[c.index.at(f)][0] = 1;
    n.layers.push_back(std::move(project));
    n.classifier = {Rational(1), false};
    n.validate();
    return n;
}

// ---- conversions ----

Signature default_feature_signature(std::size_t dim) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= dim; ++i) names.push_back("p" + std::to_string(i));
    return Signature(std::move(names));
}

PointedModel graph_to_kripke(const FeatureGraph& g, std::size_t point, const std::optional<Signature>& sig) {
    Signature s = sig ? *sig : default_feature_signature(g.dim());
    if (s.size() != g.dim()) throw DimensionError("signature size differs from graph dimension");
    if (point >= g.size()) throw ModelError("point out of range");
    std::vector<std::pair<WorldIndex, WorldIndex>> edges;
    std::vector<Label> labels;
    for (std::size_t v = 0; v < g.size(); ++v) {
        Label l = 0;
        for (std::size_t i = 0; i < g.dim(); ++i)
            if (g.features(v)[i]) l |= Label{1} << i;
        labels.push_back(l);
        for (std::size_t u : g.neighbours(v)) edges.emplace_back(v, u);
    }
    return PointedModel::from_indices(std::move(s), g.nodes(), edges, std::move(labels), point);
}

FeatureGraph kripke_to_graph(const PointedModel& m) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (WorldIndex u = 0; u < m.world_count(); ++u)
        for (WorldIndex v : m.successors(u)) {
            if (u == v) throw ModelError("self-loop at '" + m.id(u) + "' has no graph counterpart");
            if (!m.has_edge(v, u)) throw ModelError("relation is not symmetric at ('" + m.id(u) + "', '" + m.id(v) + "')");
            if (u < v) edges.emplace_back(m.id(u), m.id(v));
        }
    std::vector<std::vector<std::uint8_t>> features;
    for (WorldIndex w = 0; w < m.world_count(); ++w) {
        std::vector<std::uint8_t> f(m.signature().size(), 0);
        for (std::size_t p = 0; p < f.size(); ++p) f[p] = m.holds(p, w) ? 1 : 0;
        features.push_back(std::move(f));
    }
    return FeatureGraph(m.signature().size(), m.ids(), edges, features);
}

// ---- JSON ----

namespace {

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw ParseError("rational must be an integer or a \"p/q\" string");
}

Vector vector_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals");
    Vector v;
    for (const auto& e : j) v.push_back(rational_from_json(e));
    return v;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("expected a matrix");
    Matrix m;
    for (const auto& row : j) m.push_back(vector_from_json(row));
    return m;
}

nlohmann::json vector_to_json(const Vector& v) {
    auto j = nlohmann::json::array();
    for (const auto& x : v) j.push_back(rational_to_string(x));
    return j;
}

nlohmann::json matrix_to_json(const Matrix& m) {
    auto j = nlohmann::json::array();
    for (const auto& row : m) j.push_back(vector_to_json(row));
    return j;
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& what) {
    if (!j.is_object()) throw ParseError(what + " must be an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key)) throw ParseError("unknown key '" + key + "' in " + what);
}

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'");
    return *it;
}

} // namespace

GnnModel gnn_from_json(const nlohmann::json& j) {
    reject_unknown(j, {"input_dim", "layers", "classifier"}, "network");
    GnnModel n;
    const auto& dim = field(j, "input_dim");
    if (!dim.is_number_unsigned()) throw ParseError("input_dim must be a natural number");
    n.input_dim = dim.get<std::size_t>();
    const auto& layers = field(j, "layers");
    if (!layers.is_array()) throw ParseError("layers must be an array");
    for (const auto& jl : layers) {
        reject_unknown(jl, {"agg", "k", "act", "A", "C", "b"}, "layer");
        GnnLayer L;
        const auto& agg = field(jl, "agg");
        if (!agg.is_string()) throw ParseError("agg must be a string");
        const std::string a = agg.get<std::string>();
        if (a == "SUM") L.agg = Aggregation::Sum;
        else if (a == "MAX") L.agg = Aggregation::Max;
        else if (a == "MEAN") L.agg = Aggregation::Mean;
        else if (a == "MAXKSUM") L.agg = Aggregation::MaxKSum;
        else throw ParseError("unknown aggregation '" + a + "'");
        if (jl.contains("k")) {
            if (L.agg != Aggregation::MaxKSum) throw ParseError("k is only meaningful for MAXKSUM");
            if (!jl["k"].is_number_unsigned()) throw ParseError("k must be a natural number");
            L.k = jl["k"].get<std::size_t>();
        } else if (L.agg == Aggregation::MaxKSum) {
            throw ParseError("MAXKSUM needs k");
        }
        if (jl.contains("act")) {
            const auto& act = jl["act"];
            if (act == "relu") L.act = Activation::ReLU;
            else if (act == "trelu") L.act = Activation::TruncatedReLU;
            else throw ParseError("act must be \"relu\" or \"trelu\"");
        }
        L.A = matrix_from_json(field(jl, "A"));
        L.C = matrix_from_json(field(jl, "C"));
        L.b = vector_from_json(field(jl, "b"));
        n.layers.push_back(std::move(L));
    }
    const auto& cls = field(j, "classifier");
    reject_unknown(cls, {"threshold", "strict"}, "classifier");
    n.classifier.threshold = rational_from_json(field(cls, "threshold"));
    if (cls.contains("strict")) {
        if (!cls["strict"].is_boolean()) throw ParseError("strict must be a boolean");
        n.classifier.strict = cls["strict"].get<bool>();
    }
    n.validate();
    return n;
}

nlohmann::json gnn_to_json(const GnnModel& n) {
    nlohmann::json j;
    j["input_dim"] = n.input_dim;
    j["layers"] = nlohmann::json::array();
    for (const auto& L : n.layers) {
        nlohmann::json jl;
        switch (L.agg) {
        case Aggregation::Sum: jl["agg"] = "SUM"; break;
        case Aggregation::Max: jl["agg"] = "MAX"; break;
        case Aggregation::Mean: jl["agg"] = "MEAN"; break;
        case Aggregation::MaxKSum:
            jl["agg"] = "MAXKSUM";
            jl["k"] = L.k;
            break;
        }
        jl["act"] = L.act == Activation::ReLU ? "relu" : "trelu";
        jl["A"] = matrix_to_json(L.A);
        jl["C"] = matrix_to_json(L.C);
        jl["b"] = vector_to_json(L.b);
        j["layers"].push_back(std::move(jl));
    }
    j["classifier"] = {{"threshold", rational_to_string(n.classifier.threshold)}, {"strict", n.classifier.strict}};
    return j;
}

FeatureGraph graph_from_json(const nlohmann::json& j) {
    reject_unknown(j, {"dim", "nodes", "edges", "features"}, "graph");
    const auto& dim = field(j, "dim");
    if (!dim.is_number_unsigned()) throw ParseError("dim must be a natural number");
    const auto& nodes = field(j, "nodes");
    if (!nodes.is_array()) throw ParseError("nodes must be an array");
    std::vector<std::string> ids;
    for (const auto& n : nodes) {
        if (!n.is_string()) throw ParseError("node ids must be strings");
        ids.push_back(n.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> edges;
    const auto& jedges = field(j, "edges");
    if (!jedges.is_array()) throw ParseError("edges must be an array");
    for (const auto& e : jedges) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw ParseError("each edge must be a pair of node ids");
        edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    const auto& jf = field(j, "features");
    if (!jf.is_object()) throw ParseError("features must be an object");
    std::vector<std::vector<std::uint8_t>> features;
    for (const auto& id : ids) {
        auto it = jf.find(id);
        if (it == jf.end()) throw ParseError("missing features for node '" + id + "'");
        if (!it->is_array()) throw ParseError("features must be arrays");
        std::vector<std::uint8_t> f;
        for (const auto& x : *it) {
            if (!x.is_number_integer()) throw ParseError("features must be 0 or 1");
            const auto v = x.get<long long>();
            if (v != 0 && v != 1) throw ModelError("features must be 0 or 1");
            f.push_back(static_cast<std::uint8_t>(v));
        }
        features.push_back(std::move(f));
    }
    for (const auto& [key, _] : jf.items())
        if (std::find(ids.begin(), ids.end(), key) == ids.end()) throw ModelError("features for unknown node '" + key + "'");
    return FeatureGraph(dim.get<std::size_t>(), std::move(ids), edges, features);
}

nlohmann::json graph_to_json(const FeatureGraph& g) {
    nlohmann::json j;
    j["dim"] = g.dim();
    auto nodes = g.nodes();
    std::sort(nodes.begin(), nodes.end());
    j["nodes"] = nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t v = 0; v < g.size(); ++v)
        for (std::size_t u : g.neighbours(v))
            if (g.node(v) < g.node(u)) edges.emplace_back(g.node(v), g.node(u));
    std::sort(edges.begin(), edges.end());
    j["edges"] = nlohmann::json::array();
    for (const auto& [a, b] : edges) j["edges"].push_back({a, b});
    j["features"] = nlohmann::json::object();
    for (std::size_t v = 0; v < g.size(); ++v) j["features"][g.node(v)] = g.features(v);
    return j;
}

std::optional<Counterexample> check_preservation(const GnnModel& n, MorphismKind kind, std::size_t bound) {
    n.validate();
    EnumerateOptions opts;
    opts.signature = default_feature_signature(n.input_dim);
    opts.max_worlds = bound;
    opts.graphs_only = true;
    auto models = enumerate_models(opts);
    std::vector<bool> member;
    member.reserve(models.size());
    for (const auto& m : models) member.push_back(evaluate_gnn(n, kripke_to_graph(m)).verdict[m.point()]);
    return find_preservation_counterexample(models, member, kind);
}

} // namespace modalpres

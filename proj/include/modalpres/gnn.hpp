#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "modalpres/formula.hpp"
#include "modalpres/kripke.hpp"
#include "modalpres/morphism.hpp"
#include "modalpres/synthesis.hpp"

namespace modalpres {

using Rational = boost::multiprecision::cpp_rational;
using Vector = std::vector<Rational>;
// Row-major, rows = input dimension, columns = output dimension.
using Matrix = std::vector<Vector>;

// "p/q" or "p".
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& r);

enum class Aggregation { Sum, Max, MaxKSum, Mean };
// TruncatedReLU is min(max(0, x), 1).
enum class Activation { ReLU, TruncatedReLU };

struct GnnLayer {
    Aggregation agg = Aggregation::Sum;
    std::size_t k = 1;  // MaxKSum only
    Activation act = Activation::ReLU;
    Matrix A;  // self weight
    Matrix C;  // neighbour weight
    Vector b;

    std::size_t in_dim() const { return A.size(); }
    std::size_t out_dim() const { return b.size(); }
};

struct Classifier {
    Rational threshold = 0;
    bool strict = false;
};

struct GnnModel {
    std::size_t input_dim = 0;
    std::vector<GnnLayer> layers;
    Classifier classifier;

    std::size_t output_dim() const { return layers.empty() ? input_dim : layers.back().out_dim(); }
    // Throws DimensionError on inconsistent shapes.
    void validate() const;
};

// Undirected simple graph with binary node features.
class FeatureGraph {
public:
    FeatureGraph(std::size_t dim,
                 std::vector<std::string> nodes,
                 const std::vector<std::pair<std::string, std::string>>& edges,
                 const std::vector<std::vector<std::uint8_t>>& features);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    const std::string& node(std::size_t i) const { return nodes_.at(i); }
    const std::vector<std::string>& nodes() const noexcept { return nodes_; }
    std::optional<std::size_t> index_of(const std::string& id) const;
    const std::vector<std::size_t>& neighbours(std::size_t i) const { return adj_.at(i); }
    const std::vector<std::uint8_t>& features(std::size_t i) const { return features_.at(i); }

private:
    std::size_t dim_;
    std::vector<std::string> nodes_;
    std::vector<std::vector<std::size_t>> adj_;
    std::vector<std::vector<std::uint8_t>> features_;
};

struct GnnTrace {
    // states[l][v]: feature vector of node v after l layers (states[0] is the input).
    std::vector<std::vector<Vector>> states;
    std::vector<bool> verdict;
};

Vector aggregate(Aggregation agg, std::size_t k, const std::vector<Vector>& multiset, std::size_t dim);
GnnTrace evaluate_gnn(const GnnModel& n, const FeatureGraph& g);
bool classify_vector(const Classifier& c, const Vector& x);

// Is there an injection pairing every vector of a with a coordinatewise
// larger-or-equal vector of b?
bool multiset_leq(const std::vector<Vector>& a, const std::vector<Vector>& b);

struct MeanEvidence {
    std::vector<Vector> small;
    std::vector<Vector> large;
    Rational small_value;
    Rational large_value;
};

struct Certificate {
    bool certified = false;
    std::string reason;
    std::optional<MeanEvidence> mean_evidence;
};

// Sufficient syntactic test for monotonicity: non-negative A and C and a
// monotone aggregation (SUM, MAX, MAXKSUM).
Certificate positive_weight_certificate(const GnnModel& n);

// Network whose classifier accepts a node iff f holds there. Input
// coordinate i carries proposition sig[i]. With use_max the formula must
// be in ∃⁺ML and every layer aggregates with MAX.
GnnModel compile_formula_to_gnn(const Formula& f, const Signature& sig, bool use_max = false);

// Kripke view with propositions sig (default p1..pd): edges in both directions.
PointedModel graph_to_kripke(const FeatureGraph& g, std::size_t point, const std::optional<Signature>& sig = std::nullopt);
// Throws ModelError on an asymmetric relation or a self-loop.
FeatureGraph kripke_to_graph(const PointedModel& m);
Signature default_feature_signature(std::size_t dim);

GnnModel gnn_from_json(const nlohmann::json& j);
nlohmann::json gnn_to_json(const GnnModel& n);
FeatureGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const FeatureGraph& g);

// Over pointed graphs with at most `bound` nodes.
std::optional<Counterexample> check_preservation(const GnnModel& n, MorphismKind kind, std::size_t bound);

} // namespace modalpres

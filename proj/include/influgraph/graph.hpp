#ifndef INFLUGRAPH_GRAPH_HPP_
#define INFLUGRAPH_GRAPH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "influgraph/errors.hpp"

namespace influgraph {

using NodeId = std::uint32_t;

enum class ConstructKind { cognitive, non_cognitive, unspecified };

enum class Direction { in, out, all };

/// One ontology construct (a node). Ids are dense and contiguous in
/// insertion order; labels are unique case-sensitively.
struct Construct {
    NodeId id;
    std::string label;
    ConstructKind kind;
};

/// One merged directed influence edge. `provenance` holds the distinct
/// theory codes supporting the edge, sorted ascending.
struct InfluenceEdge {
    NodeId source;
    NodeId target;
    double weight;
    std::vector<int> provenance;
};

/// Directed, simple influence graph. Parallel edges are merged on insert;
/// the default weight is the number of distinct supporting theories.
/// Append-only: there is no deletion API, and analysis code treats a fully
/// built graph as immutable (safe to share across threads read-only).
class InfluenceGraph {
public:
    /// Adds a construct, or returns the existing id when the label is
    /// already present (the kind of an existing node is left untouched).
    NodeId add_construct(std::string_view label,
                         ConstructKind kind = ConstructKind::unspecified);

    /// Merges one supporting statement into the (source, target) edge.
    /// Creates the edge with weight 1 if absent. With a code: the code is
    /// added to the provenance set and weight becomes |provenance|.
    /// Without a code: weight is incremented by 1.
    /// Returns the updated edge weight.
    double merge_edge(NodeId source, NodeId target,
                      std::optional<int> theory_code = std::nullopt);

    /// Replaces the weight of an existing edge (used by reweighting passes).
    void set_weight(NodeId source, NodeId target, double weight);

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    const Construct& construct(NodeId id) const;
    const std::vector<Construct>& constructs() const { return nodes_; }
    std::optional<NodeId> find(std::string_view label) const;

    /// Neighbor ids in deterministic (insertion) order. Direction::all is
    /// the deduplicated union of in- and out-neighbors.
    std::vector<NodeId> neighbors(NodeId id, Direction direction) const;

    std::span<const InfluenceEdge> out_edges(NodeId id) const;
    /// In-neighbor ids (sources of edges pointing at `id`), insertion order.
    std::span<const NodeId> in_neighbors(NodeId id) const;

    const InfluenceEdge* find_edge(NodeId source, NodeId target) const;

    /// Visits every edge in deterministic order (by source id, then
    /// insertion order of that source's out-edges).
    template <typename Fn>
    void for_each_edge(Fn&& fn) const {
        for (const auto& edges : out_)
            for (const auto& e : edges)
                fn(e);
    }

    /// Edge-reversed copy: every (u,v,w) becomes (v,u,w). Nodes unchanged.
    InfluenceGraph transpose() const;

private:
    void check_node(NodeId id) const;

    std::vector<Construct> nodes_;
    std::unordered_map<std::string, NodeId> id_by_label_;
    std::vector<std::vector<InfluenceEdge>> out_;
    std::vector<std::vector<NodeId>> in_;
    std::size_t edge_count_ = 0;
};

/// Copy with node ids permuted: node `old_id` becomes `new_id_of_old[old_id]`.
/// `new_id_of_old` must be a permutation of 0..n-1.
InfluenceGraph relabeled(const InfluenceGraph& graph,
                         std::span<const NodeId> new_id_of_old);

/// Canonical form: nodes re-indexed in ascending label order and each
/// node's out-edges stored in ascending target order. Two graphs with the
/// same labels, edges, weights and provenance have identical canonical
/// forms regardless of construction order.
InfluenceGraph canonicalized(const InfluenceGraph& graph);

/// Copy with every edge weight set to 1 (provenance preserved).
InfluenceGraph unit_weights(const InfluenceGraph& graph);

/// Structural equality on the label level: same label set, same labeled
/// edges, same weights (exact) and provenance. Ignores id assignment.
bool same_labeled_graph(const InfluenceGraph& a, const InfluenceGraph& b);

} // namespace influgraph

#endif // INFLUGRAPH_GRAPH_HPP_

#include "influgraph/graph.hpp"

#include <algorithm>

namespace influgraph {

NodeId InfluenceGraph::add_construct(std::string_view label, ConstructKind kind) {
    if (label.empty())
        throw InvalidInputError("construct label must be non-empty");
    if (auto it = id_by_label_.find(std::string(label)); it != id_by_label_.end())
        return it->second;
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Construct{id, std::string(label), kind});
    id_by_label_.emplace(std::string(label), id);
    out_.emplace_back();
    in_.emplace_back();
    return id;
}

void InfluenceGraph::check_node(NodeId id) const {
    if (id >= nodes_.size())
        throw MissingNodeError("unknown node id " + std::to_string(id));
}

double InfluenceGraph::merge_edge(NodeId source, NodeId target,
                                  std::optional<int> theory_code) {
    check_node(source);
    check_node(target);
    if (source == target)
        throw SelfInfluenceError("self-influence edge rejected: " +
                                 nodes_[source].label);

    auto& edges = out_[source];
    auto it = std::find_if(edges.begin(), edges.end(),
                           [&](const InfluenceEdge& e) { return e.target == target; });
    if (it == edges.end()) {
        InfluenceEdge edge{source, target, 1.0, {}};
        if (theory_code)
            edge.provenance.push_back(*theory_code);
        edges.push_back(std::move(edge));
        in_[target].push_back(source);
        ++edge_count_;
        return edges.back().weight;
    }
    if (theory_code) {
        auto& codes = it->provenance;
        auto pos = std::lower_bound(codes.begin(), codes.end(), *theory_code);
        if (pos == codes.end() || *pos != *theory_code)
            codes.insert(pos, *theory_code);
        it->weight = static_cast<double>(codes.size());
    } else {
        it->weight += 1.0;
    }
    return it->weight;
}

void InfluenceGraph::set_weight(NodeId source, NodeId target, double weight) {
    check_node(source);
    check_node(target);
    if (weight <= 0.0)
        throw InvalidWeightError("edge weight must be positive");
    auto& edges = out_[source];
    auto it = std::find_if(edges.begin(), edges.end(),
                           [&](const InfluenceEdge& e) { return e.target == target; });
    if (it == edges.end())
        throw MissingNodeError("no edge " + nodes_[source].label + " -> " +
                               nodes_[target].label);
    it->weight = weight;
}

const Construct& InfluenceGraph::construct(NodeId id) const {
    check_node(id);
    return nodes_[id];
}

std::optional<NodeId> InfluenceGraph::find(std::string_view label) const {
    auto it = id_by_label_.find(std::string(label));
    if (it == id_by_label_.end())
        return std::nullopt;
    return it->second;
}

std::vector<NodeId> InfluenceGraph::neighbors(NodeId id, Direction direction) const {
    check_node(id);
    std::vector<NodeId> result;
    switch (direction) {
    case Direction::out:
        result.reserve(out_[id].size());
        for (const auto& e : out_[id])
            result.push_back(e.target);
        break;
    case Direction::in:
        result.assign(in_[id].begin(), in_[id].end());
        break;
    case Direction::all: {
        // Union in first-seen order: in-neighbors, then unseen out-neighbors.
        std::vector<bool> seen(nodes_.size(), false);
        for (NodeId u : in_[id]) {
            if (!seen[u]) {
                seen[u] = true;
                result.push_back(u);
            }
        }
        for (const auto& e : out_[id]) {
            if (!seen[e.target]) {
                seen[e.target] = true;
                result.push_back(e.target);
            }
        }
        break;
    }
    }
    return result;
}

std::span<const InfluenceEdge> InfluenceGraph::out_edges(NodeId id) const {
    check_node(id);
    return out_[id];
}

std::span<const NodeId> InfluenceGraph::in_neighbors(NodeId id) const {
    check_node(id);
    return in_[id];
}

const InfluenceEdge* InfluenceGraph::find_edge(NodeId source, NodeId target) const {
    check_node(source);
    check_node(target);
    const auto& edges = out_[source];
    auto it = std::find_if(edges.begin(), edges.end(),
                           [&](const InfluenceEdge& e) { return e.target == target; });
    return it == edges.end() ? nullptr : &*it;
}

InfluenceGraph InfluenceGraph::transpose() const {
    InfluenceGraph t;
    for (const auto& node : nodes_)
        t.add_construct(node.label, node.kind);
    for (const auto& edges : out_) {
        for (const auto& e : edges) {
            t.out_[e.target].push_back(
                InfluenceEdge{e.target, e.source, e.weight, e.provenance});
            t.in_[e.source].push_back(e.target);
            ++t.edge_count_;
        }
    }
    return t;
}

InfluenceGraph relabeled(const InfluenceGraph& graph,
                         std::span<const NodeId> new_id_of_old) {
    const std::size_t n = graph.node_count();
    if (new_id_of_old.size() != n)
        throw InvalidInputError("relabeling must cover every node");
    std::vector<bool> used(n, false);
    for (NodeId id : new_id_of_old) {
        if (id >= n || used[id])
            throw InvalidInputError("relabeling is not a permutation");
        used[id] = true;
    }

    std::vector<NodeId> old_of_new(n);
    for (NodeId old_id = 0; old_id < n; ++old_id)
        old_of_new[new_id_of_old[old_id]] = old_id;

    InfluenceGraph result;
    for (NodeId new_id = 0; new_id < n; ++new_id) {
        const auto& node = graph.construct(old_of_new[new_id]);
        result.add_construct(node.label, node.kind);
    }
    for (NodeId new_src = 0; new_src < n; ++new_src) {
        for (const auto& e : graph.out_edges(old_of_new[new_src])) {
            NodeId new_dst = new_id_of_old[e.target];
            result.merge_edge(new_src, new_dst);
            for (int code : e.provenance)
                result.merge_edge(new_src, new_dst, code);
            result.set_weight(new_src, new_dst, e.weight);
        }
    }
    return result;
}

InfluenceGraph canonicalized(const InfluenceGraph& graph) {
    const std::size_t n = graph.node_count();
    std::vector<NodeId> order(n);
    for (NodeId i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return graph.construct(a).label < graph.construct(b).label;
    });

    std::vector<NodeId> new_id_of_old(n);
    for (NodeId new_id = 0; new_id < n; ++new_id)
        new_id_of_old[order[new_id]] = new_id;

    InfluenceGraph result;
    for (NodeId old_id : order)
        result.add_construct(graph.construct(old_id).label,
                             graph.construct(old_id).kind);

    // Collect edges under new ids, then insert sorted by (source, target).
    std::vector<InfluenceEdge> edges;
    edges.reserve(graph.edge_count());
    graph.for_each_edge([&](const InfluenceEdge& e) {
        edges.push_back(InfluenceEdge{new_id_of_old[e.source],
                                      new_id_of_old[e.target], e.weight,
                                      e.provenance});
    });
    std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
        return a.source != b.source ? a.source < b.source : a.target < b.target;
    });
    for (const auto& e : edges) {
        result.merge_edge(e.source, e.target);
        for (int code : e.provenance)
            result.merge_edge(e.source, e.target, code);
        result.set_weight(e.source, e.target, e.weight);
    }
    return result;
}

InfluenceGraph unit_weights(const InfluenceGraph& graph) {
    InfluenceGraph result;
    for (const auto& node : graph.constructs())
        result.add_construct(node.label, node.kind);
    graph.for_each_edge([&](const InfluenceEdge& e) {
        result.merge_edge(e.source, e.target);
        for (int code : e.provenance)
            result.merge_edge(e.source, e.target, code);
        result.set_weight(e.source, e.target, 1.0);
    });
    return result;
}

bool same_labeled_graph(const InfluenceGraph& a, const InfluenceGraph& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count())
        return false;
    for (const auto& node : a.constructs())
        if (!b.find(node.label))
            return false;
    bool equal = true;
    a.for_each_edge([&](const InfluenceEdge& e) {
        if (!equal)
            return;
        auto src = b.find(a.construct(e.source).label);
        auto dst = b.find(a.construct(e.target).label);
        if (!src || !dst) {
            equal = false;
            return;
        }
        const InfluenceEdge* other = b.find_edge(*src, *dst);
        if (!other || other->weight != e.weight ||
            other->provenance != e.provenance)
            equal = false;
    });
    return equal;
}

} // namespace influgraph

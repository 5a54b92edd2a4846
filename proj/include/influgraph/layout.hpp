#ifndef INFLUGRAPH_LAYOUT_HPP_
#define INFLUGRAPH_LAYOUT_HPP_

#include <string>
#include <vector>

#include "influgraph/centrality.hpp"
#include "influgraph/graph.hpp"

namespace influgraph {

struct LayoutParams {
    int rings = 4;
    double base_radius_px = 60.0; // distance of the innermost ring from center
    double ring_gap_px = 90.0;
    double size_scale = 12.0;    // node radius = size_scale * log(1 + n * pagerank)
    double min_radius_px = 1.0;
};

struct NodeLayout {
    int ring;          // 0 = innermost
    double angle;      // radians in [0, 2*pi)
    double radius_px;  // node circle radius
    double x, y;       // canvas position
};

struct EdgeShade {
    NodeId source;
    NodeId target;
    double shade; // in [0,1], 1 = darkest (maximal weight)
};

struct LayoutSpec {
    std::vector<NodeLayout> nodes; // indexed by node id
    std::vector<EdgeShade> edges;  // sorted by (source label, target label)
    double width = 0.0, height = 0.0;
};

/// Concentric-ring placement: nodes are banded into `rings` quantile bands
/// of betweenness (highest band innermost, ties never split), spaced at
/// equal angles within a ring in label order. Node radius grows with
/// log-scaled PageRank; edge shade is weight / max weight.
LayoutSpec multi_circle_layout(const InfluenceGraph& graph,
                               const CentralityResult& betweenness,
                               const CentralityResult& pagerank,
                               const LayoutParams& params = {});

/// SVG 1.1 subset (line, circle, text). Deterministic: nodes by label,
/// edges by (source, target) label. `comment` becomes an XML comment.
std::string render_svg(const LayoutSpec& layout, const InfluenceGraph& graph,
                       const std::string& comment = {});

/// Graphviz DOT with weight attributes; per-node score attributes when given.
std::string export_dot(const InfluenceGraph& graph,
                       const CentralityResult* scores = nullptr,
                       const std::string& comment = {});

/// JSON position file: canvas, per-node ring/angle/x/y/radius, per-edge
/// weight/shade. `provenance` becomes a top-level string field when set.
std::string export_json(const LayoutSpec& layout, const InfluenceGraph& graph,
                        const std::string& provenance = {});

/// Edge-list CSV in the ingest round-trip format: provenance codes joined
/// by `;`, codeless weight carried as row multiplicity.
std::string write_edge_csv(const InfluenceGraph& graph,
                           const std::string& comment = {});

} // namespace influgraph

#endif // INFLUGRAPH_LAYOUT_HPP_

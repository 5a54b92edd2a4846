#include "influgraph/layout.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "influgraph/errors.hpp"

namespace influgraph {

namespace {

// Shortest round-trip decimal form; deterministic across runs.
std::string fmt(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

// Fixed 2-decimal form for pixel geometry.
std::string fmt_px(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return std::string(buf);
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string dot_quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<NodeId> ids_by_label(const InfluenceGraph& graph) {
    std::vector<NodeId> order(graph.node_count());
    for (NodeId i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return graph.construct(a).label < graph.construct(b).label;
    });
    return order;
}

std::vector<const InfluenceEdge*> edges_by_label(const InfluenceGraph& graph) {
    std::vector<const InfluenceEdge*> edges;
    edges.reserve(graph.edge_count());
    graph.for_each_edge([&](const InfluenceEdge& e) { edges.push_back(&e); });
    std::sort(edges.begin(), edges.end(),
              [&](const InfluenceEdge* a, const InfluenceEdge* b) {
                  const auto& sa = graph.construct(a->source).label;
                  const auto& sb = graph.construct(b->source).label;
                  if (sa != sb)
                      return sa < sb;
                  return graph.construct(a->target).label <
                         graph.construct(b->target).label;
              });
    return edges;
}

} // namespace

LayoutSpec multi_circle_layout(const InfluenceGraph& graph,
                               const CentralityResult& betweenness,
                               const CentralityResult& pagerank,
                               const LayoutParams& params) {
    const std::size_t n = graph.node_count();
    if (betweenness.scores.size() != n || pagerank.scores.size() != n)
        throw InconsistentInputError(
            "layout inputs must cover the graph's node set");
    if (params.rings < 1)
        throw InvalidParameterError("rings must be >= 1");

    LayoutSpec layout;
    layout.nodes.resize(n);

    const double margin = 3.0 * params.size_scale + 24.0;
    const double extent = params.base_radius_px +
                          (params.rings - 1) * params.ring_gap_px + margin;
    layout.width = layout.height = 2.0 * extent;
    if (n == 0)
        return layout;

    // Band nodes into betweenness quantiles; a tie group always stays in
    // the ring of its first member.
    std::vector<NodeId> order(n);
    for (NodeId i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (betweenness.scores[a] != betweenness.scores[b])
            return betweenness.scores[a] > betweenness.scores[b];
        return graph.construct(a).label < graph.construct(b).label;
    });
    std::vector<std::vector<NodeId>> ring_members(params.rings);
    int ring = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 &&
            betweenness.scores[order[i]] != betweenness.scores[order[i - 1]])
            ring = static_cast<int>(i * static_cast<std::size_t>(params.rings) / n);
        layout.nodes[order[i]].ring = ring;
        ring_members[ring].push_back(order[i]);
    }

    const double cx = layout.width / 2.0, cy = layout.height / 2.0;
    const double two_pi = 2.0 * std::numbers::pi;
    for (int r = 0; r < params.rings; ++r) {
        auto& members = ring_members[r];
        std::sort(members.begin(), members.end(), [&](NodeId a, NodeId b) {
            return graph.construct(a).label < graph.construct(b).label;
        });
        const double dist = params.base_radius_px + r * params.ring_gap_px;
        for (std::size_t j = 0; j < members.size(); ++j) {
            NodeLayout& nl = layout.nodes[members[j]];
            nl.angle = two_pi * static_cast<double>(j) /
                       static_cast<double>(members.size());
            nl.x = cx + dist * std::cos(nl.angle);
            nl.y = cy + dist * std::sin(nl.angle);
        }
    }

    for (NodeId v = 0; v < n; ++v) {
        double scaled = params.size_scale *
                        std::log1p(static_cast<double>(n) * pagerank.scores[v]);
        layout.nodes[v].radius_px = std::max(scaled, params.min_radius_px);
    }

    double max_weight = 0.0;
    graph.for_each_edge([&](const InfluenceEdge& e) {
        max_weight = std::max(max_weight, e.weight);
    });
    for (const InfluenceEdge* e : edges_by_label(graph))
        layout.edges.push_back(
            EdgeShade{e->source, e->target, e->weight / max_weight});
    return layout;
}

std::string render_svg(const LayoutSpec& layout, const InfluenceGraph& graph,
                       const std::string& comment) {
    if (layout.nodes.size() != graph.node_count())
        throw InconsistentInputError("layout does not cover the graph");

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (!comment.empty())
        svg += "<!-- " + xml_escape(comment) + " -->\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           fmt_px(layout.width) + "\" height=\"" + fmt_px(layout.height) +
           "\" viewBox=\"0 0 " + fmt_px(layout.width) + " " +
           fmt_px(layout.height) + "\">\n";

    for (const EdgeShade& e : layout.edges) {
        const NodeLayout& a = layout.nodes[e.source];
        const NodeLayout& b = layout.nodes[e.target];
        svg += "  <line x1=\"" + fmt_px(a.x) + "\" y1=\"" + fmt_px(a.y) +
               "\" x2=\"" + fmt_px(b.x) + "\" y2=\"" + fmt_px(b.y) +
               "\" stroke=\"#1f2430\" stroke-opacity=\"" + fmt(e.shade) +
               "\"/>\n";
    }
    for (NodeId v : ids_by_label(graph)) {
        const NodeLayout& nl = layout.nodes[v];
        const std::string& label = graph.construct(v).label;
        svg += "  <circle cx=\"" + fmt_px(nl.x) + "\" cy=\"" + fmt_px(nl.y) +
               "\" r=\"" + fmt_px(nl.radius_px) +
               "\" fill=\"#4878a8\" fill-opacity=\"0.85\"/>\n";
        svg += "  <text x=\"" + fmt_px(nl.x) + "\" y=\"" +
               fmt_px(nl.y - nl.radius_px - 2.0) +
               "\" font-size=\"9\" text-anchor=\"middle\">" +
               xml_escape(label) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

std::string export_dot(const InfluenceGraph& graph,
                       const CentralityResult* scores,
                       const std::string& comment) {
    if (scores && scores->scores.size() != graph.node_count())
        throw InconsistentInputError("scores do not cover the graph");
    std::string dot;
    if (!comment.empty())
        dot += "// " + comment + "\n";
    dot += "digraph influence {\n";
    for (NodeId v : ids_by_label(graph)) {
        dot += "  " + dot_quote(graph.construct(v).label);
        if (scores)
            dot += " [score=" + fmt(scores->scores[v]) + "]";
        dot += ";\n";
    }
    for (const InfluenceEdge* e : edges_by_label(graph)) {
        dot += "  " + dot_quote(graph.construct(e->source).label) + " -> " +
               dot_quote(graph.construct(e->target).label) + " [weight=" +
               fmt(e->weight) + "];\n";
    }
    dot += "}\n";
    return dot;
}

std::string export_json(const LayoutSpec& layout, const InfluenceGraph& graph,
                        const std::string& provenance) {
    if (layout.nodes.size() != graph.node_count())
        throw InconsistentInputError("layout does not cover the graph");

    nlohmann::ordered_json doc;
    if (!provenance.empty())
        doc["provenance"] = provenance;
    doc["canvas"] = {{"width", layout.width}, {"height", layout.height}};

    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (NodeId v : ids_by_label(graph)) {
        const NodeLayout& nl = layout.nodes[v];
        nodes.push_back({{"label", graph.construct(v).label},
                         {"ring", nl.ring},
                         {"angle", nl.angle},
                         {"x", nl.x},
                         {"y", nl.y},
                         {"radius_px", nl.radius_px}});
    }
    doc["nodes"] = std::move(nodes);

    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    // layout.edges is already (source label, target label) sorted.
    for (const EdgeShade& e : layout.edges) {
        const InfluenceEdge* edge = graph.find_edge(e.source, e.target);
        edges.push_back({{"source", graph.construct(e.source).label},
                         {"target", graph.construct(e.target).label},
                         {"weight", edge ? edge->weight : 0.0},
                         {"shade", e.shade}});
    }
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

std::string write_edge_csv(const InfluenceGraph& graph,
                           const std::string& comment) {
    std::string csv;
    if (!comment.empty())
        csv += "# " + comment + "\n";
    csv += "source,relation,target,theory\n";
    for (const InfluenceEdge* e : edges_by_label(graph)) {
        const std::string& src = graph.construct(e->source).label;
        const std::string& dst = graph.construct(e->target).label;
        std::string base = src + ",influences," + dst;
        long long rounded = std::llround(e->weight);
        if (e->provenance.empty()) {
            long long copies = std::max(1LL, rounded);
            for (long long i = 0; i < copies; ++i)
                csv += base + "\n";
        } else {
            std::string codes;
            for (std::size_t i = 0; i < e->provenance.size(); ++i) {
                if (i)
                    codes += ';';
                codes += std::to_string(e->provenance[i]);
            }
            csv += base + "," + codes + "\n";
            for (long long i = static_cast<long long>(e->provenance.size());
                 i < rounded; ++i)
                csv += base + "\n";
        }
    }
    return csv;
}

} // namespace influgraph

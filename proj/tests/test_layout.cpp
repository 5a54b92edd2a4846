#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <json.hpp>
#include <string>

#include "influgraph/layout.hpp"
#include "influgraph/ranking.hpp"
#include "oracles.hpp"

using namespace influgraph;
using doctest::Approx;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& of) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(of, pos)) != std::string::npos) {
        ++count;
        pos += of.size();
    }
    return count;
}

struct SuiteResults {
    CentralityResult betweenness;
    CentralityResult pagerank;
};

SuiteResults layout_inputs(const InfluenceGraph& g) {
    return {betweenness_scores(g, false), pagerank_scores(g, false, {})};
}

} // namespace

TEST_CASE("multi_circle_layout bands nodes by betweenness quantiles") {
    SUBCASE("four distinct values over two rings") {
        InfluenceGraph g;
        for (const char* l : {"A", "B", "C", "D"})
            g.add_construct(l);
        CentralityResult bw = CentralityResult{
            Measure::betweenness, {4.0, 3.0, 2.0, 1.0}, true, 0, 0.0};
        CentralityResult pr = CentralityResult{
            Measure::pagerank, {0.25, 0.25, 0.25, 0.25}, true, 0, 0.0};
        LayoutParams params;
        params.rings = 2;
        LayoutSpec layout = multi_circle_layout(g, bw, pr, params);
        CHECK(layout.nodes[0].ring == 0);
        CHECK(layout.nodes[1].ring == 0);
        CHECK(layout.nodes[2].ring == 1);
        CHECK(layout.nodes[3].ring == 1);
    }
    SUBCASE("uniform pagerank gives equal radii") {
        InfluenceGraph g;
        g.add_construct("A");
        g.add_construct("B");
        g.add_construct("C");
        g.merge_edge(0, 1);
        g.merge_edge(1, 2);
        g.merge_edge(2, 0);
        SuiteResults in = layout_inputs(g);
        LayoutSpec layout = multi_circle_layout(g, in.betweenness, in.pagerank);
        CHECK(layout.nodes[0].radius_px == Approx(layout.nodes[1].radius_px));
        CHECK(layout.nodes[1].radius_px == Approx(layout.nodes[2].radius_px));
    }
    SUBCASE("path interior node sits alone in the innermost occupied ring") {
        InfluenceGraph g;
        g.add_construct("A");
        g.add_construct("B");
        g.add_construct("C");
        g.merge_edge(0, 1);
        g.merge_edge(1, 2);
        SuiteResults in = layout_inputs(g);
        LayoutSpec layout = multi_circle_layout(g, in.betweenness, in.pagerank);
        CHECK(layout.nodes[1].ring == 0);
        CHECK(layout.nodes[0].ring > 0);
        CHECK(layout.nodes[2].ring > 0);
    }
    SUBCASE("mismatched inputs are rejected") {
        InfluenceGraph g;
        g.add_construct("A");
        CentralityResult wrong{Measure::betweenness, {1.0, 2.0}, true, 0, 0.0};
        CentralityResult pr{Measure::pagerank, {1.0}, true, 0, 0.0};
        CHECK_THROWS_AS(multi_circle_layout(g, wrong, pr),
                        InconsistentInputError);
        LayoutParams bad;
        bad.rings = 0;
        CentralityResult ok{Measure::betweenness, {1.0}, true, 0, 0.0};
        CHECK_THROWS_AS(multi_circle_layout(g, ok, pr, bad),
                        InvalidParameterError);
    }
}

TEST_CASE("layout invariants hold on random graphs") {
    for (std::uint32_t seed = 1; seed <= 60; ++seed) {
        InfluenceGraph g = oracle::random_graph(seed, 2, 10, seed % 2 == 0);
        SuiteResults in = layout_inputs(g);
        LayoutSpec layout = multi_circle_layout(g, in.betweenness, in.pagerank);

        const std::size_t n = g.node_count();
        for (NodeId u = 0; u < n; ++u) {
            CHECK(layout.nodes[u].angle >= 0.0);
            CHECK(layout.nodes[u].angle < 2.0 * 3.14159265358979324);
            CHECK(layout.nodes[u].radius_px > 0.0);
            for (NodeId v = 0; v < n; ++v) {
                if (layout.nodes[u].ring < layout.nodes[v].ring)
                    CHECK(in.betweenness.scores[u] >= in.betweenness.scores[v]);
                if (in.pagerank.scores[u] > in.pagerank.scores[v])
                    CHECK(layout.nodes[u].radius_px > layout.nodes[v].radius_px);
                if (in.pagerank.scores[u] == in.pagerank.scores[v])
                    CHECK(layout.nodes[u].radius_px ==
                          layout.nodes[v].radius_px);
            }
        }

        double max_weight = 0.0, max_shade = 0.0;
        g.for_each_edge([&](const InfluenceEdge& e) {
            max_weight = std::max(max_weight, e.weight);
        });
        for (const EdgeShade& e : layout.edges) {
            CHECK(e.shade > 0.0);
            CHECK(e.shade <= 1.0);
            max_shade = std::max(max_shade, e.shade);
            const InfluenceEdge* edge = g.find_edge(e.source, e.target);
            if (edge->weight == max_weight)
                CHECK(e.shade == 1.0);
        }
        CHECK(max_shade == 1.0);
        // shade monotone in weight
        for (const EdgeShade& a : layout.edges)
            for (const EdgeShade& b : layout.edges) {
                double wa = g.find_edge(a.source, a.target)->weight;
                double wb = g.find_edge(b.source, b.target)->weight;
                if (wa < wb)
                    CHECK(a.shade <= b.shade);
            }
    }
}

TEST_CASE("render_svg emits well-formed deterministic SVG") {
    SUBCASE("single node renders one circle and no lines") {
        InfluenceGraph g;
        g.add_construct("only");
        CentralityResult bw{Measure::betweenness, {0.0}, true, 0, 0.0};
        CentralityResult pr{Measure::pagerank, {1.0}, true, 0, 0.0};
        LayoutSpec layout = multi_circle_layout(g, bw, pr);
        std::string svg = render_svg(layout, g);
        CHECK(count_occurrences(svg, "<circle") == 1);
        CHECK(count_occurrences(svg, "<line") == 0);
        CHECK(oracle::xml_well_formed(svg));
    }
    SUBCASE("maximal-weight edge renders with full opacity") {
        InfluenceGraph g;
        g.add_construct("A");
        g.add_construct("B");
        g.add_construct("C");
        g.merge_edge(0, 1, 28);
        g.merge_edge(0, 1, 49); // weight 2: the darkest edge
        g.merge_edge(1, 2, 35); // weight 1
        SuiteResults in = layout_inputs(g);
        LayoutSpec layout = multi_circle_layout(g, in.betweenness, in.pagerank);
        std::string svg = render_svg(layout, g);
        CHECK(count_occurrences(svg, "stroke-opacity=\"1\"") == 1);
        CHECK(count_occurrences(svg, "stroke-opacity=\"0.5\"") == 1);
    }
    SUBCASE("re-render is byte-identical and labels are escaped") {
        InfluenceGraph g;
        g.add_construct("R&D <Lab>");
        g.add_construct("\"Ops\"");
        g.merge_edge(0, 1, 28);
        SuiteResults in = layout_inputs(g);
        LayoutSpec layout = multi_circle_layout(g, in.betweenness, in.pagerank);
        std::string first = render_svg(layout, g, "run 1 of 2");
        std::string second = render_svg(layout, g, "run 1 of 2");
        CHECK(first == second);
        std::string why;
        CHECK_MESSAGE(oracle::xml_well_formed(first, &why), why);
        CHECK(first.find("R&amp;D &lt;Lab&gt;") != std::string::npos);
    }
    SUBCASE("random graphs always yield well-formed XML") {
        for (std::uint32_t seed = 100; seed < 130; ++seed) {
            InfluenceGraph g = oracle::random_graph(seed);
            SuiteResults in = layout_inputs(g);
            LayoutSpec layout =
                multi_circle_layout(g, in.betweenness, in.pagerank);
            std::string why;
            CHECK_MESSAGE(oracle::xml_well_formed(render_svg(layout, g), &why),
                          why);
        }
    }
}

TEST_CASE("the XML checker rejects malformed documents") {
    CHECK(oracle::xml_well_formed("<a><b/></a>"));
    CHECK(oracle::xml_well_formed("<?xml version=\"1.0\"?>\n<a x=\"1\">t</a>"));
    CHECK_FALSE(oracle::xml_well_formed(""));
    CHECK_FALSE(oracle::xml_well_formed("<a><b></a></b>")); // crossed nesting
    CHECK_FALSE(oracle::xml_well_formed("<a>"));            // unclosed
    CHECK_FALSE(oracle::xml_well_formed("<a x=1/>"));       // unquoted attr
    CHECK_FALSE(oracle::xml_well_formed("<a>&bogus;</a>")); // unknown entity
    CHECK_FALSE(oracle::xml_well_formed("<a/><b/>"));       // two roots
    CHECK_FALSE(oracle::xml_well_formed("text only"));
    CHECK_FALSE(oracle::xml_well_formed("<a x=\"<\"/>"));   // '<' in attr
}

TEST_CASE("export_dot lists nodes and weighted edges deterministically") {
    InfluenceGraph g;
    g.add_construct("Beta");
    g.add_construct("Alpha");
    g.merge_edge(0, 1, 28);
    g.merge_edge(0, 1, 49);
    CentralityResult pr = pagerank_scores(g, false, {});
    std::string dot = export_dot(g, &pr, "header");
    CHECK(dot.find("// header") == 0);
    CHECK(dot.find("digraph influence {") != std::string::npos);
    CHECK(dot.find("\"Beta\" -> \"Alpha\" [weight=2]") != std::string::npos);
    // nodes listed in label order: Alpha before Beta
    CHECK(dot.find("\"Alpha\"") < dot.find("\"Beta\""));
    CHECK(dot == export_dot(g, &pr, "header"));
    CHECK(export_dot(g).find("score=") == std::string::npos);
}

TEST_CASE("export_json carries positions, weights and shades") {
    InfluenceGraph g;
    g.add_construct("A");
    g.add_construct("B");
    g.merge_edge(0, 1, 28);
    SuiteResults in = layout_inputs(g);
    LayoutSpec layout = multi_circle_layout(g, in.betweenness, in.pagerank);
    std::string text = export_json(layout, g, "prov");
    nlohmann::json doc = nlohmann::json::parse(text);
    CHECK(doc["provenance"] == "prov");
    CHECK(doc["canvas"]["width"].get<double>() > 0.0);
    REQUIRE(doc["nodes"].size() == 2);
    CHECK(doc["nodes"][0]["label"] == "A");
    CHECK(doc["nodes"][0].contains("x"));
    CHECK(doc["nodes"][0].contains("ring"));
    REQUIRE(doc["edges"].size() == 1);
    CHECK(doc["edges"][0]["weight"] == 1.0);
    CHECK(doc["edges"][0]["shade"] == 1.0);
    CHECK(text == export_json(layout, g, "prov"));
}

TEST_CASE("write_edge_csv formats provenance and handles the empty graph") {
    SUBCASE("codes joined by semicolons") {
        InfluenceGraph g;
        g.add_construct("A");
        g.add_construct("B");
        g.merge_edge(0, 1, 28);
        g.merge_edge(0, 1, 49);
        std::string csv = write_edge_csv(g);
        CHECK(csv == "source,relation,target,theory\nA,influences,B,28;49\n");
    }
    SUBCASE("empty graph writes the header only") {
        InfluenceGraph g;
        g.add_construct("A");
        CHECK(write_edge_csv(g) == "source,relation,target,theory\n");
    }
    SUBCASE("rows sorted by source then target label") {
        InfluenceGraph g;
        g.add_construct("Z");
        g.add_construct("A");
        g.add_construct("M");
        g.merge_edge(0, 1, 5);
        g.merge_edge(1, 2, 5);
        std::string csv = write_edge_csv(g);
        CHECK(csv.find("A,influences,M") < csv.find("Z,influences,A"));
    }
}

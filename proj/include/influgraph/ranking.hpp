#ifndef INFLUGRAPH_RANKING_HPP_
#define INFLUGRAPH_RANKING_HPP_

#include <span>
#include <vector>

#include "influgraph/centrality.hpp"
#include "influgraph/graph.hpp"

namespace influgraph {

struct RankEntry {
    NodeId node;
    double score;
    double rank; // fractional: tied scores share the average spanned rank
};

/// One measure's ordered ranking. Entries are sorted by descending score;
/// tied scores are displayed in ascending label order.
struct RankTable {
    Measure measure;
    std::vector<RankEntry> entries;
};

RankTable rank(const InfluenceGraph& graph, const CentralityResult& result);

struct TopK {
    std::vector<NodeId> ids;
    bool overflow = false; // a tie group straddled the k boundary
};

/// First k entries in display order; a tie group straddling the boundary is
/// included whole (the list may then exceed k, flagged via overflow).
TopK top_k(const RankTable& table, int k);

enum class AggregationMethod { appearance_count, borda };

struct AggregateRow {
    NodeId node;
    int appearances;     // measures whose top-k contains this node
    double mean_rank;    // averaged over all measures
    double borda_points; // sum of (n - fractional rank) over all measures
};

/// Cross-measure aggregate over every node. Row order depends on the
/// method: appearance_count sorts by (appearances desc, mean_rank asc,
/// label asc); borda sorts by (borda_points desc, mean_rank asc, label asc).
struct AggregateRanking {
    int k;
    AggregationMethod method;
    std::vector<AggregateRow> rows;
};

/// Top-k membership counting with mean-rank tie-break.
AggregateRanking aggregate(const InfluenceGraph& graph,
                           std::span<const RankTable> tables, int k);

/// Borda-count alternative over the same tables.
AggregateRanking borda(const InfluenceGraph& graph,
                       std::span<const RankTable> tables, int k = 10);

} // namespace influgraph

#endif // INFLUGRAPH_RANKING_HPP_

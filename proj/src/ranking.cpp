#include "influgraph/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "influgraph/errors.hpp"

namespace influgraph {

RankTable rank(const InfluenceGraph& graph, const CentralityResult& result) {
    if (result.scores.size() != graph.node_count())
        throw InconsistentInputError("score vector does not cover the node set");
    for (double s : result.scores)
        if (!std::isfinite(s))
            throw InvalidInputError("scores must be finite");

    RankTable table{result.measure, {}};
    table.entries.reserve(result.scores.size());
    for (NodeId v = 0; v < result.scores.size(); ++v)
        table.entries.push_back(RankEntry{v, result.scores[v], 0.0});

    std::sort(table.entries.begin(), table.entries.end(),
              [&](const RankEntry& a, const RankEntry& b) {
                  if (a.score != b.score)
                      return a.score > b.score;
                  return graph.construct(a.node).label <
                         graph.construct(b.node).label;
              });

    // Fractional ranks: a tie group spanning positions i..j-1 (1-based
    // ranks i+1..j) shares the average (i+1 + j) / 2.
    std::size_t i = 0;
    while (i < table.entries.size()) {
        std::size_t j = i + 1;
        while (j < table.entries.size() &&
               table.entries[j].score == table.entries[i].score)
            ++j;
        double shared = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t p = i; p < j; ++p)
            table.entries[p].rank = shared;
        i = j;
    }
    return table;
}

TopK top_k(const RankTable& table, int k) {
    if (k < 1)
        throw InvalidInputError("k must be >= 1");
    TopK result;
    const std::size_t n = table.entries.size();
    std::size_t cut = std::min(static_cast<std::size_t>(k), n);
    std::size_t end = cut;
    while (end < n && table.entries[end].score == table.entries[cut - 1].score)
        ++end;
    if (end > cut)
        result.overflow = true;
    result.ids.reserve(end);
    for (std::size_t p = 0; p < end; ++p)
        result.ids.push_back(table.entries[p].node);
    return result;
}

namespace {

AggregateRanking aggregate_impl(const InfluenceGraph& graph,
                                std::span<const RankTable> tables, int k,
                                AggregationMethod method) {
    if (k < 1)
        throw InvalidInputError("k must be >= 1");
    const std::size_t n = graph.node_count();
    for (const RankTable& t : tables)
        if (t.entries.size() != n)
            throw InconsistentInputError(
                "rank tables must cover the same node set");

    AggregateRanking result{k, method, {}};
    result.rows.reserve(n);
    for (NodeId v = 0; v < n; ++v)
        result.rows.push_back(AggregateRow{v, 0, 0.0, 0.0});

    for (const RankTable& t : tables) {
        for (const RankEntry& e : t.entries) {
            result.rows[e.node].mean_rank += e.rank;
            result.rows[e.node].borda_points +=
                static_cast<double>(n) - e.rank;
        }
        TopK top = top_k(t, k);
        for (NodeId v : top.ids)
            result.rows[v].appearances += 1;
    }
    if (!tables.empty())
        for (AggregateRow& row : result.rows)
            row.mean_rank /= static_cast<double>(tables.size());

    auto label = [&](const AggregateRow& r) -> const std::string& {
        return graph.construct(r.node).label;
    };
    if (method == AggregationMethod::appearance_count) {
        std::sort(result.rows.begin(), result.rows.end(),
                  [&](const AggregateRow& a, const AggregateRow& b) {
                      if (a.appearances != b.appearances)
                          return a.appearances > b.appearances;
                      if (a.mean_rank != b.mean_rank)
                          return a.mean_rank < b.mean_rank;
                      return label(a) < label(b);
                  });
    } else {
        std::sort(result.rows.begin(), result.rows.end(),
                  [&](const AggregateRow& a, const AggregateRow& b) {
                      if (a.borda_points != b.borda_points)
                          return a.borda_points > b.borda_points;
                      if (a.mean_rank != b.mean_rank)
                          return a.mean_rank < b.mean_rank;
                      return label(a) < label(b);
                  });
    }
    return result;
}

} // namespace

AggregateRanking aggregate(const InfluenceGraph& graph,
                           std::span<const RankTable> tables, int k) {
    return aggregate_impl(graph, tables, k, AggregationMethod::appearance_count);
}

AggregateRanking borda(const InfluenceGraph& graph,
                       std::span<const RankTable> tables, int k) {
    return aggregate_impl(graph, tables, k, AggregationMethod::borda);
}

} // namespace influgraph

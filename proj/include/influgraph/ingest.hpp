#ifndef INFLUGRAPH_INGEST_HPP_
#define INFLUGRAPH_INGEST_HPP_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "influgraph/graph.hpp"

namespace influgraph {

struct ParseOptions {
    bool has_header = false;
    bool drop_self_loops = false;
};

struct ParseWarning {
    int line; // 1-based
    std::string message;
    bool dropped;          // true when the line was discarded
    bool self_loop = false; // dropped because source == target
};

struct ParseReport {
    InfluenceGraph graph;
    std::vector<ParseWarning> warnings;
    int dropped_lines = 0;
};

/// Parses edge-list CSV: `source,relation,target[,theory]`. The relation
/// must be the literal `influences` (case-insensitive); other relations are
/// warned about and dropped. The theory field may carry several codes
/// joined by `;`. Node ids are assigned in first-appearance order.
/// Throws EmptyInputError when no row has a usable shape.
ParseReport parse_edge_csv(std::string_view text, const ParseOptions& options = {});

/// Parses a one-statement-per-line triple subset: `<IRI> <IRI> <IRI> .`
/// The predicate's local name (after the last `#` or `/`) must be
/// `influences` (case-insensitive); construct labels are the subject/object
/// local names. `#` comment lines and blank lines are skipped.
ParseReport parse_triples(std::string_view text);

struct Violation {
    std::string rule;    // V1..V5
    std::string element; // offending label / edge / code
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool is_valid() const { return violations.empty(); }
};

/// Structural validation:
///   V1 unique labels, V2 no self-loops, V3 provenance codes all known,
///   V4 no isolated nodes (unless allowed), V5 weight == |provenance|
///   wherever provenance is non-empty.
ValidationReport validate(const InfluenceGraph& graph,
                          const std::set<int>& known_theory_codes,
                          bool allow_isolated = false);

/// The 20 source-theory codes of the Cybonto influence core.
const std::set<int>& core_theory_codes();

} // namespace influgraph

#endif // INFLUGRAPH_INGEST_HPP_

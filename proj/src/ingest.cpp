#include "influgraph/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "influgraph/errors.hpp"

namespace influgraph {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(s.substr(start));
            break;
        }
        fields.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::optional<int> parse_int(std::string_view s) {
    int value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        return std::nullopt;
    return value;
}

// Visits lines with 1-based numbers; tolerates CRLF and a missing final LF.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    int number = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t pos = text.find('\n', start);
        std::string_view line = pos == std::string_view::npos
                                    ? text.substr(start)
                                    : text.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        fn(++number, line);
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
}

void warn(ParseReport& report, int line, std::string message, bool dropped) {
    report.warnings.push_back(ParseWarning{line, std::move(message), dropped});
    if (dropped)
        ++report.dropped_lines;
}

} // namespace

ParseReport parse_edge_csv(std::string_view text, const ParseOptions& options) {
    ParseReport report;
    int usable_rows = 0;

    bool header_pending = options.has_header;
    bool first_data_row = true;
    for_each_line(text, [&](int number, std::string_view line) {
        std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') // blank or comment
            return;
        if (header_pending) { // first non-comment line is the column header
            header_pending = false;
            first_data_row = false;
            return;
        }
        if (first_data_row) { // the canonical header is recognized on its own
            first_data_row = false;
            if (iequals(body, "source,relation,target,theory") ||
                iequals(body, "source,relation,target"))
                return;
        }
        auto fields = split(line, ',');
        if (fields.size() < 3 || fields.size() > 4) {
            warn(report, number, "expected source,relation,target[,theory]", true);
            return;
        }
        std::string_view source = trim(fields[0]);
        std::string_view relation = trim(fields[1]);
        std::string_view target = trim(fields[2]);
        if (source.empty() || target.empty()) {
            warn(report, number, "empty construct label", true);
            return;
        }
        std::vector<int> codes;
        if (fields.size() == 4) {
            std::string_view raw = trim(fields[3]);
            if (!raw.empty()) {
                bool bad = false;
                for (std::string_view part : split(raw, ';')) {
                    auto code = parse_int(trim(part));
                    if (!code) {
                        bad = true;
                        break;
                    }
                    codes.push_back(*code);
                }
                if (bad) {
                    warn(report, number, "theory field is not an integer code list", true);
                    return;
                }
            }
        }
        ++usable_rows;
        if (!iequals(relation, "influences")) {
            warn(report, number,
                 "non-influence relation '" + std::string(relation) + "'", true);
            return;
        }
        if (source == target) {
            if (options.drop_self_loops) {
                report.warnings.push_back(ParseWarning{
                    number, "self-influence '" + std::string(source) + "' dropped",
                    true, true});
                ++report.dropped_lines;
                return;
            }
            throw SelfInfluenceError("line " + std::to_string(number) +
                                     ": self-influence '" + std::string(source) +
                                     "'");
        }
        NodeId s = report.graph.add_construct(source);
        NodeId t = report.graph.add_construct(target);
        if (codes.empty()) {
            report.graph.merge_edge(s, t);
        } else {
            for (int code : codes)
                report.graph.merge_edge(s, t, code);
        }
    });

    if (usable_rows == 0)
        throw EmptyInputError("no well-formed rows in CSV input");
    return report;
}

namespace {

// `<iri>` with the cursor advanced past it; nullopt if not at an IRI.
std::optional<std::string_view> take_iri(std::string_view& rest) {
    rest = trim(rest);
    if (rest.empty() || rest.front() != '<')
        return std::nullopt;
    std::size_t end = rest.find('>');
    if (end == std::string_view::npos)
        return std::nullopt;
    std::string_view iri = rest.substr(1, end - 1);
    rest.remove_prefix(end + 1);
    return iri;
}

std::string_view local_name(std::string_view iri) {
    std::size_t pos = iri.find_last_of("#/");
    return pos == std::string_view::npos ? iri : iri.substr(pos + 1);
}

} // namespace

ParseReport parse_triples(std::string_view text) {
    ParseReport report;
    int usable_statements = 0;

    for_each_line(text, [&](int number, std::string_view line) {
        std::string_view body = trim(line);
        if (body.empty() || body.front() == '#')
            return;
        std::string_view rest = body;
        auto subject = take_iri(rest);
        auto predicate = take_iri(rest);
        auto object = take_iri(rest);
        rest = trim(rest);
        if (!subject || !predicate || !object || rest != ".") {
            warn(report, number, "malformed triple", true);
            return;
        }
        std::string_view s_label = local_name(*subject);
        std::string_view o_label = local_name(*object);
        if (s_label.empty() || o_label.empty()) {
            warn(report, number, "empty construct label", true);
            return;
        }
        ++usable_statements;
        if (!iequals(local_name(*predicate), "influences")) {
            warn(report, number, "non-influence predicate", true);
            return;
        }
        if (s_label == o_label) {
            report.warnings.push_back(ParseWarning{
                number, "self-influence '" + std::string(s_label) + "' dropped",
                true, true});
            ++report.dropped_lines;
            return;
        }
        NodeId s = report.graph.add_construct(s_label);
        NodeId t = report.graph.add_construct(o_label);
        report.graph.merge_edge(s, t);
    });

    if (usable_statements == 0)
        throw EmptyInputError("no triples in input");
    return report;
}

ValidationReport validate(const InfluenceGraph& graph,
                          const std::set<int>& known_theory_codes,
                          bool allow_isolated) {
    ValidationReport report;
    const std::size_t n = graph.node_count();

    // V1: duplicate labels. The graph enforces this on insert, so this can
    // only fire for graphs assembled by other means.
    {
        std::vector<std::string_view> labels;
        labels.reserve(n);
        for (const auto& node : graph.constructs())
            labels.push_back(node.label);
        std::sort(labels.begin(), labels.end());
        for (std::size_t i = 1; i < labels.size(); ++i)
            if (labels[i] == labels[i - 1])
                report.violations.push_back(
                    {"V1", std::string(labels[i]), "duplicate label"});
    }

    graph.for_each_edge([&](const InfluenceEdge& e) {
        std::string name = graph.construct(e.source).label + " -> " +
                           graph.construct(e.target).label;
        if (e.source == e.target)
            report.violations.push_back({"V2", name, "self-influence edge"});
        for (int code : e.provenance)
            if (!known_theory_codes.count(code))
                report.violations.push_back(
                    {"V3", name, "unknown theory code " + std::to_string(code)});
        if (!e.provenance.empty() &&
            e.weight != static_cast<double>(e.provenance.size()))
            report.violations.push_back(
                {"V5", name,
                 "weight " + std::to_string(e.weight) + " != provenance size " +
                     std::to_string(e.provenance.size())});
    });

    if (!allow_isolated) {
        for (NodeId v = 0; v < n; ++v)
            if (graph.in_neighbors(v).empty() && graph.out_edges(v).empty())
                report.violations.push_back(
                    {"V4", graph.construct(v).label, "isolated node"});
    }

    // Stable order for reporting: rule, then element.
    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& a, const Violation& b) {
                  if (a.rule != b.rule)
                      return a.rule < b.rule;
                  if (a.element != b.element)
                      return a.element < b.element;
                  return a.message < b.message;
              });
    return report;
}

const std::set<int>& core_theory_codes() {
    static const std::set<int> codes = {2,  5,  8,  10, 11, 12, 14, 15, 18, 22,
                                        23, 27, 28, 34, 35, 39, 41, 44, 49, 51};
    return codes;
}

} // namespace influgraph

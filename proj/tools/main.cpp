// influgraph: ingest -> validate -> centrality suite -> aggregate -> export.
#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "influgraph/centrality.hpp"
#include "influgraph/graph.hpp"
#include "influgraph/ingest.hpp"
#include "influgraph/layout.hpp"
#include "influgraph/ranking.hpp"

namespace {

using namespace influgraph;

constexpr const char* kVersion = "influgraph 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1; // validation violations
constexpr int kExitUsage = 2;  // usage / IO errors
constexpr int kExitPartial = 3; // some measures failed to converge

struct RunConfig {
    std::string config_path;    // optional key=value file; flags win
    std::string input;
    std::string format = "csv"; // csv | triples
    std::string measures;       // comma-separated, empty = all 20
    std::string codes;          // extra known theory codes, comma-separated
    int k = 10;
    int rings = 4;
    double tolerance = 1e-10;
    int max_iter = 1000;
    double damping = 0.85;
    bool weighted = true;
    bool has_header = false;
    bool drop_self_loops = false;
    bool allow_isolated = false;
    std::string out_dir = "out";

    SolverConfig solver() const {
        SolverConfig cfg;
        cfg.tolerance = tolerance;
        cfg.max_iterations = max_iter;
        cfg.damping = damping;
        return cfg;
    }

    // Canonical key=value form; hashed into every artifact header.
    std::string canonical() const {
        std::ostringstream os;
        os << "format=" << format << ";measures=" << measures << ";k=" << k
           << ";rings=" << rings << ";tolerance=" << tolerance
           << ";max_iter=" << max_iter << ";damping=" << damping
           << ";weighted=" << weighted << ";has_header=" << has_header
           << ";drop_self_loops=" << drop_self_loops
           << ";allow_isolated=" << allow_isolated << ";codes=" << codes;
        return os.str();
    }
};

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        return false;
    out << content;
    return static_cast<bool>(out);
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> parts;
    std::string current;
    for (char c : csv) {
        if (c == ',') {
            if (!current.empty())
                parts.push_back(current);
            current.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            current += c;
        }
    }
    if (!current.empty())
        parts.push_back(current);
    return parts;
}

std::string fmt(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

// Display form for the human-readable report; artifacts keep full precision.
std::string fmt_short(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return std::string(buf);
}

struct LoadedInput {
    InfluenceGraph graph;
    std::vector<ParseWarning> warnings;
    std::string provenance; // "config=<hex> input=<hex>"
};

// Parses, canonicalizes node ids by label, applies the weight toggle.
LoadedInput load_input(const RunConfig& cfg) {
    auto text = read_file(cfg.input);
    if (!text)
        throw Error("cannot read input file: " + cfg.input);

    ParseOptions options{cfg.has_header, cfg.drop_self_loops};
    ParseReport report = cfg.format == "triples" ? parse_triples(*text)
                                                 : parse_edge_csv(*text, options);
    LoadedInput loaded;
    loaded.warnings = std::move(report.warnings);
    loaded.graph = canonicalized(report.graph);
    if (!cfg.weighted)
        loaded.graph = unit_weights(loaded.graph);
    loaded.provenance = "config=" + hex64(fnv1a64(cfg.canonical())) +
                        " input=" + hex64(fnv1a64(*text));
    return loaded;
}

std::set<int> known_codes(const RunConfig& cfg) {
    std::set<int> codes = core_theory_codes();
    for (const std::string& part : split_list(cfg.codes))
        codes.insert(std::stoi(part));
    return codes;
}

std::vector<Measure> selected_measures(const RunConfig& cfg) {
    if (cfg.measures.empty()) {
        const auto& reg = measure_registry();
        return {reg.begin(), reg.end()};
    }
    std::vector<Measure> selected;
    for (const std::string& name : split_list(cfg.measures)) {
        auto m = measure_from_name(name);
        if (!m)
            throw Error("unknown measure: " + name);
        selected.push_back(*m);
    }
    if (selected.empty())
        throw Error("empty measure selection");
    return selected;
}

int cmd_validate(const RunConfig& cfg) {
    // Self-loop rows can never enter the graph, so parse in drop mode and
    // surface them as V2 violations of the input file instead.
    RunConfig relaxed = cfg;
    relaxed.drop_self_loops = true;
    LoadedInput loaded = load_input(relaxed);
    ValidationReport report =
        validate(loaded.graph, known_codes(cfg), cfg.allow_isolated);
    for (const ParseWarning& w : loaded.warnings)
        if (w.self_loop)
            report.violations.push_back(
                {"V2", "line " + std::to_string(w.line), w.message});
    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& a, const Violation& b) {
                  return std::tie(a.rule, a.element, a.message) <
                         std::tie(b.rule, b.element, b.message);
              });

    std::cout << kVersion << " validate " << loaded.provenance << "\n";
    std::cout << loaded.graph.node_count() << " constructs, "
              << loaded.graph.edge_count() << " edges\n";
    for (const ParseWarning& w : loaded.warnings)
        if (!w.self_loop)
            std::cout << "warning line " << w.line << ": " << w.message << "\n";
    for (const Violation& v : report.violations)
        std::cout << v.rule << " " << v.element << ": " << v.message << "\n";
    std::cout << (report.is_valid() ? "valid" : "invalid") << "\n";
    return report.is_valid() ? kExitOk : kExitInvalid;
}

struct SuiteArtifacts {
    std::vector<SuiteEntry> entries;
    std::vector<RankTable> tables; // successful measures only
    std::vector<std::string> failures;
    AggregateRanking by_count{0, AggregationMethod::appearance_count, {}};
    AggregateRanking by_borda{0, AggregationMethod::borda, {}};
};

SuiteArtifacts run_analysis(const InfluenceGraph& graph, const RunConfig& cfg,
                            const std::vector<Measure>& measures) {
    SuiteArtifacts art;
    art.entries = run_suite(graph, measures, cfg.solver());
    for (const SuiteEntry& entry : art.entries) {
        if (entry.result)
            art.tables.push_back(rank(graph, *entry.result));
        else
            art.failures.push_back(std::string(measure_name(entry.measure)) +
                                   ": " + entry.error);
    }
    if (!art.tables.empty()) {
        art.by_count = aggregate(graph, art.tables, cfg.k);
        art.by_borda = borda(graph, art.tables, cfg.k);
    }
    return art;
}

std::string scores_csv(const InfluenceGraph& graph, const SuiteArtifacts& art,
                       const std::string& provenance) {
    std::string csv = "# " + provenance + "\n";
    csv += "node_label,measure,score\n";
    for (const SuiteEntry& entry : art.entries) {
        if (!entry.result)
            continue;
        // node ids are canonical (label-sorted), so id order = label order
        for (NodeId v = 0; v < graph.node_count(); ++v)
            csv += graph.construct(v).label + "," +
                   std::string(measure_name(entry.measure)) + "," +
                   fmt(entry.result->scores[v]) + "\n";
    }
    return csv;
}

std::string rank_csv(const InfluenceGraph& graph, const RankTable& table,
                     const std::string& provenance) {
    std::string csv = "# " + provenance + "\n";
    csv += "node_label,score,rank\n";
    for (const RankEntry& e : table.entries)
        csv += graph.construct(e.node).label + "," + fmt(e.score) + "," +
               fmt(e.rank) + "\n";
    return csv;
}

std::string aggregate_csv(const InfluenceGraph& graph,
                          const AggregateRanking& agg,
                          const std::string& provenance) {
    std::string csv = "# " + provenance + "\n";
    csv += "node_label,appearances,mean_rank,borda_points\n";
    for (const AggregateRow& row : agg.rows)
        csv += graph.construct(row.node).label + "," +
               std::to_string(row.appearances) + "," + fmt(row.mean_rank) +
               "," + fmt(row.borda_points) + "\n";
    return csv;
}

std::string aggregate_text(const InfluenceGraph& graph,
                           const SuiteArtifacts& art,
                           const std::string& provenance) {
    std::ostringstream os;
    os << "# " << provenance << "\n";
    os << "aggregate over " << art.tables.size() << " measures, k=" << art.by_count.k
       << "\n\n";
    os << "by top-k appearance count:\n";
    int pos = 0;
    for (const AggregateRow& row : art.by_count.rows) {
        os << "  " << ++pos << ". " << graph.construct(row.node).label
           << "  appearances=" << row.appearances
           << "  mean_rank=" << fmt(row.mean_rank) << "\n";
    }
    os << "\nby Borda points:\n";
    pos = 0;
    for (const AggregateRow& row : art.by_borda.rows) {
        os << "  " << ++pos << ". " << graph.construct(row.node).label
           << "  points=" << fmt(row.borda_points)
           << "  mean_rank=" << fmt(row.mean_rank) << "\n";
    }
    return os.str();
}

const CentralityResult* find_result(const SuiteArtifacts& art, Measure m) {
    for (const SuiteEntry& e : art.entries)
        if (e.measure == m && e.result)
            return &*e.result;
    return nullptr;
}

int cmd_analyze(const RunConfig& cfg) {
    LoadedInput loaded = load_input(cfg);
    std::vector<Measure> measures = selected_measures(cfg);
    SuiteArtifacts art = run_analysis(loaded.graph, cfg, measures);

    std::filesystem::path out(cfg.out_dir);
    std::filesystem::create_directories(out);
    auto emit = [&](const std::string& name, const std::string& content) {
        if (!write_file(out / name, content))
            throw Error("cannot write artifact: " + (out / name).string());
    };

    emit("scores.csv", scores_csv(loaded.graph, art, loaded.provenance));
    for (const RankTable& table : art.tables)
        emit("rank_" + std::string(measure_name(table.measure)) + ".csv",
             rank_csv(loaded.graph, table, loaded.provenance));
    if (!art.tables.empty()) {
        emit("aggregate_count.csv",
             aggregate_csv(loaded.graph, art.by_count, loaded.provenance));
        emit("aggregate_borda.csv",
             aggregate_csv(loaded.graph, art.by_borda, loaded.provenance));
        emit("aggregate.txt", aggregate_text(loaded.graph, art, loaded.provenance));
    }
    emit("edges.csv", write_edge_csv(loaded.graph, loaded.provenance));

    // Layout always runs on betweenness + pagerank, computed here if the
    // selection left them out.
    const CentralityResult* bw = find_result(art, Measure::betweenness);
    const CentralityResult* pr = find_result(art, Measure::pagerank);
    CentralityResult bw_local, pr_local;
    try {
        if (!bw) {
            bw_local = betweenness_scores(loaded.graph, false);
            bw = &bw_local;
        }
        if (!pr) {
            pr_local = pagerank_scores(loaded.graph, false, cfg.solver());
            pr = &pr_local;
        }
        LayoutParams params;
        params.rings = cfg.rings;
        LayoutSpec layout = multi_circle_layout(loaded.graph, *bw, *pr, params);
        emit("layout.svg", render_svg(layout, loaded.graph, loaded.provenance));
        emit("layout.json", export_json(layout, loaded.graph, loaded.provenance));
        emit("graph.dot", export_dot(loaded.graph, pr, loaded.provenance));
    } catch (const NonConvergenceError& e) {
        art.failures.push_back(std::string("layout: ") + e.what());
    }

    std::cout << kVersion << " analyze " << loaded.provenance << "\n";
    std::cout << loaded.graph.node_count() << " constructs, "
              << loaded.graph.edge_count() << " edges; " << art.tables.size()
              << "/" << measures.size() << " measures computed\n";
    std::cout << "top-" << cfg.k << " by appearance count:\n";
    int pos = 0;
    for (const AggregateRow& row : art.by_count.rows) {
        if (pos >= cfg.k)
            break;
        std::cout << "  " << ++pos << ". " << loaded.graph.construct(row.node).label
                  << " (appearances=" << row.appearances
                  << ", mean_rank=" << fmt(row.mean_rank) << ")\n";
    }
    for (const std::string& failure : art.failures)
        std::cout << "failed: " << failure << "\n";
    return art.failures.empty() ? kExitOk : kExitPartial;
}

int cmd_report(const RunConfig& cfg) {
    LoadedInput loaded = load_input(cfg);
    std::vector<Measure> measures = selected_measures(cfg);
    SuiteArtifacts art = run_analysis(loaded.graph, cfg, measures);

    std::ostringstream os;
    os << kVersion << " report " << loaded.provenance << "\n\n";
    os << "graph: " << loaded.graph.node_count() << " constructs, "
       << loaded.graph.edge_count() << " edges\n\n";

    auto print_top = [&](const RankTable& table, const std::string& heading) {
        os << heading << "\n";
        TopK top = top_k(table, cfg.k);
        int pos = 0;
        for (NodeId v : top.ids) {
            const RankEntry* entry = nullptr;
            for (const RankEntry& e : table.entries)
                if (e.node == v) {
                    entry = &e;
                    break;
                }
            os << "  " << ++pos << ". " << loaded.graph.construct(v).label
               << " (score=" << fmt_short(entry->score) << ")\n";
        }
        if (top.overflow)
            os << "  (tie group extends past k)\n";
        os << "\n";
    };

    // Family views first: AC, BC, EC, Contribution, OC, IC.
    const std::pair<Measure, const char*> families[] = {
        {Measure::hits_authority, "AC / hits-authority"},
        {Measure::betweenness, "BC / betweenness"},
        {Measure::eigenvector_right, "EC / eigenvector-right"},
        {Measure::contribution, "Contribution / contribution"},
        {Measure::out_degree, "OC / out-degree"},
        {Measure::eigenvector_left, "IC / eigenvector-left"},
    };
    os << "== centrality families ==\n";
    std::vector<Measure> family_order;
    for (const auto& [m, heading] : families) {
        family_order.push_back(m);
        for (const RankTable& table : art.tables)
            if (table.measure == m)
                print_top(table, heading);
    }
    os << "== other measures ==\n";
    for (const RankTable& table : art.tables) {
        if (std::find(family_order.begin(), family_order.end(), table.measure) !=
            family_order.end())
            continue;
        print_top(table, std::string(measure_name(table.measure)));
    }

    os << "== aggregate (top-k appearance count, k=" << cfg.k << ") ==\n";
    int pos = 0;
    for (const AggregateRow& row : art.by_count.rows) {
        if (pos >= cfg.k)
            break;
        os << "  " << ++pos << ". " << loaded.graph.construct(row.node).label
           << "  appearances=" << row.appearances
           << "  mean_rank=" << fmt(row.mean_rank) << "\n";
    }
    os << "\n== aggregate (Borda) ==\n";
    pos = 0;
    for (const AggregateRow& row : art.by_borda.rows) {
        if (pos >= cfg.k)
            break;
        os << "  " << ++pos << ". " << loaded.graph.construct(row.node).label
           << "  points=" << fmt(row.borda_points) << "\n";
    }

    os << "\n== convergence ==\n";
    for (const SuiteEntry& entry : art.entries) {
        os << measure_name(entry.measure) << ": ";
        if (entry.result) {
            if (entry.result->iterations == 0)
                os << "direct\n";
            else
                os << "converged in " << entry.result->iterations
                   << " iterations, residual=" << fmt_short(entry.result->residual)
                   << "\n";
        } else {
            os << "FAILED: " << entry.error << "\n";
        }
    }

    std::cout << os.str();
    return art.failures.empty() ? kExitOk : kExitPartial;
}

// Fills fields the command line and environment left untouched.
void apply_config_file(const std::string& path, RunConfig& cfg, CLI::App* cmd) {
    auto text = read_file(path);
    if (!text)
        throw Error("cannot read config file: " + path);
    std::istringstream lines(*text);
    std::string line;
    auto given = [&](const std::string& flag) { return cmd->count(flag) > 0; };
    auto parse_bool = [](const std::string& v) {
        if (v == "true" || v == "1" || v == "yes")
            return true;
        if (v == "false" || v == "0" || v == "no")
            return false;
        throw Error("config value is not a boolean: " + v);
    };
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#')
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("config line is not key=value: " + line);
        auto strip = [](std::string s) {
            std::size_t a = s.find_first_not_of(" \t");
            std::size_t b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string()
                                          : s.substr(a, b - a + 1);
        };
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '-', '_');

        if (key == "input") {
            if (!given("--input")) cfg.input = value;
        } else if (key == "format") {
            if (!given("--format")) cfg.format = value;
        } else if (key == "measures") {
            if (!given("--measures")) cfg.measures = value;
        } else if (key == "codes") {
            if (!given("--codes")) cfg.codes = value;
        } else if (key == "k") {
            if (!given("--k")) cfg.k = std::stoi(value);
        } else if (key == "rings") {
            if (!given("--rings")) cfg.rings = std::stoi(value);
        } else if (key == "tolerance") {
            if (!given("--tolerance")) cfg.tolerance = std::stod(value);
        } else if (key == "max_iter") {
            if (!given("--max-iter")) cfg.max_iter = std::stoi(value);
        } else if (key == "damping") {
            if (!given("--damping")) cfg.damping = std::stod(value);
        } else if (key == "weighted") {
            if (!given("--weighted")) cfg.weighted = parse_bool(value);
        } else if (key == "has_header") {
            if (!given("--has-header")) cfg.has_header = parse_bool(value);
        } else if (key == "drop_self_loops") {
            if (!given("--drop-self-loops"))
                cfg.drop_self_loops = parse_bool(value);
        } else if (key == "allow_isolated") {
            if (!given("--allow-isolated"))
                cfg.allow_isolated = parse_bool(value);
        } else if (key == "out_dir") {
            if (!given("--out-dir")) cfg.out_dir = value;
        } else {
            throw Error("unknown config key: " + key);
        }
    }
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--config", cfg.config_path,
                    "key=value config file (flags win)")
        ->envname("INFLUGRAPH_CONFIG");
    cmd->add_option("--input", cfg.input, "input graph file")
        ->envname("INFLUGRAPH_INPUT");
    cmd->add_option("--format", cfg.format, "input format: csv | triples")
        ->envname("INFLUGRAPH_FORMAT")
        ->check(CLI::IsMember({"csv", "triples"}));
    cmd->add_option("--measures", cfg.measures,
                    "comma-separated measure names (default: all 20)")
        ->envname("INFLUGRAPH_MEASURES");
    cmd->add_option("--codes", cfg.codes, "extra known theory codes")
        ->envname("INFLUGRAPH_CODES");
    cmd->add_option("--k", cfg.k, "aggregate top-k cutoff")
        ->envname("INFLUGRAPH_K")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--rings", cfg.rings, "layout ring count")
        ->envname("INFLUGRAPH_RINGS")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance", cfg.tolerance, "solver tolerance")
        ->envname("INFLUGRAPH_TOLERANCE");
    cmd->add_option("--max-iter", cfg.max_iter, "solver iteration cap")
        ->envname("INFLUGRAPH_MAX_ITER");
    cmd->add_option("--damping", cfg.damping, "PageRank damping")
        ->envname("INFLUGRAPH_DAMPING");
    cmd->add_flag("--weighted,!--unweighted", cfg.weighted,
                  "use theory-multiplicity edge weights (default) or all-unit")
        ->envname("INFLUGRAPH_WEIGHTED");
    cmd->add_flag("--has-header", cfg.has_header, "CSV input has a header row")
        ->envname("INFLUGRAPH_HAS_HEADER");
    cmd->add_flag("--drop-self-loops", cfg.drop_self_loops,
                  "drop self-influence rows instead of failing")
        ->envname("INFLUGRAPH_DROP_SELF_LOOPS");
    cmd->add_flag("--allow-isolated", cfg.allow_isolated,
                  "do not flag isolated nodes during validation")
        ->envname("INFLUGRAPH_ALLOW_ISOLATED");
    cmd->add_option("--out-dir", cfg.out_dir, "artifact output directory")
        ->envname("INFLUGRAPH_OUT_DIR");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"directed influence-graph centrality toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "parse and structurally validate a graph");
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "run the centrality suite and write artifacts");
    CLI::App* report_cmd =
        app.add_subcommand("report", "print a single human-readable report");
    add_common_options(validate_cmd, cfg);
    add_common_options(analyze_cmd, cfg);
    add_common_options(report_cmd, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        CLI::App* active = validate_cmd->parsed()   ? validate_cmd
                           : analyze_cmd->parsed() ? analyze_cmd
                                                   : report_cmd;
        if (!cfg.config_path.empty())
            apply_config_file(cfg.config_path, cfg, active);
        if (cfg.input.empty())
            throw Error("no input file given (use --input or a config file)");
        cfg.solver().check();
        if (validate_cmd->parsed())
            return cmd_validate(cfg);
        if (analyze_cmd->parsed())
            return cmd_analyze(cfg);
        return cmd_report(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

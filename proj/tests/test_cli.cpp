// End-to-end tests that drive the installed CLI binary.
// argv[1] = CLI path, argv[2] = bundled snapshot fixture.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string g_cli;
std::string g_fixture;

struct RunResult {
    int code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string command = g_cli + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        output.append(buffer.data(), got);
    int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), std::move(output)};
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("influgraph_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace

TEST_CASE("validate accepts the bundled snapshot") {
    RunResult r = run("validate --input " + g_fixture);
    CHECK(r.code == 0);
    CHECK(r.output.find("108 constructs") != std::string::npos);
    CHECK(r.output.find("valid") != std::string::npos);
}

TEST_CASE("validate reports self-loops as V2 with exit 1") {
    fs::path dir = fresh_dir("selfloop");
    write(dir / "bad.csv", "A,influences,A,28\nA,influences,B,28\n");
    RunResult r = run("validate --input " + (dir / "bad.csv").string());
    CHECK(r.code == 1);
    CHECK(r.output.find("V2") != std::string::npos);
}

TEST_CASE("missing input file exits 2") {
    RunResult r = run("validate --input /nonexistent/nope.csv");
    CHECK(r.code == 2);
}

TEST_CASE("analyze writes the full artifact set for the snapshot") {
    fs::path out = fresh_dir("analyze_full");
    RunResult r = run("analyze --input " + g_fixture + " --out-dir " +
                      out.string());
    CHECK(r.code == 0);
    CHECK(r.output.find("top-10") != std::string::npos);
    for (const char* name :
         {"scores.csv", "aggregate_count.csv", "aggregate_borda.csv",
          "aggregate.txt", "layout.svg", "layout.json", "graph.dot",
          "edges.csv", "rank_pagerank.csv", "rank_contribution.csv"})
        CHECK_MESSAGE(fs::exists(out / name), name);
    // every artifact carries the provenance header
    std::string scores = slurp(out / "scores.csv");
    CHECK(scores.find("config=") != std::string::npos);
    CHECK(scores.find("input=") != std::string::npos);
}

TEST_CASE("analyze on a 3-cycle reports a full tie") {
    fs::path dir = fresh_dir("cycle");
    write(dir / "cycle.csv",
          "A,influences,B,28\nB,influences,C,28\nC,influences,A,28\n");
    RunResult r = run("analyze --input " + (dir / "cycle.csv").string() +
                      " --out-dir " + (dir / "out").string());
    CHECK(r.code == 0);
    // all three nodes appear in every measure's top-k
    CHECK(r.output.find("A (appearances=20") != std::string::npos);
    CHECK(r.output.find("B (appearances=20") != std::string::npos);
    CHECK(r.output.find("C (appearances=20") != std::string::npos);
}

TEST_CASE("measure selection writes exactly the requested rank tables") {
    fs::path out = fresh_dir("subset");
    RunResult r = run("analyze --input " + g_fixture +
                      " --measures pagerank,betweenness --out-dir " +
                      out.string());
    CHECK(r.code == 0);
    int rank_tables = 0;
    for (const auto& entry : fs::directory_iterator(out))
        if (entry.path().filename().string().rfind("rank_", 0) == 0)
            ++rank_tables;
    CHECK(rank_tables == 2);
    CHECK(fs::exists(out / "rank_pagerank.csv"));
    CHECK(fs::exists(out / "rank_betweenness.csv"));
}

TEST_CASE("unknown measure name is rejected before computing") {
    fs::path out = fresh_dir("unknown_measure");
    RunResult r = run("analyze --input " + g_fixture +
                      " --measures pagerank,nonsense --out-dir " + out.string());
    CHECK(r.code == 2);
    CHECK(r.output.find("unknown measure") != std::string::npos);
    CHECK_FALSE(fs::exists(out / "scores.csv"));
}

TEST_CASE("non-convergent measure yields exit 3 with partial artifacts") {
    fs::path dir = fresh_dir("partial");
    write(dir / "edge.csv", "A,influences,B,28\n");
    RunResult r = run("analyze --input " + (dir / "edge.csv").string() +
                      " --out-dir " + (dir / "out").string() +
                      " --allow-isolated");
    CHECK(r.code == 3);
    CHECK(r.output.find("failed:") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "rank_pagerank.csv"));
    CHECK_FALSE(fs::exists(dir / "out" / "rank_eigenvector-right.csv"));
}

TEST_CASE("two analyze runs produce byte-identical artifacts") {
    fs::path a = fresh_dir("det_a");
    fs::path b = fresh_dir("det_b");
    REQUIRE(run("analyze --input " + g_fixture + " --out-dir " + a.string())
                .code == 0);
    REQUIRE(run("analyze --input " + g_fixture + " --out-dir " + b.string())
                .code == 0);
    int compared = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        fs::path other = b / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK_MESSAGE(slurp(entry.path()) == slurp(other),
                      entry.path().filename().string());
        ++compared;
    }
    CHECK(compared >= 27);
}

TEST_CASE("report prints the six family views first and is reproducible") {
    RunResult first = run("report --input " + g_fixture);
    CHECK(first.code == 0);
    std::size_t ac = first.output.find("AC / hits-authority");
    std::size_t bc = first.output.find("BC / betweenness");
    std::size_t ec = first.output.find("EC / eigenvector-right");
    std::size_t contrib = first.output.find("Contribution / contribution");
    std::size_t oc = first.output.find("OC / out-degree");
    std::size_t ic = first.output.find("IC / eigenvector-left");
    std::size_t rest = first.output.find("== other measures ==");
    REQUIRE(ac != std::string::npos);
    CHECK(ac < bc);
    CHECK(bc < ec);
    CHECK(ec < contrib);
    CHECK(contrib < oc);
    CHECK(oc < ic);
    CHECK(ic < rest);
    CHECK(first.output.find("== convergence ==") != std::string::npos);

    RunResult second = run("report --input " + g_fixture);
    CHECK(first.output == second.output);
}

TEST_CASE("out-of-range solver overrides are usage errors") {
    CHECK(run("analyze --input " + g_fixture + " --damping 1.5").code == 2);
    CHECK(run("analyze --input " + g_fixture + " --tolerance 0").code == 2);
    CHECK(run("analyze --input " + g_fixture + " --max-iter 0").code == 2);
}

TEST_CASE("empty measure selection is a usage error") {
    RunResult r = run("report --input " + g_fixture + " --measures ,");
    CHECK(r.code == 2);
}

TEST_CASE("config file applies and flags win over it") {
    fs::path dir = fresh_dir("config");
    write(dir / "run.conf", "measures=pagerank\nk=3\n");
    RunResult from_config =
        run("analyze --input " + g_fixture + " --config " +
            (dir / "run.conf").string() + " --out-dir " +
            (dir / "out1").string());
    CHECK(from_config.code == 0);
    CHECK(from_config.output.find("1/1 measures") != std::string::npos);
    CHECK(from_config.output.find("top-3") != std::string::npos);

    RunResult overridden =
        run("analyze --input " + g_fixture + " --config " +
            (dir / "run.conf").string() + " --k 2 --out-dir " +
            (dir / "out2").string());
    CHECK(overridden.code == 0);
    CHECK(overridden.output.find("top-2") != std::string::npos);
}

TEST_CASE("environment variables mirror the flags") {
    fs::path out = fresh_dir("envvar");
    std::string command = "INFLUGRAPH_K=4 " + g_cli + " analyze --input " +
                          g_fixture + " --out-dir " + out.string() + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer{};
    std::size_t got = 0;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        output.append(buffer.data(), got);
    int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(output.find("top-4") != std::string::npos);
}

TEST_CASE("triples input format is supported") {
    fs::path dir = fresh_dir("triples");
    write(dir / "g.nt",
          "<urn:c#A> <urn:c#influences> <urn:c#B> .\n"
          "<urn:c#B> <urn:c#influences> <urn:c#C> .\n"
          "<urn:c#C> <urn:c#influences> <urn:c#A> .\n");
    RunResult r = run("analyze --input " + (dir / "g.nt").string() +
                      " --format triples --out-dir " + (dir / "out").string());
    CHECK(r.code == 0);
    CHECK(r.output.find("3 constructs") != std::string::npos);
}

TEST_CASE("unweighted toggle flattens theory multiplicities") {
    fs::path dir = fresh_dir("unweighted");
    write(dir / "w.csv",
          "A,influences,B,28;49;35\nB,influences,A,28\nB,influences,C,28\n"
          "C,influences,A,28\n");
    RunResult weighted = run("analyze --input " + (dir / "w.csv").string() +
                             " --measures weighted-out-degree --out-dir " +
                             (dir / "o1").string());
    RunResult unweighted =
        run("analyze --input " + (dir / "w.csv").string() +
            " --unweighted --measures weighted-out-degree --out-dir " +
            (dir / "o2").string());
    CHECK(weighted.code == 0);
    CHECK(unweighted.code == 0);
    std::string w = slurp(dir / "o1" / "rank_weighted-out-degree.csv");
    std::string u = slurp(dir / "o2" / "rank_weighted-out-degree.csv");
    CHECK(w.find("A,3,1") != std::string::npos);  // weight 3 from 3 theories
    CHECK(u.find("A,1,") != std::string::npos);   // flattened to 1
}

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: test_cli <cli-binary> <fixture.csv>\n");
        return 1;
    }
    g_cli = argv[1];
    g_fixture = argv[2];
    doctest::Context context;
    context.applyCommandLine(1, argv);
    return context.run();
}

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gmatch/bench.hpp"
#include "oracles.hpp"

using namespace gmatch;

namespace {

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / ("gmatch_bench_" + name)) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::filesystem::path operator/(const std::string& f) const { return path / f; }
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
    args.insert(args.begin(), "gmatch");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int rc = gmatch::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    if (out_text)
        *out_text = out.str() + err.str();
    return rc;
}

void write_reference(const std::filesystem::path& path, const std::string& s) {
    write_fasta(path, {{"ref", encode_sequence(s)}});
}

} // namespace

TEST_CASE("results TSV format", "[bench]") {
    const auto text = encode_sequence("acggtacgtac");
    const auto sa = build_dc3(text);
    const BatchResult res{{0, 2, -1, -1}};
    std::ostringstream plain, with_pos;
    write_results_tsv(plain, result_rows(res, sa, false), false);
    write_results_tsv(with_pos, result_rows(res, sa, true), true);
    CHECK(plain.str() == "query_id\tlb\trb\tcount\n0\t0\t2\t3\n1\t-1\t-1\t0\n");
    CHECK(with_pos.str() == "query_id\tlb\trb\tcount\tpositions\n0\t0\t2\t3\t9,0,5\n1\t-1\t-1\t0\t\n");
}

TEST_CASE("speedup_report", "[bench]") {
    TimingReport a;
    a.input_s = 1;
    a.kernel_s = 10;
    a.output_s = 0.5;
    a.total_s = 11.5;
    a.queries = 10;
    a.query_len = 4;
    a.text_len = 100;

    const auto same = speedup_report(a, a);
    CHECK(same.input == 1.0);
    CHECK(same.kernel == 1.0);
    CHECK(same.output == 1.0);
    CHECK(same.total == 1.0);

    TimingReport b = a;
    b.kernel_s = 2;
    CHECK(speedup_report(a, b).kernel == Catch::Approx(5.0));

    b.queries = 11;
    CHECK_THROWS_AS(speedup_report(a, b), WorkloadMismatch);
}

TEST_CASE("run_bench phases and determinism", "[bench]") {
    TempDir dir("run");
    std::mt19937_64 rng(21);
    write_reference(dir / "ref.fa", oracle::random_dna(rng, 50000));

    BenchRequest req;
    req.reference = {dir / "ref.fa", ReferenceInput::Kind::Fasta, std::nullopt, NonAcgtPolicy::Error};
    req.queries = QueryGenSpec{2000, 64, 0.5, 0.0, 4};
    req.results_tsv = dir / "w1.tsv";
    req.positions = true;
    req.matcher = {1, 64, Backend::SuffixArray};
    const auto r1 = run_bench(req);

    CHECK(r1.queries == 2000);
    CHECK(r1.query_len == 64);
    CHECK(r1.text_len == 50000);
    CHECK(r1.index_bytes == 50000 * sizeof(Pos));
    CHECK(r1.matched >= 1000);
    CHECK(r1.input_s >= 0);
    CHECK(r1.kernel_s >= 0);
    CHECK(r1.output_s >= 0);
    CHECK(r1.total_s == Catch::Approx(r1.input_s + r1.kernel_s + r1.output_s));

    req.matcher.workers = 4;
    req.results_tsv = dir / "w4.tsv";
    run_bench(req);
    CHECK(slurp(dir / "w1.tsv") == slurp(dir / "w4.tsv"));

    req.matcher.backend = Backend::SuffixTree;
    req.results_tsv = dir / "tree.tsv";
    const auto rt = run_bench(req);
    CHECK(slurp(dir / "w1.tsv") == slurp(dir / "tree.tsv"));
    CHECK(rt.index_bytes > r1.index_bytes);
}

TEST_CASE("run_bench with a query file and a prefix", "[bench]") {
    TempDir dir("qfile");
    write_reference(dir / "ref.fa", "acggtacgtacttttt");
    write_fasta(dir / "q.fa", {{"q0", encode_sequence("a")}, {"q1", encode_sequence("tt")}});

    BenchRequest req;
    req.reference = {dir / "ref.fa", ReferenceInput::Kind::Fasta, std::size_t{11}, NonAcgtPolicy::Error};
    req.queries = dir / "q.fa";
    req.results_tsv = dir / "out.tsv";
    const auto r = run_bench(req);
    CHECK(r.text_len == 11);
    CHECK(slurp(dir / "out.tsv") == "query_id\tlb\trb\tcount\n0\t0\t2\t3\n1\t-1\t-1\t0\n");
}

TEST_CASE("kernel time grows with the query count", "[bench]") {
    TempDir dir("sweep");
    std::mt19937_64 rng(22);
    write_reference(dir / "ref.fa", oracle::random_dna(rng, 100000));
    SweepRequest req;
    req.reference = {dir / "ref.fa", ReferenceInput::Kind::Fasta, std::nullopt, NonAcgtPolicy::Error};
    req.counts = {512, 32768};
    req.backends = {Backend::SuffixArray, Backend::SuffixTree};
    req.query_spec = QueryGenSpec{0, 256, 0.5, 0.0, 1};
    const auto outcome = run_sweep(req);
    REQUIRE(outcome.runs.size() == 4);
    CHECK(outcome.backends_agree == std::vector<bool>{true, true});
    CHECK(outcome.runs[2].kernel_s > outcome.runs[0].kernel_s);
    CHECK(outcome.runs[0].index_bytes < outcome.runs[1].index_bytes);

    const auto doc = to_json(req, outcome);
    CHECK(doc["query_spec"]["rng"] == "mt19937_64");
    CHECK(doc["runs"].size() == 4);
}

TEST_CASE("CLI build, search and gen-queries", "[cli]") {
    TempDir dir("cli");
    write_reference(dir / "ref.fa", "acggtacgtac");
    REQUIRE(run_cli({"build", "--reference", (dir / "ref.fa").string(), "--out", (dir / "ref.gsa").string()}) == 0);
    const auto idx = read_index(dir / "ref.gsa");
    CHECK(std::vector<Pos>(idx.sa.begin(), idx.sa.end()) == std::vector<Pos>{9, 0, 5, 10, 1, 6, 2, 7, 3, 8, 4});

    write_fasta(dir / "q.fa", {{"a", encode_sequence("a")},
                               {"c", encode_sequence("c")},
                               {"tac", encode_sequence("tac")},
                               {"tt", encode_sequence("tt")}});
    for (const char* backend : {"sa", "tree"}) {
        REQUIRE(run_cli({"search", "--index", (dir / "ref.gsa").string(), "--queries", (dir / "q.fa").string(),
                         "--backend", backend, "--workers", "2", "--tile-len", "3", "--out",
                         (dir / "out.tsv").string(), "--positions", "--report", (dir / "rep.json").string()}) == 0);
        CHECK(slurp(dir / "out.tsv") == "query_id\tlb\trb\tcount\tpositions\n"
                                        "0\t0\t2\t3\t9,0,5\n"
                                        "1\t3\t5\t3\t10,1,6\n"
                                        "2\t9\t10\t2\t8,4\n"
                                        "3\t-1\t-1\t0\t\n");
        const auto report = nlohmann::json::parse(slurp(dir / "rep.json"));
        CHECK(report["Q"] == 4);
    }

    REQUIRE(run_cli({"gen-queries", "--reference", (dir / "ref.fa").string(), "--count", "5", "--length", "4",
                     "--mix-ratio", "1", "--seed", "3", "--out", (dir / "gen.fa").string()}) == 0);
    const auto generated = read_fasta_records(dir / "gen.fa");
    REQUIRE(generated.size() == 5);
    CHECK(generated[0].id == "q0");
    for (const auto& rec : generated)
        CHECK(oracle::occurrences("acggtacgtac", decode_sequence(rec.sequence)).size() >= 1);

    REQUIRE(run_cli({"search", "--index", (dir / "ref.gsa").string(), "--queries", "generated", "--count", "8",
                     "--length", "3", "--out", (dir / "gen.tsv").string()}) == 0);
    CHECK(slurp(dir / "gen.tsv").rfind("query_id\tlb\trb\tcount\n", 0) == 0);
}

TEST_CASE("CLI bench", "[cli]") {
    TempDir dir("clibench");
    std::mt19937_64 rng(23);
    write_reference(dir / "ref.fa", oracle::random_dna(rng, 20000));
    REQUIRE(run_cli({"bench", "--reference", (dir / "ref.fa").string(), "--sweep", "512,1024", "--backend", "both",
                     "--length", "128", "--report", (dir / "r.json").string(), "--csv",
                     (dir / "r.csv").string()}) == 0);
    std::istringstream csv(slurp(dir / "r.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "backend,n,Q,m,workers,tile_len,input_s,kernel_s,output_s,total_s,index_bytes");
    int rows = 0;
    while (std::getline(csv, line))
        ++rows;
    CHECK(rows == 4);
    const auto report = nlohmann::json::parse(slurp(dir / "r.json"));
    CHECK(report["agreement"][0]["backends_agree"] == true);
}

TEST_CASE("CLI reports errors", "[cli]") {
    std::string text;
    CHECK(run_cli({"build", "--reference", "/nonexistent.fa", "--out", "/tmp/x.gsa"}, &text) == 1);
    CHECK(text.find("cannot open") != std::string::npos);
    CHECK(run_cli({"search", "--index", "x", "--queries", "y", "--out", "z", "--backend", "gpu"}) != 0);
    CHECK(run_cli({}) != 0);
}

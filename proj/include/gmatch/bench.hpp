#pragma once

// Timing harness. Every run is split into three sequential phases:
//   input  - reference (or index) load plus index construction, query file read
//   kernel - match_batch only
//   output - result serialization

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "gmatch/batch_matcher.hpp"
#include "gmatch/error.hpp"
#include "gmatch/fasta.hpp"
#include "gmatch/index_io.hpp"
#include "gmatch/query_gen.hpp"
#include "gmatch/sequence.hpp"
#include "gmatch/suffix_array.hpp"
#include "gmatch/suffix_tree.hpp"

namespace gmatch {

struct TimingReport {
    double input_s = 0;
    double kernel_s = 0;
    double output_s = 0;
    double total_s = 0;

    Backend backend = Backend::SuffixArray;
    std::size_t queries = 0;
    /// Query length; 0 when the queries differ in length.
    std::size_t query_len = 0;
    std::size_t text_len = 0;
    std::size_t workers = 1;
    std::size_t tile_len = SearchConfig::default_tile_len;
    std::size_t index_bytes = 0;
    std::size_t matched = 0;
};

struct SpeedupReport {
    double input = 0;
    double kernel = 0;
    double output = 0;
    double total = 0;
};

/// Phase-wise baseline / candidate time ratios.
inline SpeedupReport speedup_report(const TimingReport& baseline, const TimingReport& candidate) {
    if (baseline.queries != candidate.queries || baseline.query_len != candidate.query_len ||
        baseline.text_len != candidate.text_len)
        throw WorkloadMismatch();
    auto ratio = [](double b, double c) { return b / c; };
    return {ratio(baseline.input_s, candidate.input_s), ratio(baseline.kernel_s, candidate.kernel_s),
            ratio(baseline.output_s, candidate.output_s), ratio(baseline.total_s, candidate.total_s)};
}

/// Header `query_id lb rb count [positions]`, tab separated; no-match rows
/// carry lb = rb = -1 and count 0.
inline void write_results_tsv(std::ostream& out, const std::vector<ResultRow>& rows, bool with_positions) {
    out << "query_id\tlb\trb\tcount";
    if (with_positions)
        out << "\tpositions";
    out << '\n';
    for (const auto& row : rows) {
        out << row.query_id << '\t' << row.lb << '\t' << row.rb << '\t' << row.count;
        if (with_positions) {
            out << '\t';
            if (row.positions) {
                for (std::size_t i = 0; i < row.positions->size(); ++i)
                    out << (i ? "," : "") << (*row.positions)[i];
            }
        }
        out << '\n';
    }
}

inline constexpr std::string_view bench_csv_header =
    "backend,n,Q,m,workers,tile_len,input_s,kernel_s,output_s,total_s,index_bytes";

inline void write_bench_csv_row(std::ostream& out, const TimingReport& r) {
    out << backend_name(r.backend) << ',' << r.text_len << ',' << r.queries << ',' << r.query_len << ','
        << r.workers << ',' << r.tile_len << ',' << r.input_s << ',' << r.kernel_s << ',' << r.output_s << ','
        << r.total_s << ',' << r.index_bytes << '\n';
}

inline nlohmann::json to_json(const TimingReport& r) {
    return {{"backend", backend_name(r.backend)},
            {"n", r.text_len},
            {"Q", r.queries},
            {"m", r.query_len},
            {"workers", r.workers},
            {"tile_len", r.tile_len},
            {"input_s", r.input_s},
            {"kernel_s", r.kernel_s},
            {"output_s", r.output_s},
            {"total_s", r.total_s},
            {"index_bytes", r.index_bytes},
            {"matched", r.matched}};
}

inline nlohmann::json to_json(const QueryGenSpec& spec) {
    return {{"count", spec.count},
            {"length", spec.length},
            {"mix_ratio", spec.mix_ratio},
            {"mutation_rate", spec.mutation_rate},
            {"seed", spec.seed},
            {"rng", query_rng_name}};
}

/// Where the reference comes from: a FASTA file or a prebuilt GSA1 index.
struct ReferenceInput {
    enum class Kind { Fasta, Index };

    std::filesystem::path path;
    Kind kind = Kind::Fasta;
    /// Truncate a FASTA reference to its first prefix_len symbols.
    std::optional<std::size_t> prefix_len;
    NonAcgtPolicy policy = NonAcgtPolicy::Error;
};

struct BenchRequest {
    ReferenceInput reference;
    /// Generated queries (not timed) or a FASTA file of queries (timed as input).
    std::variant<QueryGenSpec, std::filesystem::path> queries;
    MatcherConfig matcher;
    /// Results TSV destination; serialized to memory when empty.
    std::filesystem::path results_tsv;
    bool positions = false;
};

/// Everything a run leaves behind besides its timings.
struct BenchOutcome {
    TimingReport report;
    BatchResult result;
};

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double lap() {
        const auto now = std::chrono::steady_clock::now();
        const double s = std::chrono::duration<double>(now - start_).count();
        start_ = now;
        return s;
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline EncodedSequence load_reference_text(const ReferenceInput& ref) {
    EncodedSequence text = read_fasta(ref.path, ref.policy).sequence;
    if (ref.prefix_len && *ref.prefix_len < text.size())
        text = text.substr(0, *ref.prefix_len);
    return text;
}

} // namespace detail

inline BenchOutcome run_bench_detailed(const BenchRequest& req) {
    BenchOutcome out;
    TimingReport& rep = out.report;
    rep.backend = req.matcher.backend;
    rep.workers = req.matcher.workers;
    rep.tile_len = req.matcher.tile_len;

    detail::Stopwatch clock;

    // input
    EncodedSequence text;
    SuffixArray sa;
    FlatSuffixTree tree;
    RankArray rank;
    const bool use_tree = req.matcher.backend == Backend::SuffixTree;
    if (req.reference.kind == ReferenceInput::Kind::Index) {
        IndexFile idx = read_index(req.reference.path);
        text = std::move(idx.text);
        sa = std::move(idx.sa);
        if (use_tree) {
            tree = build_tree(text);
            rank = rank_array(sa);
        }
    } else {
        text = detail::load_reference_text(req.reference);
        if (use_tree) {
            tree = build_tree(text);
            rank = leaf_rank_array(tree);
            // positions column needs suffix-array order
            std::vector<Pos> order(rank.size());
            for (std::size_t p = 0; p < rank.size(); ++p)
                order[rank[p]] = static_cast<Pos>(p);
            sa = SuffixArray(std::move(order));
        } else {
            sa = build_dc3(text);
        }
    }
    QuerySet queries;
    if (const auto* path = std::get_if<std::filesystem::path>(&req.queries)) {
        std::vector<EncodedSequence> seqs;
        for (auto& rec : read_fasta_records(*path))
            seqs.push_back(std::move(rec.sequence));
        queries = QuerySet(std::move(seqs));
    }
    rep.input_s = clock.lap();

    if (const auto* spec = std::get_if<QueryGenSpec>(&req.queries))
        queries = gen_queries(text, *spec);
    rep.queries = queries.size();
    rep.query_len = queries.uniform_length().value_or(0);
    rep.text_len = text.size();
    rep.index_bytes = use_tree ? tree_stats(tree).bytes : sa.bytes();
    clock.lap();

    // kernel
    out.result = use_tree ? match_batch(tree, rank, text, queries, req.matcher)
                          : match_batch(sa, text, queries, req.matcher);
    rep.kernel_s = clock.lap();

    // output
    const auto rows = result_rows(out.result, sa, req.positions);
    if (req.results_tsv.empty()) {
        std::ostringstream sink;
        write_results_tsv(sink, rows, req.positions);
    } else {
        std::ofstream file(req.results_tsv);
        if (!file)
            throw FileNotFound(req.results_tsv.string());
        write_results_tsv(file, rows, req.positions);
    }
    rep.output_s = clock.lap();

    rep.total_s = rep.input_s + rep.kernel_s + rep.output_s;
    for (const auto& row : rows)
        rep.matched += row.count > 0 ? 1 : 0;
    return out;
}

inline TimingReport run_bench(const BenchRequest& req) { return run_bench_detailed(req).report; }

/// Query-count sweep over one reference, optionally for both backends.
struct SweepRequest {
    ReferenceInput reference;
    std::vector<std::size_t> counts;
    std::vector<Backend> backends{Backend::SuffixArray};
    QueryGenSpec query_spec;
    std::size_t workers = 1;
    std::size_t tile_len = SearchConfig::default_tile_len;
};

struct SweepOutcome {
    std::vector<TimingReport> runs;
    /// Per query count: whether every backend produced the same flat result.
    std::vector<bool> backends_agree;
};

inline SweepOutcome run_sweep(const SweepRequest& req) {
    SweepOutcome out;
    for (std::size_t q : req.counts) {
        std::optional<BatchResult> first;
        bool agree = true;
        for (Backend b : req.backends) {
            BenchRequest run;
            run.reference = req.reference;
            QueryGenSpec spec = req.query_spec;
            spec.count = q;
            run.queries = spec;
            run.matcher = MatcherConfig{req.workers, req.tile_len, b};
            auto outcome = run_bench_detailed(run);
            if (!first)
                first = std::move(outcome.result);
            else
                agree = agree && *first == outcome.result;
            out.runs.push_back(outcome.report);
        }
        out.backends_agree.push_back(agree);
    }
    return out;
}

inline nlohmann::json to_json(const SweepRequest& req, const SweepOutcome& outcome) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : outcome.runs)
        runs.push_back(to_json(r));
    nlohmann::json agreement = nlohmann::json::array();
    for (std::size_t i = 0; i < req.counts.size(); ++i)
        agreement.push_back({{"Q", req.counts[i]}, {"backends_agree", static_cast<bool>(outcome.backends_agree[i])}});
    return {{"reference", req.reference.path.string()},
            {"query_spec", to_json(req.query_spec)},
            {"workers", req.workers},
            {"tile_len", req.tile_len},
            {"runs", runs},
            {"agreement", agreement}};
}

} // namespace gmatch

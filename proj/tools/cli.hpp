#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmatch/gmatch.hpp"

namespace gmatch::cli {

inline const std::map<std::string, Backend> backend_choices{{"sa", Backend::SuffixArray},
                                                            {"tree", Backend::SuffixTree}};

inline const std::map<std::string, NonAcgtPolicy> policy_choices{{"error", NonAcgtPolicy::Error},
                                                                 {"skip", NonAcgtPolicy::Skip}};

inline std::vector<std::size_t> parse_sweep(const std::string& list) {
    std::vector<std::size_t> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stoull(item));
    if (out.empty())
        throw CLI::ValidationError("--sweep", "empty query-count list");
    return out;
}

inline void print_report(std::ostream& os, const TimingReport& r) {
    os << backend_name(r.backend) << " n=" << r.text_len << " Q=" << r.queries << " m=" << r.query_len
       << " workers=" << r.workers << " tile_len=" << r.tile_len << " matched=" << r.matched
       << " input_s=" << r.input_s << " kernel_s=" << r.kernel_s << " output_s=" << r.output_s
       << " total_s=" << r.total_s << " index_bytes=" << r.index_bytes << '\n';
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out)
        throw FileNotFound(path.string());
    out << doc.dump(2) << '\n';
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact matching of DNA queries against suffix-array and suffix-tree indexes"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "Build a GSA1 suffix-array index from a FASTA reference");
    std::string build_ref, build_out;
    NonAcgtPolicy build_policy = NonAcgtPolicy::Error;
    build->add_option("--reference", build_ref, "Reference FASTA (first record)")->required();
    build->add_option("--out", build_out, "Index output path")->required();
    build->add_option("--non-acgt", build_policy, "Handling of non-ACGT symbols")
        ->transform(CLI::CheckedTransformer(policy_choices, CLI::ignore_case));

    // search
    auto* search = app.add_subcommand("search", "Match a query set against an index");
    std::string search_index, search_queries, search_out, search_report;
    Backend search_backend = Backend::SuffixArray;
    std::size_t search_workers = 1, search_tile = SearchConfig::default_tile_len;
    bool search_positions = false;
    QueryGenSpec search_gen;
    search->add_option("--index", search_index, "GSA1 index file")->required();
    search->add_option("--queries", search_queries, "Query FASTA, or 'generated'")->required();
    search->add_option("--backend", search_backend, "sa or tree")
        ->transform(CLI::CheckedTransformer(backend_choices, CLI::ignore_case));
    search->add_option("--workers", search_workers)->check(CLI::PositiveNumber);
    search->add_option("--tile-len", search_tile)->check(CLI::PositiveNumber);
    search->add_option("--out", search_out, "Results TSV")->required();
    search->add_flag("--positions", search_positions, "Add a positions column");
    search->add_option("--report", search_report, "Write the timing report as JSON");
    search->add_option("--count", search_gen.count, "Generated query count")->check(CLI::PositiveNumber);
    search->add_option("--length", search_gen.length, "Generated query length")->check(CLI::PositiveNumber);
    search->add_option("--mix-ratio", search_gen.mix_ratio)->check(CLI::Range(0.0, 1.0));
    search->add_option("--mutation-rate", search_gen.mutation_rate)->check(CLI::Range(0.0, 1.0));
    search->add_option("--seed", search_gen.seed);

    // gen-queries
    auto* gen = app.add_subcommand("gen-queries", "Generate a seeded query set as FASTA");
    std::string gen_ref, gen_out;
    QueryGenSpec gen_spec;
    gen->add_option("--reference", gen_ref)->required();
    gen->add_option("--count", gen_spec.count)->required()->check(CLI::PositiveNumber);
    gen->add_option("--length", gen_spec.length)->check(CLI::PositiveNumber);
    gen->add_option("--mix-ratio", gen_spec.mix_ratio)->check(CLI::Range(0.0, 1.0));
    gen->add_option("--mutation-rate", gen_spec.mutation_rate)->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gen_spec.seed);
    gen->add_option("--out", gen_out)->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Sweep query counts and report phase timings");
    std::string bench_ref, bench_sweep = "512,1024,2048,4096,8192,16384,32768,65536,131072";
    std::string bench_backend = "both", bench_report, bench_csv;
    std::size_t bench_workers = 1, bench_tile = SearchConfig::default_tile_len, bench_prefix = 1000000;
    QueryGenSpec bench_spec;
    bench->add_option("--reference", bench_ref)->required();
    bench->add_option("--sweep", bench_sweep, "Comma-separated query counts");
    bench->add_option("--backend", bench_backend)->check(CLI::IsMember({"sa", "tree", "both"}));
    bench->add_option("--workers", bench_workers)->check(CLI::PositiveNumber);
    bench->add_option("--tile-len", bench_tile)->check(CLI::PositiveNumber);
    bench->add_option("--prefix-len", bench_prefix, "Use only the first N reference symbols")
        ->check(CLI::PositiveNumber);
    bench->add_option("--length", bench_spec.length)->check(CLI::PositiveNumber);
    bench->add_option("--mix-ratio", bench_spec.mix_ratio)->check(CLI::Range(0.0, 1.0));
    bench->add_option("--mutation-rate", bench_spec.mutation_rate)->check(CLI::Range(0.0, 1.0));
    bench->add_option("--seed", bench_spec.seed);
    bench->add_option("--report", bench_report, "JSON report path")->required();
    bench->add_option("--csv", bench_csv, "CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*build) {
            const auto rec = read_fasta(build_ref, build_policy);
            const auto sa = build_dc3(rec.sequence);
            write_index(build_out, sa, rec.sequence);
            out << "indexed " << rec.id << ": " << rec.sequence.size() << " nt, " << sa.bytes()
                << " suffix-array bytes\n";
        } else if (*search) {
            BenchRequest req;
            req.reference = {search_index, ReferenceInput::Kind::Index, std::nullopt, NonAcgtPolicy::Error};
            if (search_queries == "generated")
                req.queries = search_gen;
            else
                req.queries = std::filesystem::path(search_queries);
            req.matcher = {search_workers, search_tile, search_backend};
            req.results_tsv = search_out;
            req.positions = search_positions;
            const auto report = run_bench(req);
            print_report(err, report);
            if (!search_report.empty())
                write_json(search_report, to_json(report));
        } else if (*gen) {
            const auto ref = read_fasta(gen_ref);
            const auto queries = gen_queries(ref.sequence, gen_spec);
            std::vector<FastaRecord> records;
            records.reserve(queries.size());
            for (std::size_t q = 0; q < queries.size(); ++q)
                records.push_back({"q" + std::to_string(q), queries[q]});
            write_fasta(gen_out, records);
        } else if (*bench) {
            SweepRequest req;
            req.reference = {bench_ref, ReferenceInput::Kind::Fasta, bench_prefix, NonAcgtPolicy::Skip};
            req.counts = parse_sweep(bench_sweep);
            if (bench_backend == "sa")
                req.backends = {Backend::SuffixArray};
            else if (bench_backend == "tree")
                req.backends = {Backend::SuffixTree};
            else
                req.backends = {Backend::SuffixArray, Backend::SuffixTree};
            req.query_spec = bench_spec;
            req.workers = bench_workers;
            req.tile_len = bench_tile;
            const auto outcome = run_sweep(req);

            std::ofstream csv(bench_csv);
            if (!csv)
                throw FileNotFound(bench_csv);
            csv << bench_csv_header << '\n';
            for (const auto& r : outcome.runs) {
                write_bench_csv_row(csv, r);
                print_report(err, r);
            }
            write_json(bench_report, to_json(req, outcome));
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace gmatch::cli

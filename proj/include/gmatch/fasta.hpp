#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gmatch/error.hpp"
#include "gmatch/sequence.hpp"

namespace gmatch {

/// What to do with characters outside a/c/g/t (N and other IUPAC codes).
enum class NonAcgtPolicy { Error, Skip };

struct FastaRecord {
    std::string id;
    EncodedSequence sequence;
};

namespace detail {

inline std::string header_id(const std::string& line) {
    const auto end = line.find_first_of(" \t", 1);
    return line.substr(1, end == std::string::npos ? std::string::npos : end - 1);
}

inline void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
}

} // namespace detail

/// Parses records from a stream; stops after the first one when first_only is set.
inline std::vector<FastaRecord> parse_fasta(std::istream& in, NonAcgtPolicy policy = NonAcgtPolicy::Error,
                                            bool first_only = false) {
    std::vector<FastaRecord> records;
    std::string id;
    std::vector<Code> codes;
    bool open = false;

    auto close = [&] {
        if (codes.empty())
            throw MalformedFasta("record '" + id + "' has no sequence");
        records.push_back({id, EncodedSequence::from_codes(std::move(codes))});
        codes.clear();
    };

    std::string line;
    while (std::getline(in, line)) {
        detail::strip_cr(line);
        if (line.empty())
            continue;
        if (line.front() == '>') {
            if (open) {
                close();
                if (first_only)
                    return records;
            }
            id = detail::header_id(line);
            open = true;
            continue;
        }
        if (line.front() == ';')
            continue;
        if (!open)
            throw MalformedFasta("sequence data before the first header");
        for (char c : line) {
            const Code code = Alphabet::to_code(c);
            if (code != Alphabet::pad_code) {
                codes.push_back(code);
            } else if (c == ' ' || c == '\t') {
                continue;
            } else if (policy == NonAcgtPolicy::Error) {
                throw InvalidSymbol(codes.size(), c);
            }
        }
    }
    if (!open)
        throw MalformedFasta("no header line");
    close();
    return records;
}

inline std::vector<FastaRecord> read_fasta_records(const std::filesystem::path& path,
                                                   NonAcgtPolicy policy = NonAcgtPolicy::Error) {
    std::ifstream in(path);
    if (!in)
        throw FileNotFound(path.string());
    return parse_fasta(in, policy);
}

/// First record only; multi-record references are not supported.
inline FastaRecord read_fasta(const std::filesystem::path& path, NonAcgtPolicy policy = NonAcgtPolicy::Error) {
    std::ifstream in(path);
    if (!in)
        throw FileNotFound(path.string());
    return std::move(parse_fasta(in, policy, true).front());
}

inline void write_fasta(std::ostream& out, const std::vector<FastaRecord>& records, std::size_t line_width = 80) {
    for (const auto& rec : records) {
        out << '>' << rec.id << '\n';
        const std::string text = decode_sequence(rec.sequence);
        for (std::size_t i = 0; i < text.size(); i += line_width)
            out << std::string_view(text).substr(i, line_width) << '\n';
    }
}

inline void write_fasta(const std::filesystem::path& path, const std::vector<FastaRecord>& records,
                        std::size_t line_width = 80) {
    std::ofstream out(path);
    if (!out)
        throw FileNotFound(path.string());
    write_fasta(out, records, line_width);
}

} // namespace gmatch

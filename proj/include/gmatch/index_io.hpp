#pragma once

// "GSA1" index file:
//   4 bytes   magic "GSA1"
//   8 bytes   n, unsigned little-endian
//   n bytes   nucleotide codes (1..4)
//   4n bytes  suffix positions, unsigned 32-bit little-endian

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "gmatch/error.hpp"
#include "gmatch/sequence.hpp"
#include "gmatch/suffix_array.hpp"

namespace gmatch {

inline constexpr std::array<char, 4> index_magic{'G', 'S', 'A', '1'};

struct IndexFile {
    EncodedSequence text;
    SuffixArray sa;
};

namespace detail {

template <typename UInt>
void put_le(std::ostream& out, UInt value) {
    std::array<char, sizeof(UInt)> bytes;
    for (std::size_t i = 0; i < sizeof(UInt); ++i)
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
    out.write(bytes.data(), bytes.size());
}

template <typename UInt>
UInt get_le(const unsigned char* bytes) {
    UInt value = 0;
    for (std::size_t i = 0; i < sizeof(UInt); ++i)
        value |= static_cast<UInt>(bytes[i]) << (8 * i);
    return value;
}

inline void read_exact(std::istream& in, void* dst, std::size_t len, const char* what) {
    in.read(static_cast<char*>(dst), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in.gcount()) != len)
        throw Truncated(what);
}

} // namespace detail

inline void write_index(std::ostream& out, const SuffixArray& sa, const EncodedSequence& text) {
    if (sa.text_len() != text.size())
        throw LengthMismatch(text.size(), sa.text_len());
    out.write(index_magic.data(), index_magic.size());
    detail::put_le<std::uint64_t>(out, text.size());
    out.write(reinterpret_cast<const char*>(text.data()), static_cast<std::streamsize>(text.size()));
    std::vector<char> buf(sa.size() * 4);
    for (std::size_t i = 0; i < sa.size(); ++i)
        for (std::size_t b = 0; b < 4; ++b)
            buf[4 * i + b] = static_cast<char>((sa[i] >> (8 * b)) & 0xff);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

inline void write_index(const std::filesystem::path& path, const SuffixArray& sa, const EncodedSequence& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FileNotFound(path.string());
    write_index(out, sa, text);
    if (!out)
        throw Error("failed writing index " + path.string());
}

/// Validates magic, lengths, codes and the permutation property of sa.
inline IndexFile read_index(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (in.gcount() != static_cast<std::streamsize>(magic.size()) || magic != index_magic)
        throw BadMagic();

    std::array<unsigned char, 8> len_bytes{};
    detail::read_exact(in, len_bytes.data(), len_bytes.size(), "length field");
    const std::uint64_t n = detail::get_le<std::uint64_t>(len_bytes.data());
    if (n == 0 || n >= max_text_len)
        throw CorruptIndex("text length " + std::to_string(n) + " out of range");

    // Reject short files before allocating for a bogus length field.
    if (const auto here = in.tellg(); here != std::streampos(-1)) {
        in.seekg(0, std::ios::end);
        const auto end = in.tellg();
        in.seekg(here);
        if (end != std::streampos(-1) && static_cast<std::uint64_t>(end - here) < 5 * n)
            throw Truncated("payload shorter than declared length");
    }

    std::vector<Code> codes(n);
    detail::read_exact(in, codes.data(), n, "sequence codes");
    for (std::size_t i = 0; i < n; ++i)
        if (!Alphabet::valid(codes[i]))
            throw CorruptIndex("invalid code at position " + std::to_string(i));

    std::vector<unsigned char> raw(n * 4);
    detail::read_exact(in, raw.data(), raw.size(), "suffix positions");
    std::vector<Pos> positions(n);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const Pos p = detail::get_le<Pos>(raw.data() + 4 * i);
        if (p >= n || seen[p])
            throw CorruptIndex("suffix array is not a permutation (index " + std::to_string(i) + ")");
        seen[p] = true;
        positions[i] = p;
    }
    if (in.peek() != std::char_traits<char>::eof())
        throw CorruptIndex("trailing bytes after suffix array");

    return {EncodedSequence::from_codes(std::move(codes)), SuffixArray(std::move(positions))};
}

inline IndexFile read_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FileNotFound(path.string());
    return read_index(in);
}

} // namespace gmatch

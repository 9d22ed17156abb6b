#pragma once

// DNA alphabet and integer-encoded sequences shared by every index structure.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmatch/error.hpp"

namespace gmatch {

using Code = std::uint8_t;

struct Alphabet {
    static constexpr std::array<char, 4> symbols{'a', 'c', 'g', 't'};
    /// Reserved for DC3 padding and the suffix-tree sentinel.
    static constexpr Code pad_code = 0;
    static constexpr Code min_code = 1;
    static constexpr Code max_code = 4;
    /// Codes 0..4, i.e. the sentinel plus the four nucleotides.
    static constexpr std::size_t code_space = 5;

    /// Returns 0 for characters outside the alphabet.
    static constexpr Code to_code(char c) noexcept {
        switch (c) {
        case 'a': case 'A': return 1;
        case 'c': case 'C': return 2;
        case 'g': case 'G': return 3;
        case 't': case 'T': return 4;
        default: return pad_code;
        }
    }

    static constexpr bool valid(Code c) noexcept { return c >= min_code && c <= max_code; }

    static constexpr char to_char(Code c) noexcept { return symbols[c - 1]; }
};

/// Immutable nucleotide sequence stored one code (1..4) per byte.
class EncodedSequence {
public:
    EncodedSequence() = default;

    /// Validating constructor; throws InvalidCode on the first code outside 1..4.
    static EncodedSequence from_codes(std::vector<Code> codes) {
        for (std::size_t i = 0; i < codes.size(); ++i)
            if (!Alphabet::valid(codes[i]))
                throw InvalidCode(i);
        return EncodedSequence(std::move(codes));
    }

    std::size_t size() const noexcept { return codes_.size(); }
    bool empty() const noexcept { return codes_.empty(); }
    Code operator[](std::size_t i) const noexcept { return codes_[i]; }
    std::span<const Code> codes() const noexcept { return codes_; }
    const Code* data() const noexcept { return codes_.data(); }
    auto begin() const noexcept { return codes_.begin(); }
    auto end() const noexcept { return codes_.end(); }

    EncodedSequence substr(std::size_t pos, std::size_t len) const {
        auto first = codes_.begin() + static_cast<std::ptrdiff_t>(pos);
        return EncodedSequence(std::vector<Code>(first, first + static_cast<std::ptrdiff_t>(len)));
    }

    friend bool operator==(const EncodedSequence&, const EncodedSequence&) = default;

private:
    explicit EncodedSequence(std::vector<Code> codes) : codes_(std::move(codes)) {}

    friend EncodedSequence encode_sequence(std::string_view);

    std::vector<Code> codes_;
};

inline EncodedSequence encode_sequence(std::string_view text) {
    if (text.empty())
        throw EmptySequence();
    std::vector<Code> codes(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        Code c = Alphabet::to_code(text[i]);
        if (c == Alphabet::pad_code)
            throw InvalidSymbol(i, text[i]);
        codes[i] = c;
    }
    return EncodedSequence(std::move(codes));
}

inline std::string decode_sequence(std::span<const Code> codes) {
    std::string out(codes.size(), '\0');
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (!Alphabet::valid(codes[i]))
            throw InvalidCode(i);
        out[i] = Alphabet::to_char(codes[i]);
    }
    return out;
}

inline std::string decode_sequence(const EncodedSequence& seq) { return decode_sequence(seq.codes()); }

/// Ordered queries; the index of a query is its identity in every result.
class QuerySet {
public:
    QuerySet() = default;
    explicit QuerySet(std::vector<EncodedSequence> queries) : queries_(std::move(queries)) {
        if (!queries_.empty()) {
            std::size_t m = queries_.front().size();
            bool uniform = true;
            for (const auto& q : queries_)
                uniform = uniform && q.size() == m;
            if (uniform)
                uniform_length_ = m;
        }
    }

    std::size_t size() const noexcept { return queries_.size(); }
    bool empty() const noexcept { return queries_.empty(); }
    const EncodedSequence& operator[](std::size_t q) const noexcept { return queries_[q]; }
    auto begin() const noexcept { return queries_.begin(); }
    auto end() const noexcept { return queries_.end(); }

    /// Present when every query has the same length.
    std::optional<std::size_t> uniform_length() const noexcept { return uniform_length_; }

    friend bool operator==(const QuerySet&, const QuerySet&) = default;

private:
    std::vector<EncodedSequence> queries_;
    std::optional<std::size_t> uniform_length_;
};

} // namespace gmatch

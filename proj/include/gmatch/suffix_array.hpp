#pragma once

// Suffix array construction (DC3 / skew), a comparison-sort reference builder,
// the inverse rank array and a structural verifier.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "gmatch/error.hpp"
#include "gmatch/sequence.hpp"

namespace gmatch {

using Pos = std::uint32_t;

/// Texts at or beyond this length cannot be indexed with 32-bit positions
/// once the three padding symbols are appended.
inline constexpr std::size_t max_text_len = (std::size_t{1} << 32) - 3;

inline void check_text_length(std::size_t n) {
    if (n >= max_text_len)
        throw TextTooLong(n);
}

/// Lexicographically sorted suffix start positions.
class SuffixArray {
public:
    SuffixArray() = default;
    explicit SuffixArray(std::vector<Pos> positions) : sa_(std::move(positions)) {}

    std::size_t text_len() const noexcept { return sa_.size(); }
    std::size_t size() const noexcept { return sa_.size(); }
    Pos operator[](std::size_t i) const noexcept { return sa_[i]; }
    std::span<const Pos> positions() const noexcept { return sa_; }
    auto begin() const noexcept { return sa_.begin(); }
    auto end() const noexcept { return sa_.end(); }
    std::size_t bytes() const noexcept { return sa_.size() * sizeof(Pos); }

    friend bool operator==(const SuffixArray&, const SuffixArray&) = default;

private:
    std::vector<Pos> sa_;
};

/// rank[p] is the 0-based position of suffix p in the suffix array.
class RankArray {
public:
    RankArray() = default;
    explicit RankArray(std::vector<Pos> ranks) : rank_(std::move(ranks)) {}

    std::size_t size() const noexcept { return rank_.size(); }
    Pos operator[](std::size_t p) const noexcept { return rank_[p]; }
    std::span<const Pos> ranks() const noexcept { return rank_; }

    friend bool operator==(const RankArray&, const RankArray&) = default;

private:
    std::vector<Pos> rank_;
};

/// Intermediate state of the top-level DC3 pass.
struct Dc3Trace {
    /// Positions i < n with i mod 3 == 1, followed by those with i mod 3 == 2.
    std::vector<Pos> sample_positions;
    /// 1-based rank of every sample suffix among the sample suffixes.
    std::map<Pos, Pos> sample_ranks;
    /// Positions i mod 3 == 0 in sorted suffix order.
    std::vector<Pos> nonsample_order;
    /// 1-based rank of every suffix in the final order.
    std::vector<Pos> full_rank_1based;
};

namespace detail {

/// Stable counting sort of `in` into `out` keyed by keys[in[i]], keys in 0..alphabet.
inline void radix_pass(const Pos* in, Pos* out, const Pos* keys, std::size_t count, std::size_t alphabet) {
    std::vector<Pos> bucket(alphabet + 2, 0);
    for (std::size_t i = 0; i < count; ++i)
        ++bucket[keys[in[i]] + 1];
    for (std::size_t c = 1; c < bucket.size(); ++c)
        bucket[c] += bucket[c - 1];
    for (std::size_t i = 0; i < count; ++i)
        out[bucket[keys[in[i]]]++] = in[i];
}

inline bool leq(Pos a1, Pos a2, Pos b1, Pos b2) { return a1 < b1 || (a1 == b1 && a2 <= b2); }

inline bool leq(Pos a1, Pos a2, Pos a3, Pos b1, Pos b2, Pos b3) {
    return a1 < b1 || (a1 == b1 && leq(a2, a3, b2, b3));
}

struct TopLevelTrace {
    std::vector<Pos> sorted_samples;
    std::vector<Pos> nonsample_order;
};

// Sorts the suffixes of s[0..n) with symbols in 1..alphabet into sa.
// Requires n >= 2 and s[n] == s[n+1] == s[n+2] == 0.
inline void dc3(const Pos* s, Pos* sa, std::size_t n, std::size_t alphabet, TopLevelTrace* trace) {
    const std::size_t n0 = (n + 2) / 3;
    const std::size_t n1 = (n + 1) / 3;
    const std::size_t n2 = n / 3;
    const std::size_t n02 = n0 + n2;

    std::vector<Pos> s12(n02 + 3, 0);
    std::vector<Pos> sa12(n02 + 3, 0);
    std::vector<Pos> s0(n0);
    std::vector<Pos> sa0(n0);

    // Sample positions; when n mod 3 == 1 the empty suffix at n joins B1.
    for (std::size_t i = 0, j = 0; i < n + (n0 - n1); ++i)
        if (i % 3 != 0)
            s12[j++] = static_cast<Pos>(i);

    // Least-significant symbol first over the 3-symbol blocks.
    radix_pass(s12.data(), sa12.data(), s + 2, n02, alphabet);
    radix_pass(sa12.data(), s12.data(), s + 1, n02, alphabet);
    radix_pass(s12.data(), sa12.data(), s, n02, alphabet);

    std::size_t names = 0;
    Pos c0 = std::numeric_limits<Pos>::max(), c1 = c0, c2 = c0;
    for (std::size_t i = 0; i < n02; ++i) {
        const Pos p = sa12[i];
        if (s[p] != c0 || s[p + 1] != c1 || s[p + 2] != c2) {
            ++names;
            c0 = s[p];
            c1 = s[p + 1];
            c2 = s[p + 2];
        }
        // Reduced string R = R1 . R2
        if (p % 3 == 1)
            s12[p / 3] = static_cast<Pos>(names);
        else
            s12[p / 3 + n0] = static_cast<Pos>(names);
    }

    if (names < n02) {
        dc3(s12.data(), sa12.data(), n02, names, nullptr);
        for (std::size_t i = 0; i < n02; ++i)
            s12[sa12[i]] = static_cast<Pos>(i + 1);
    } else {
        for (std::size_t i = 0; i < n02; ++i)
            sa12[s12[i] - 1] = static_cast<Pos>(i);
    }

    auto sample_pos = [&](std::size_t t) -> Pos {
        return sa12[t] < n0 ? static_cast<Pos>(sa12[t] * 3 + 1) : static_cast<Pos>((sa12[t] - n0) * 3 + 2);
    };

    // Non-sample suffixes: the order of B1 ranks is already the order of
    // rank(S_{i+1}), so one stable pass on the first symbol finishes them.
    for (std::size_t i = 0, j = 0; i < n02; ++i)
        if (sa12[i] < n0)
            s0[j++] = 3 * sa12[i];
    radix_pass(s0.data(), sa0.data(), s, n0, alphabet);

    if (trace) {
        trace->sorted_samples.clear();
        for (std::size_t t = 0; t < n02; ++t)
            trace->sorted_samples.push_back(sample_pos(t));
        trace->nonsample_order.assign(sa0.begin(), sa0.end());
    }

    // Merge; t starts past the dummy suffix when one was added.
    std::size_t p = 0, t = n0 - n1, k = 0;
    while (k < n) {
        const Pos i = sample_pos(t);
        const Pos j = sa0[p];
        const bool sample_first =
            sa12[t] < n0 ? leq(s[i], s12[sa12[t] + n0], s[j], s12[j / 3])
                         : leq(s[i], s[i + 1], s12[sa12[t] - n0 + 1], s[j], s[j + 1], s12[j / 3 + n0]);
        if (sample_first) {
            sa[k++] = i;
            if (++t == n02) {
                for (; p < n0; ++p)
                    sa[k++] = sa0[p];
            }
        } else {
            sa[k++] = j;
            if (++p == n0) {
                for (; t < n02; ++t)
                    sa[k++] = sample_pos(t);
            }
        }
    }
}

inline std::vector<Pos> padded_codes(const EncodedSequence& seq) {
    std::vector<Pos> s(seq.size() + 3, Alphabet::pad_code);
    std::copy(seq.begin(), seq.end(), s.begin());
    return s;
}

inline SuffixArray build_dc3_impl(const EncodedSequence& seq, TopLevelTrace* trace) {
    const std::size_t n = seq.size();
    if (n == 0)
        throw EmptySequence();
    check_text_length(n);
    if (n == 1) {
        if (trace) {
            trace->sorted_samples.clear();
            trace->nonsample_order = {0};
        }
        return SuffixArray({0});
    }
    const auto s = padded_codes(seq);
    std::vector<Pos> sa(n);
    dc3(s.data(), sa.data(), n, Alphabet::max_code, trace);
    return SuffixArray(std::move(sa));
}

inline bool suffix_less(std::span<const Code> text, Pos a, Pos b) {
    return std::lexicographical_compare(text.begin() + a, text.end(), text.begin() + b, text.end());
}

} // namespace detail

/// Linear-time skew construction.
inline SuffixArray build_dc3(const EncodedSequence& seq) { return detail::build_dc3_impl(seq, nullptr); }

/// O(n^2 log n) worst case; sorts suffix start positions by direct comparison.
inline SuffixArray build_naive(const EncodedSequence& seq) {
    if (seq.empty())
        throw EmptySequence();
    check_text_length(seq.size());
    std::vector<Pos> sa(seq.size());
    std::iota(sa.begin(), sa.end(), Pos{0});
    const auto text = seq.codes();
    std::sort(sa.begin(), sa.end(), [&](Pos a, Pos b) { return detail::suffix_less(text, a, b); });
    return SuffixArray(std::move(sa));
}

inline RankArray rank_array(const SuffixArray& sa) {
    std::vector<Pos> rank(sa.size());
    for (std::size_t i = 0; i < sa.size(); ++i)
        rank[sa[i]] = static_cast<Pos>(i);
    return RankArray(std::move(rank));
}

/// Runs DC3 and reports the sample ranks, non-sample order and final ranks
/// of the top-level pass. The dummy sample suffix added when n mod 3 == 1
/// is not reported.
inline Dc3Trace build_dc3_trace(const EncodedSequence& seq) {
    detail::TopLevelTrace top;
    const SuffixArray sa = detail::build_dc3_impl(seq, &top);
    const std::size_t n = seq.size();

    Dc3Trace trace;
    for (std::size_t i = 1; i < n; i += 3)
        trace.sample_positions.push_back(static_cast<Pos>(i));
    for (std::size_t i = 2; i < n; i += 3)
        trace.sample_positions.push_back(static_cast<Pos>(i));

    Pos next = 1;
    for (Pos p : top.sorted_samples)
        if (p < n)
            trace.sample_ranks.emplace(p, next++);

    trace.nonsample_order = std::move(top.nonsample_order);

    trace.full_rank_1based.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        trace.full_rank_1based[sa[i]] = static_cast<Pos>(i + 1);
    return trace;
}

struct Verdict {
    enum class Kind { Ok, NotPermutation, OutOfOrder };

    Kind kind = Kind::Ok;
    /// First offending suffix-array index; meaningless when ok().
    std::size_t index = 0;

    bool ok() const noexcept { return kind == Kind::Ok; }
    explicit operator bool() const noexcept { return ok(); }
};

/// Checks the permutation property, then strict ordering of adjacent suffixes.
inline Verdict verify(const SuffixArray& sa, const EncodedSequence& seq) {
    const std::size_t n = seq.size();
    if (sa.text_len() != n)
        throw LengthMismatch(n, sa.text_len());

    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (sa[i] >= n || seen[sa[i]])
            return {Verdict::Kind::NotPermutation, i};
        seen[sa[i]] = true;
    }
    const auto text = seq.codes();
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!detail::suffix_less(text, sa[i], sa[i + 1]))
            return {Verdict::Kind::OutOfOrder, i};
    return {};
}

} // namespace gmatch

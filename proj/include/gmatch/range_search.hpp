#pragma once

// Exact-match range search over a suffix array: tiled prefix comparison and
// the two binary searches for the left and right boundaries (LB, RB), plus
// the O(m) suffix-tree walk that answers the same question.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gmatch/error.hpp"
#include "gmatch/sequence.hpp"
#include "gmatch/suffix_array.hpp"
#include "gmatch/suffix_tree.hpp"

namespace gmatch {

/// Order of the pattern relative to a suffix truncated to the pattern length.
enum class PrefixOrder {
    Less,        ///< pattern sorts before the suffix
    PrefixEqual, ///< pattern is a prefix of the suffix
    Greater,     ///< pattern sorts after the suffix (includes suffix being a proper prefix of it)
};

struct MatchRange {
    std::size_t lb = 0;
    std::size_t rb = 0;

    std::size_t count() const noexcept { return rb - lb + 1; }
    friend bool operator==(const MatchRange&, const MatchRange&) = default;
};

struct SearchConfig {
    static constexpr std::size_t default_tile_len = 64;

    /// Symbols compared per chunk.
    std::size_t tile_len = default_tile_len;
};

/// Optional instrumentation for the boundary searches.
struct SearchProbe {
    std::size_t lb_pivots = 0;
    std::size_t rb_pivots = 0;
};

inline PrefixOrder prefix_compare(const EncodedSequence& pattern, const EncodedSequence& text, std::size_t suffix_pos,
                                  const SearchConfig& cfg = {}) {
    if (pattern.empty())
        throw EmptyPattern();
    if (suffix_pos >= text.size())
        throw OutOfBounds(suffix_pos, text.size());

    const std::size_t tile = std::max<std::size_t>(cfg.tile_len, 1);
    const Code* query = pattern.data();
    const Code* suffix = text.data() + suffix_pos;
    const std::size_t m = pattern.size();
    const std::size_t avail = text.size() - suffix_pos;

    for (std::size_t k = 0; k < m; k += tile) {
        // A tile of the suffix may be cut short by the end of the text.
        const std::size_t want = std::min(tile, m - k);
        const std::size_t have = k < avail ? std::min(want, avail - k) : 0;
        const auto [q, s] = std::mismatch(query + k, query + k + have, suffix + k);
        if (q != query + k + have)
            return *q < *s ? PrefixOrder::Less : PrefixOrder::Greater;
        if (have < want)
            return PrefixOrder::Greater;
    }
    return PrefixOrder::PrefixEqual;
}

namespace detail {

inline void require_pattern(const EncodedSequence& pattern) {
    if (pattern.empty())
        throw EmptyPattern();
}

} // namespace detail

/// Smallest suffix-array index whose suffix starts with pattern. Binary search
/// over "truncated suffix >= pattern" between virtual sentinels -1 and n.
inline std::optional<std::size_t> find_lb(const SuffixArray& sa, const EncodedSequence& text,
                                          const EncodedSequence& pattern, const SearchConfig& cfg = {},
                                          SearchProbe* probe = nullptr) {
    detail::require_pattern(pattern);
    std::int64_t left = -1;
    std::int64_t right = static_cast<std::int64_t>(sa.size());
    bool right_matches = false;
    while (right > left + 1) {
        const std::int64_t pivot = (left + right) >> 1;
        if (probe)
            ++probe->lb_pivots;
        const PrefixOrder ord = prefix_compare(pattern, text, sa[static_cast<std::size_t>(pivot)], cfg);
        if (ord == PrefixOrder::Greater) {
            left = pivot;
        } else {
            right = pivot;
            right_matches = ord == PrefixOrder::PrefixEqual;
        }
    }
    if (!right_matches)
        return std::nullopt;
    return static_cast<std::size_t>(right);
}

/// Largest suffix-array index whose suffix starts with pattern.
inline std::optional<std::size_t> find_rb(const SuffixArray& sa, const EncodedSequence& text,
                                          const EncodedSequence& pattern, const SearchConfig& cfg = {},
                                          SearchProbe* probe = nullptr) {
    detail::require_pattern(pattern);
    std::int64_t left = -1;
    std::int64_t right = static_cast<std::int64_t>(sa.size());
    bool left_matches = false;
    while (right > left + 1) {
        const std::int64_t pivot = (left + right) >> 1;
        if (probe)
            ++probe->rb_pivots;
        const PrefixOrder ord = prefix_compare(pattern, text, sa[static_cast<std::size_t>(pivot)], cfg);
        if (ord == PrefixOrder::Less) {
            right = pivot;
        } else {
            left = pivot;
            left_matches = ord == PrefixOrder::PrefixEqual;
        }
    }
    if (!left_matches)
        return std::nullopt;
    return static_cast<std::size_t>(left);
}

inline std::optional<MatchRange> find_range(const SuffixArray& sa, const EncodedSequence& text,
                                            const EncodedSequence& pattern, const SearchConfig& cfg = {},
                                            SearchProbe* probe = nullptr) {
    detail::require_pattern(pattern);
    const auto lb = find_lb(sa, text, pattern, cfg, probe);
    if (!lb)
        return std::nullopt;
    const auto rb = find_rb(sa, text, pattern, cfg, probe);
    return MatchRange{*lb, *rb};
}

/// Suffix starts {sa[i] : lb <= i <= rb} in suffix-array order.
inline std::vector<Pos> range_positions(const SuffixArray& sa, const MatchRange& range) {
    auto first = sa.begin() + static_cast<std::ptrdiff_t>(range.lb);
    return std::vector<Pos>(first, first + static_cast<std::ptrdiff_t>(range.count()));
}

namespace detail {

/// Node whose subtree holds exactly the occurrences of pattern, or no_node.
inline NodeIndex tree_locate(const FlatSuffixTree& tree, const EncodedSequence& pattern) {
    const std::size_t m = pattern.size();
    const auto text = tree.extended_text();
    NodeIndex v = tree.root();
    std::size_t k = 0;
    while (k < m) {
        const NodeIndex next = tree.nodes()[v].child[pattern[k]];
        if (next == no_node)
            return no_node;
        const TreeNode& edge = tree.nodes()[next];
        const std::size_t len = std::min<std::size_t>(edge.edge_length(), m - k);
        if (!std::equal(pattern.data() + k, pattern.data() + k + len, text.data() + edge.edge_start))
            return no_node;
        k += len;
        v = next;
    }
    return v;
}

} // namespace detail

/// Ascending occurrence positions of pattern; empty when it does not occur.
inline std::vector<Pos> tree_find(const FlatSuffixTree& tree, const EncodedSequence& text,
                                  const EncodedSequence& pattern) {
    detail::require_pattern(pattern);
    if (text.size() != tree.text_len())
        throw LengthMismatch(tree.text_len(), text.size());
    const NodeIndex v = detail::tree_locate(tree, pattern);
    if (v == no_node)
        return {};
    return collect_occurrences(tree, v);
}

} // namespace gmatch

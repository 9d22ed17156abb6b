#pragma once

// Many queries against one shared index. Each query is handled by exactly one
// worker and each worker writes only its own result slots; the call joins all
// workers before returning.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "gmatch/error.hpp"
#include "gmatch/range_search.hpp"
#include "gmatch/sequence.hpp"
#include "gmatch/suffix_array.hpp"
#include "gmatch/suffix_tree.hpp"

namespace gmatch {

enum class Backend { SuffixArray, SuffixTree };

inline std::string_view backend_name(Backend b) noexcept {
    return b == Backend::SuffixArray ? "suffix_array" : "suffix_tree";
}

struct MatcherConfig {
    std::size_t workers = 1;
    std::size_t tile_len = SearchConfig::default_tile_len;
    Backend backend = Backend::SuffixArray;
};

/// flat[2q] = LB, flat[2q + 1] = RB; (-1, -1) when query q does not occur.
struct BatchResult {
    std::vector<std::int64_t> flat;

    std::size_t query_count() const noexcept { return flat.size() / 2; }
    std::int64_t lb(std::size_t q) const noexcept { return flat[2 * q]; }
    std::int64_t rb(std::size_t q) const noexcept { return flat[2 * q + 1]; }

    friend bool operator==(const BatchResult&, const BatchResult&) = default;
};

/// Anything that can turn one query into a suffix-array range.
template <typename T>
concept RangeLocator = requires(const T& locator, const EncodedSequence& pattern) {
    { locator.locate(pattern) } -> std::same_as<std::optional<MatchRange>>;
};

class SuffixArrayLocator {
public:
    SuffixArrayLocator(const SuffixArray& sa, const EncodedSequence& text, SearchConfig cfg = {})
        : sa_(&sa), text_(&text), cfg_(cfg) {}

    std::optional<MatchRange> locate(const EncodedSequence& pattern) const {
        return find_range(*sa_, *text_, pattern, cfg_);
    }

private:
    const SuffixArray* sa_;
    const EncodedSequence* text_;
    SearchConfig cfg_;
};

/// Tree walk whose occurrence set is mapped to (lb, rb) through the rank array.
class SuffixTreeLocator {
public:
    SuffixTreeLocator(const FlatSuffixTree& tree, const EncodedSequence& text, const RankArray& rank)
        : tree_(&tree), text_(&text), rank_(&rank) {}

    std::optional<MatchRange> locate(const EncodedSequence& pattern) const {
        const auto occurrences = tree_find(*tree_, *text_, pattern);
        if (occurrences.empty())
            return std::nullopt;
        Pos lo = (*rank_)[occurrences.front()];
        Pos hi = lo;
        for (Pos p : occurrences) {
            lo = std::min(lo, (*rank_)[p]);
            hi = std::max(hi, (*rank_)[p]);
        }
        return MatchRange{lo, hi};
    }

private:
    const FlatSuffixTree* tree_;
    const EncodedSequence* text_;
    const RankArray* rank_;
};

namespace detail {

/// Runs body(begin, end) over contiguous blocks of [0, count) on `workers` threads.
template <typename Body>
void parallel_blocks(std::size_t count, std::size_t workers, Body&& body) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        body(std::size_t{0}, count);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = count * w / workers;
            const std::size_t end = count * (w + 1) / workers;
            threads.emplace_back([&, w, begin, end] {
                try {
                    body(begin, end);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace detail

template <RangeLocator Locator>
BatchResult match_batch(const Locator& locator, const QuerySet& queries, std::size_t workers) {
    if (queries.empty())
        throw EmptyQuerySet();
    for (std::size_t q = 0; q < queries.size(); ++q)
        if (queries[q].empty())
            throw EmptyPattern(q);

    BatchResult res;
    res.flat.assign(2 * queries.size(), -1);
    detail::parallel_blocks(queries.size(), workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t q = begin; q < end; ++q) {
            if (const auto range = locator.locate(queries[q])) {
                res.flat[2 * q] = static_cast<std::int64_t>(range->lb);
                res.flat[2 * q + 1] = static_cast<std::int64_t>(range->rb);
            }
        }
    });
    return res;
}

/// Suffix-array backend.
inline BatchResult match_batch(const SuffixArray& sa, const EncodedSequence& text, const QuerySet& queries,
                               const MatcherConfig& cfg) {
    return match_batch(SuffixArrayLocator(sa, text, SearchConfig{cfg.tile_len}), queries, cfg.workers);
}

/// Suffix-tree backend.
inline BatchResult match_batch(const FlatSuffixTree& tree, const RankArray& rank, const EncodedSequence& text,
                               const QuerySet& queries, const MatcherConfig& cfg) {
    return match_batch(SuffixTreeLocator(tree, text, rank), queries, cfg.workers);
}

struct ResultRow {
    std::size_t query_id = 0;
    std::int64_t lb = -1;
    std::int64_t rb = -1;
    std::size_t count = 0;
    std::optional<std::vector<Pos>> positions;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

inline std::vector<ResultRow> result_rows(const BatchResult& res, const SuffixArray& sa, bool with_positions) {
    std::vector<ResultRow> rows;
    rows.reserve(res.query_count());
    for (std::size_t q = 0; q < res.query_count(); ++q) {
        ResultRow row{q, res.lb(q), res.rb(q), 0, std::nullopt};
        const bool hit = row.lb >= 0;
        if (hit)
            row.count = static_cast<std::size_t>(row.rb - row.lb + 1);
        if (with_positions) {
            row.positions.emplace();
            if (hit) {
                MatchRange range{static_cast<std::size_t>(row.lb), static_cast<std::size_t>(row.rb)};
                row.positions = range_positions(sa, range);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace gmatch

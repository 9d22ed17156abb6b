#pragma once

// Seeded query-set generation: a fraction of the queries are substrings of the
// reference (optionally mutated), the rest are uniform random nucleotides.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "gmatch/error.hpp"
#include "gmatch/sequence.hpp"

namespace gmatch {

/// Name of the generator behind gen_queries, recorded in bench reports.
inline constexpr std::string_view query_rng_name = "mt19937_64";

struct QueryGenSpec {
    std::size_t count = 512;
    std::size_t length = 1024;
    /// Fraction of queries sampled from the reference.
    double mix_ratio = 0.5;
    /// Per-symbol substitution probability for sampled queries.
    double mutation_rate = 0.0;
    std::uint64_t seed = 1;

    void validate() const {
        if (count == 0)
            throw Error("query count must be at least 1");
        if (length == 0)
            throw Error("query length must be at least 1");
        if (!(mix_ratio >= 0.0 && mix_ratio <= 1.0))
            throw Error("mix ratio must lie in [0, 1]");
        if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
            throw Error("mutation rate must lie in [0, 1]");
    }

    std::size_t sampled_count() const noexcept {
        return static_cast<std::size_t>(mix_ratio * static_cast<double>(count));
    }
};

namespace detail {

inline double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline Code random_code(std::mt19937_64& rng) { return static_cast<Code>(rng() % 4 + 1); }

} // namespace detail

/// Queries [0, sampled_count()) come from the reference, the rest are random.
/// Output depends only on the reference and the spec.
inline QuerySet gen_queries(const EncodedSequence& reference, const QueryGenSpec& spec) {
    spec.validate();
    const std::size_t sampled = spec.sampled_count();
    const std::size_t m = spec.length;
    if (sampled > 0 && reference.size() < m)
        throw ReferenceTooShort(reference.size(), m);

    std::mt19937_64 rng(spec.seed);
    std::vector<EncodedSequence> queries;
    queries.reserve(spec.count);
    std::vector<Code> buf(m);

    const std::uint64_t offsets = reference.size() >= m ? reference.size() - m + 1 : 0;
    for (std::size_t q = 0; q < sampled; ++q) {
        const std::size_t offset = static_cast<std::size_t>(rng() % offsets);
        for (std::size_t k = 0; k < m; ++k) {
            Code c = reference[offset + k];
            if (spec.mutation_rate > 0.0 && detail::unit_interval(rng) < spec.mutation_rate) {
                // substitute one of the three other nucleotides
                c = static_cast<Code>((c - 1 + rng() % 3 + 1) % 4 + 1);
            }
            buf[k] = c;
        }
        queries.push_back(EncodedSequence::from_codes(buf));
    }
    for (std::size_t q = sampled; q < spec.count; ++q) {
        for (auto& c : buf)
            c = detail::random_code(rng);
        queries.push_back(EncodedSequence::from_codes(buf));
    }
    return QuerySet(std::move(queries));
}

} // namespace gmatch

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "gmatch/sequence.hpp"
#include "oracles.hpp"

using namespace gmatch;

TEST_CASE("encode_sequence maps acgt to 1..4", "[sequence]") {
    const auto ac = encode_sequence("ac");
    CHECK(std::vector<Code>(ac.begin(), ac.end()) == std::vector<Code>{1, 2});

    const auto seq = encode_sequence("acggtacgtac");
    CHECK(std::vector<Code>(seq.begin(), seq.end()) == std::vector<Code>{1, 2, 3, 3, 4, 1, 2, 3, 4, 1, 2});
    CHECK(encode_sequence("ACgT") == encode_sequence("acgt"));
}

TEST_CASE("encode_sequence rejects symbols outside the alphabet", "[sequence]") {
    try {
        encode_sequence("acgn");
        FAIL("expected InvalidSymbol");
    } catch (const InvalidSymbol& e) {
        CHECK(e.position() == 3);
        CHECK(e.symbol() == 'n');
    }
    CHECK_THROWS_AS(encode_sequence("acgR"), InvalidSymbol);
    CHECK_THROWS_AS(encode_sequence(""), EmptySequence);
}

TEST_CASE("decode_sequence inverts the mapping", "[sequence]") {
    const std::vector<Code> ac{1, 2};
    const std::vector<Code> tac{4, 1, 2};
    CHECK(decode_sequence(ac) == "ac");
    CHECK(decode_sequence(tac) == "tac");

    const std::vector<Code> bad{5};
    try {
        decode_sequence(bad);
        FAIL("expected InvalidCode");
    } catch (const InvalidCode& e) {
        CHECK(e.position() == 0);
    }
    CHECK_THROWS_AS(EncodedSequence::from_codes({1, 0, 2}), InvalidCode);
}

TEST_CASE("round trip and order preservation", "[sequence][property]") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t len = 1 + rng() % (trial < 10 ? 10000 : 64);
        const std::string s = oracle::random_dna(rng, len);
        const auto enc = encode_sequence(s);
        REQUIRE(decode_sequence(enc) == s);

        const std::string t = oracle::random_dna(rng, 1 + rng() % 64);
        const auto enc_t = encode_sequence(t);
        const bool code_less = std::lexicographical_compare(enc.begin(), enc.end(), enc_t.begin(), enc_t.end());
        REQUIRE(code_less == (s < t));
    }
}

TEST_CASE("QuerySet reports a uniform length only when all queries agree", "[sequence]") {
    QuerySet same({encode_sequence("acg"), encode_sequence("ttt")});
    CHECK(same.uniform_length() == 3u);
    QuerySet mixed({encode_sequence("acg"), encode_sequence("tt")});
    CHECK_FALSE(mixed.uniform_length().has_value());
    CHECK(mixed[1] == encode_sequence("tt"));
}

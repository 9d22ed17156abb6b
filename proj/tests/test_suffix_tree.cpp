#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gmatch/range_search.hpp"
#include "gmatch/suffix_array.hpp"
#include "gmatch/suffix_tree.hpp"
#include "oracles.hpp"

using namespace gmatch;

namespace {

std::size_t child_count(const TreeNode& v) {
    return static_cast<std::size_t>(std::count_if(v.child.begin(), v.child.end(), [](NodeIndex c) { return c != no_node; }));
}

// Checks branching, distinct first symbols and that each root-to-leaf path spells its suffix.
void check_structure(const FlatSuffixTree& tree, const std::string& text) {
    const std::size_t n = text.size();
    const auto ext = tree.extended_text();
    std::size_t leaves = 0;
    std::set<Pos> suffixes;

    struct Frame {
        NodeIndex v;
        std::vector<Code> label;
    };
    std::vector<Frame> stack{{tree.root(), {}}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const TreeNode& node = tree.node(f.v);
        if (node.is_leaf()) {
            ++leaves;
            REQUIRE(child_count(node) == 0);
            suffixes.insert(node.leaf_suffix);
            std::vector<Code> expected(ext.begin() + node.leaf_suffix, ext.end());
            REQUIRE(f.label == expected);
            continue;
        }
        const std::size_t kids = child_count(node);
        REQUIRE(kids >= 2);
        REQUIRE(kids <= 5);
        for (std::size_t c = 0; c < node.child.size(); ++c) {
            if (node.child[c] == no_node)
                continue;
            const TreeNode& kid = tree.node(node.child[c]);
            REQUIRE(kid.edge_length() >= 1);
            // the slot index is the first symbol of the edge
            REQUIRE(ext[kid.edge_start] == c);
            Frame next{node.child[c], f.label};
            next.label.insert(next.label.end(), ext.begin() + kid.edge_start, ext.begin() + kid.edge_end);
            stack.push_back(std::move(next));
        }
    }
    REQUIRE(leaves == n + 1);
    REQUIRE(suffixes.size() == n + 1);
    REQUIRE(*suffixes.rbegin() == n);
}

} // namespace

TEST_CASE("tree of the worked example", "[suffix_tree]") {
    const std::string s = "acggtacgtac";
    const auto tree = build_tree(encode_sequence(s));
    check_structure(tree, s);
    CHECK(child_count(tree.node(tree.root())) == 5);
    CHECK(tree_stats(tree).leaf_count == 12);
}

TEST_CASE("smallest tree", "[suffix_tree]") {
    const auto tree = build_tree(encode_sequence("a"));
    check_structure(tree, "a");
    const auto stats = tree_stats(tree);
    CHECK(stats.node_count == 3);
    CHECK(stats.leaf_count == 2);
    CHECK(stats.internal_count == 1);
    CHECK(stats.bytes == 3 * sizeof(TreeNode));
}

TEST_CASE("tree of a repeated symbol matches the compacted trie", "[suffix_tree]") {
    const auto tree = build_tree(encode_sequence("aaaa"));
    check_structure(tree, "aaaa");
    const auto census = oracle::suffix_trie_census("aaaa");
    const auto stats = tree_stats(tree);
    CHECK(stats.leaf_count == census.leaves);
    CHECK(stats.internal_count == census.branching);
    for (const auto& v : tree.nodes())
        if (!v.is_leaf())
            CHECK(child_count(v) == 2);
}

TEST_CASE("internal node census matches a brute-force trie", "[suffix_tree][property]") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 150; ++trial) {
        const std::string s = oracle::mixed_dna(rng, 1 + rng() % 120);
        const auto stats = tree_stats(build_tree(encode_sequence(s)));
        const auto census = oracle::suffix_trie_census(s);
        REQUIRE(stats.leaf_count == census.leaves);
        REQUIRE(stats.internal_count == census.branching);
        REQUIRE(stats.node_count == stats.leaf_count + stats.internal_count);
    }
}

TEST_CASE("structural invariants on random texts", "[suffix_tree][property]") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        const std::string s = oracle::mixed_dna(rng, 1 + rng() % 600);
        CAPTURE(s.size());
        check_structure(build_tree(encode_sequence(s)), s);
    }
}

TEST_CASE("collect_occurrences", "[suffix_tree]") {
    const std::string s = "acggtacgtac";
    const auto text = encode_sequence(s);
    const auto tree = build_tree(text);

    std::vector<Pos> all(11);
    std::iota(all.begin(), all.end(), Pos{0});
    CHECK(collect_occurrences(tree, tree.root()) == all);

    const NodeIndex a = tree.node(tree.root()).child[1];
    CHECK(collect_occurrences(tree, a) == std::vector<Pos>{0, 5, 9});
    CHECK(tree_find(tree, text, encode_sequence("ggtac")) == std::vector<Pos>{2});

    CHECK_THROWS_AS(collect_occurrences(tree, static_cast<NodeIndex>(tree.node_count())), InvalidNode);
}

TEST_CASE("leaf order yields the suffix-array rank", "[suffix_tree][property]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto seq = encode_sequence(oracle::mixed_dna(rng, 1 + rng() % 800));
        REQUIRE(leaf_rank_array(build_tree(seq)) == rank_array(build_dc3(seq)));
    }
}

TEST_CASE("tree is larger than the suffix array", "[suffix_tree]") {
    std::mt19937_64 rng(1);
    const auto seq = encode_sequence(oracle::random_dna(rng, 200'000));
    const auto stats = tree_stats(build_tree(seq));
    CHECK(stats.leaf_count == seq.size() + 1);
    CHECK(stats.bytes > build_dc3(seq).bytes());
}
